#include "pwv/scalar.hpp"

#include "pwv/errors.hpp"

#include <ostream>

namespace pwv {

Rational rational_of(long num, long den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    for (char c : text) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw ParseError("bad rational literal: '" + text + "'");
    }
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw ParseError("bad rational literal: '" + text + "'");
    if (sgn(r.get_den()) == 0)
        throw ParseError("zero denominator in rational literal: '" + text + "'");
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

int sign(const Rational& r) {
    return sgn(r);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division by zero scalar");
    if (is_rational()) return Scalar(1 / re);
    Rational norm = re * re + im * im;
    return Scalar(re / norm, -im / norm);
}

std::string Scalar::str() const {
    if (is_rational()) return rational_to_string(re);
    std::string out = rational_to_string(re);
    if (sgn(im) >= 0)
        out += "+" + rational_to_string(im) + "*i";
    else
        out += "-" + rational_to_string(Rational(-im)) + "*i";
    return out;
}

Scalar Scalar::parse(const std::string& text) {
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "*i") == 0) {
        std::string body = text.substr(0, text.size() - 2);
        // Split at the last sign that separates the real and imaginary parts.
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if (body[k] == '+' || body[k] == '-') {
                if (body[k - 1] == '/') continue;
                split = k;
                break;
            }
        }
        if (split == std::string::npos)
            throw ParseError("bad scalar literal: '" + text + "'");
        Rational re = rational_from_string(body.substr(0, split));
        std::string im_text = body.substr(split);
        if (im_text[0] == '+') im_text.erase(0, 1);
        Rational im = rational_from_string(im_text);
        return Scalar(std::move(re), std::move(im));
    }
    return Scalar(rational_from_string(text));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    *this = *this * o.inverse();
    return *this;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    return Scalar(a.re + b.re, a.im + b.im);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    return Scalar(a.re - b.re, a.im - b.im);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    // Rational-only fast path; the main pipeline rarely leaves it.
    if (sgn(a.im) == 0 && sgn(b.im) == 0) return Scalar(a.re * b.re);
    return Scalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    return a * b.inverse();
}

Scalar operator-(const Scalar& a) {
    return Scalar(-a.re, -a.im);
}

bool operator==(const Scalar& a, const Scalar& b) {
    return a.re == b.re && a.im == b.im;
}

bool operator!=(const Scalar& a, const Scalar& b) {
    return !(a == b);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str();
}

} // namespace pwv
