#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace pwv {

using Rational = mpq_class;

/// Rational from integers, reduced to lowest terms.
Rational rational_of(long num, long den = 1);

/// Parses "p", "-p" or "p/q"; throws ParseError on anything else.
Rational rational_from_string(const std::string& text);

/// Canonical form: "p" when the denominator is 1, "p/q" otherwise.
std::string rational_to_string(const Rational& r);

int sign(const Rational& r);

/// Element of Q(i): re + im*i with both parts exact rationals.
/// A Scalar is rational iff im == 0 exactly; no rounding ever occurs.
struct Scalar {
    Rational re;
    Rational im;

    Scalar() : re(0), im(0) {}
    Scalar(long value) : re(value), im(0) {}
    Scalar(Rational r) : re(std::move(r)), im(0) {}
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar i() { return Scalar(rational_of(0), rational_of(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_rational() const { return sgn(im) == 0; }

    Scalar conjugate() const { return Scalar(re, -im); }

    /// Multiplicative inverse; throws Error on zero.
    Scalar inverse() const;

    /// Canonical form: "p/q" for rational values, "p/q+r/s*i" otherwise
    /// (the sign of the imaginary part replaces the '+').
    std::string str() const;

    /// Inverse of str(); also accepts plain rational literals.
    static Scalar parse(const std::string& text);

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
};

Scalar operator+(const Scalar& a, const Scalar& b);
Scalar operator-(const Scalar& a, const Scalar& b);
Scalar operator*(const Scalar& a, const Scalar& b);
Scalar operator/(const Scalar& a, const Scalar& b);
Scalar operator-(const Scalar& a);

bool operator==(const Scalar& a, const Scalar& b);
bool operator!=(const Scalar& a, const Scalar& b);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace pwv
