#include "pwv/document.hpp"

#include "pwv/errors.hpp"
#include "pwv/pipeline.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace pwv;
using pwvtest::sc;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), "cannot open " << path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("the bundled k3.json parses, validates and matches the builder") {
    const std::string bytes = read_file(std::string(PWV_DATA_DIR) + "/k3.json");
    const ManifoldDocument doc = ManifoldDocument::from_json_text(bytes);
    CHECK(doc.name == "elliptic-k3");
    CHECK(doc.betti == std::vector<long>{1, 0, 22, 0, 1});
    CHECK(validate_document(doc).empty());
    // the shipped file is the canonical serialization of the builder
    CHECK(bytes == k3_document().to_json_text());
}

TEST_CASE("canonical serialization round-trips") {
    const ManifoldDocument doc = k3_document();
    const std::string text = doc.to_json_text();
    const ManifoldDocument reparsed = ManifoldDocument::from_json_text(text);
    CHECK(reparsed.to_json_text() == text);
    CHECK(reparsed.eta == doc.eta);
    CHECK(reparsed.bbf_gram == doc.bbf_gram);
}

TEST_CASE("parse failures and schema violations") {
    SUBCASE("truncated JSON is a parse error") {
        const std::string text = k3_document().to_json_text().substr(0, 100);
        CHECK_THROWS_AS(ManifoldDocument::from_json_text(text), ParseError);
    }
    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_AS(ManifoldDocument::from_json_text(R"({"schema_version":1,"nme":"x"})"),
                        SchemaError);
    }
    SUBCASE("asymmetric cup entry is caught by validation") {
        ManifoldDocument doc = k3_document();
        doc.cup.push_back({2, 2, 1, 4, 0, sc(7)});
        const auto violations = validate_document(doc);
        REQUIRE_FALSE(violations.empty());
        bool found = false;
        for (const auto& v : violations)
            if (v.find("graded commutativity") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("n = 1 documents must pair degree 2 by the BBF Gram matrix") {
        ManifoldDocument doc = k3_document();
        // double one symmetric pair of intersection numbers
        for (auto& e : doc.cup)
            if (e.d == 2 && e.dprime == 2 && ((e.i == 0 && e.j == 1) || (e.i == 1 && e.j == 0)))
                e.c = pwvtest::sc(2);
        bool found = false;
        for (const auto& v : validate_document(doc))
            if (v.find("intersection pairing") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("non-isotropic beta is a tagged precondition violation") {
        ManifoldDocument doc = k3_document();
        doc.beta = pwvtest::vec({1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                                 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
        bool found = false;
        for (const auto& v : validate_document(doc))
            if (v.find("precondition: q(beta) != 0") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("bad rational literal in a vector") {
        std::string text = k3_document().to_json_text();
        const std::string needle = "\"beta\": [\n    \"1\",";
        const auto pos = text.find(needle);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, needle.size(), "\"beta\": [\n    \"x\",");
        CHECK_THROWS_AS(ManifoldDocument::from_json_text(text), SchemaError);
    }
}

TEST_CASE("report emission") {
    AnalyzeOptions options;
    options.with_llv = false;
    const ManifoldDocument doc = pwvtest::mini_document();
    const Report report = run_analyze(doc, options);

    SUBCASE("emission is deterministic") {
        CHECK(emit_report_json(report) == emit_report_json(report));
        CHECK(emit_report_text(report) == emit_report_text(report));
        const Report again = run_analyze(doc, options);
        CHECK(emit_report_json(again) == emit_report_json(report));
    }
    SUBCASE("verdicts all true on the mini surface") {
        CHECK(report.all_verdicts_true());
        CHECK(report.pw.ok);
        CHECK(report.multiplicativity.ok);
        CHECK(report.nilpotent.ok);
        CHECK(report.so5.ok);
        CHECK(report.type_iii.ok);
        REQUIRE(report.hodge.has_value());
        CHECK(report.hodge->ok);
    }
    SUBCASE("rational scalars serialize canonically") {
        CHECK(sc(1, 2).str() == "1/2");
        CHECK(sc(4, 2).str() == "2");
        CHECK((Scalar(rational_of(1, 2), rational_of(1, 3))).str() == "1/2+1/3*i");
    }
    SUBCASE("mini surface graded tables") {
        CHECK(report.gr_perverse.at(2) == std::vector<long>{1, 2, 1});
        CHECK(report.block_dims.at({1, 1}) == 2);
    }
    SUBCASE("timings are excluded unless requested") {
        AnalyzeOptions timed = options;
        timed.timing = true;
        const Report quiet = run_analyze(doc, options);
        const Report loud = run_analyze(doc, timed);
        CHECK(quiet.timing_ms.empty());
        CHECK_FALSE(loud.timing_ms.empty());
        CHECK(emit_report_json(quiet).find("timing_ms") == std::string::npos);
        CHECK(emit_report_json(loud).find("timing_ms") != std::string::npos);
    }
}

TEST_CASE("analyze on K3 without the LLV closure") {
    AnalyzeOptions options;
    options.with_llv = false;
    const Report report = run_analyze(k3_document(), options);
    CHECK(report.all_verdicts_true());
    CHECK(report.gr_perverse.at(2) == std::vector<long>{1, 20, 1});
    CHECK(report.gr_weight.at(2) == std::map<long, long>{{0, 1}, {2, 20}, {4, 1}});
    CHECK(report.g_rho_dim == 10);
    CHECK(report.g_rho_ad == std::array<long, 3>{3, 4, 3});
    CHECK_FALSE(report.g_dim.has_value());
    CHECK(report.eta_normalized);

    SUBCASE("text report carries the Gr table row") {
        const std::string text = emit_report_text(report);
        CHECK(text.find("H^2 : 1 20 1") != std::string::npos);
    }
    SUBCASE("swap-eta-beta keeps all verdicts true and transposes blocks") {
        AnalyzeOptions swapped = options;
        swapped.swap_eta_beta = true;
        const Report r2 = run_analyze(k3_document(), swapped);
        CHECK(r2.all_verdicts_true());
        for (const auto& [key, dim] : report.block_dims)
            CHECK(r2.block_dims.at({key.second, key.first}) == dim);
    }
    SUBCASE("seed rho overrides the search") {
        AnalyzeOptions seeded = options;
        Vec rho(22);
        rho[2] = sc(1);
        rho[3] = sc(1); // e3 + e4 in the second hyperbolic plane: q = 2 > 0
        seeded.seed_rho = rho;
        const Report r2 = run_analyze(k3_document(), seeded);
        CHECK(r2.rho_source == "flag");
        CHECK(r2.rho == rho);
        CHECK(r2.all_verdicts_true());
    }
    SUBCASE("invalid seed rho fails the precondition") {
        AnalyzeOptions seeded = options;
        Vec rho(22);
        rho[0] = sc(1); // isotropic and not orthogonal to eta
        seeded.seed_rho = rho;
        CHECK_THROWS_AS(run_analyze(k3_document(), seeded), PreconditionError);
    }
}
