#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lct/errors.hpp"
#include "lct/verdict.hpp"
#include "support.hpp"

using namespace lct;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

LctReport run(const std::string& f, const std::vector<std::string>& vars = kXYZ, AnalyzeOptions opt = {}) {
    return analyze(parse_polynomial(f, vars), vars, opt, f);
}

bool fired(const Condition& c) { return c.status == ConditionStatus::Fired; }

/// The decision table, restated independently of the implementation.
void check_table(const LctReport& r) {
    if (r.verdict == Verdict::Smooth) {
        CHECK_FALSE(r.mu);
        return;
    }
    REQUIRE(r.mu);
    if (r.quasihomogeneous) {
        for (const Condition* c : {&r.a, &r.b, &r.c, &r.d}) CHECK(c->status == ConditionStatus::NotApplicable);
        if (!r.weights) {
            CHECK(r.verdict == (r.vars.size() == 2 ? Verdict::LctHolds : Verdict::QhCoordinateLimit));
            return;
        }
        REQUIRE(r.holland_mond);
        CHECK(r.verdict == (r.holland_mond->holds ? Verdict::LctHolds : Verdict::LctFails));
        return;
    }
    REQUIRE(r.spectrum);
    CHECK(r.verdict != Verdict::LctHolds);
    const Rational a1 = *r.alpha1, a2 = *r.alpha2;
    CHECK(fired(r.a) == !*r.eigenvalue_one);
    CHECK(fired(r.b) == (a1 > 0));
    CHECK((r.c.status == ConditionStatus::NotApplicable) == !(a1 < 0));
    CHECK((r.d.status == ConditionStatus::NotApplicable) == !(a1 < 0 && a2 == 0));
    if (fired(r.d)) CHECK(fired(r.c));
    const bool any = fired(r.a) || fired(r.b) || fired(r.c) || fired(r.d);
    CHECK(r.verdict == (any ? Verdict::LctFails : Verdict::Unknown));
    CHECK_FALSE(r.justification.empty());
}

}  // namespace

TEST_CASE("the quintic example fails by condition (a)") {
    const LctReport r = run("x^5+x^2*y^2+y^5+z^5");
    CHECK(r.verdict == Verdict::LctFails);
    CHECK_FALSE(r.quasihomogeneous);
    CHECK(*r.mu == 44);
    CHECK_FALSE(*r.eigenvalue_one);
    CHECK(fired(r.a));
    CHECK(r.justification.front().find("condition (a)") == 0);
    check_table(r);
}

TEST_CASE("Holland-Mond decides weighted homogeneous germs") {
    const LctReport a1 = run("x^2+y^2+z^2");
    CHECK(a1.verdict == Verdict::LctHolds);
    REQUIRE(a1.holland_mond);
    CHECK(a1.holland_mond->offending.empty());

    const LctReport c = run("x^3+y^3+z^3");
    CHECK(c.verdict == Verdict::LctFails);
    REQUIRE(c.holland_mond);
    REQUIRE(c.holland_mond->offending.size() == 1);
    CHECK(c.holland_mond->offending[0].i == 1);
    CHECK(c.holland_mond->offending[0].dim == 1);

    CHECK(run("x^3+y^3", {"x", "y"}).verdict == Verdict::LctHolds);
}

TEST_CASE("special verdicts and input errors") {
    CHECK(run("x+y^2+z^2").verdict == Verdict::Smooth);
    // Weights exist only after a coordinate change.
    CHECK(run("(x+y^2)^2+y^5+z^2").verdict == Verdict::QhCoordinateLimit);
    CHECK(run("(x+y^2)^2+y^5", {"x", "y"}).verdict == Verdict::LctHolds);
    CHECK_THROWS_AS(run("x^2", {"x"}), PreconditionError);
    CHECK_THROWS_AS(run("1+x^2+y^2", {"x", "y"}), PreconditionError);
    CHECK_THROWS_AS(run("x^2*y^2+z^2"), NonIsolatedError);
}

TEST_CASE("alpha1 = 0 gives no statement") {
    const LctReport r = run("x^3+y^3+z^4+x*y*z");
    CHECK_FALSE(r.quasihomogeneous);
    CHECK(*r.alpha1 == 0);
    CHECK(r.verdict == Verdict::Unknown);
    CHECK(r.justification.front().find("alpha1 = 0") != std::string::npos);
}

TEST_CASE("truncation failures surface with a suggested order") {
    AnalyzeOptions opt;
    opt.max_order = 3;
    try {
        run("x^5+x^2*y^2+y^5+z^5", kXYZ, opt);
        FAIL("expected a truncation failure");
    } catch (const TruncationInsufficient& e) {
        CHECK(e.suggested_order() > 3);
    }
}

TEST_CASE("property: every corpus report follows the decision table") {
    for (const auto& e : test::corpus()) {
        CAPTURE(e.name);
        check_table(run(e.expr, e.vars));
    }
}

TEST_CASE("JSON reports are deterministic and carry the stable fields") {
    AnalyzeOptions opt;
    opt.logder = true;
    const std::string a = to_json(run("x^5+x^2*y^2+y^5", {"x", "y"}, opt)).dump();
    const std::string b = to_json(run("x^5+x^2*y^2+y^5", {"x", "y"}, opt)).dump();
    CHECK(a == b);
    const nlohmann::json j = nlohmann::json::parse(a);
    for (const char* key : {"input", "vars", "mu", "quasihomogeneous", "spectrum", "alpha1", "alpha2",
                            "monodromy_eigenvalue_one", "conditions", "logder", "verdict", "justification", "notes",
                            "params"})
        CHECK(j.contains(key));
    for (const char* key : {"a", "b", "c", "d"}) CHECK(j["conditions"].contains(key));
    for (const char* key : {"generators", "traces", "nilpotent_flags"}) CHECK(j["logder"].contains(key));
    CHECK(j["alpha1"] == "-1/2");
    CHECK(j["spectrum"][0]["alpha"] == "-1/2");
    CHECK(j["params"]["K"].is_number());

    const nlohmann::json w = to_json(run("x^3+y^3+z^3"));
    CHECK(w["weights"] == nlohmann::json::array({1, 1, 1}));
    CHECK(w["r"] == 3);
}

TEST_CASE("report cache round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "lct-cache-test";
    std::filesystem::remove_all(dir);
    const ReportCache cache(dir.string());
    const Polynomial f = parse_polynomial("x^3+y^3", {"x", "y"});
    const AnalyzeOptions opt;
    const std::string key = ReportCache::key_material(f, {"x", "y"}, opt);
    CHECK_FALSE(cache.get(key));
    const std::string report = to_json(analyze(f, {"x", "y"}, opt)).dump();
    cache.put(key, report);
    REQUIRE(cache.get(key));
    CHECK(*cache.get(key) == report);

    const std::string pretty = nlohmann::json::parse(report).dump(2);
    cache.put(key, pretty);
    CHECK(*cache.get(key) == pretty);
    cache.put(key, report);

    AnalyzeOptions other;
    other.logder = true;
    CHECK(ReportCache::key_material(f, {"x", "y"}, other) != key);
    CHECK(ReportCache::key_material(f, {"y", "x"}, opt) != key);
    CHECK_FALSE(cache.get(ReportCache::key_material(f, {"x", "y"}, other)));

    // Leftover temporary files from interrupted writes are never read back.
    std::size_t files = 0;
    for (const auto& p : std::filesystem::directory_iterator(dir)) {
        CHECK(p.path().extension() == ".json");
        ++files;
    }
    CHECK(files == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("spectrum self-checks") {
    for (const auto& it : spectrum_selfcheck(parse_polynomial("x^3+y^3", {"x", "y"}))) {
        CAPTURE(it.name);
        CHECK(it.passed);
    }
    bool st = false;
    for (const auto& it : spectrum_selfcheck(parse_polynomial("x^5+x^2*y^2+y^5+z^5", kXYZ))) {
        CAPTURE(it.name);
        CHECK(it.passed);
        st = st || it.name == "sebastiani-thom";
    }
    CHECK(st);
    for (const auto& it : spectrum_selfcheck(parse_polynomial("x^2+y^2+z^2", kXYZ))) {
        CAPTURE(it.name);
        CHECK(it.passed);
    }
}

TEST_CASE("logarithmic diagnostics in the report") {
    AnalyzeOptions opt;
    opt.logder = true;
    const LctReport r = run("x^4+y^5+x^2*y^3", {"x", "y"}, opt);
    REQUIRE(r.logder);
    CHECK_FALSE(r.logder->generators.empty());
    CHECK(r.logder->problems.empty());
    for (const auto& t : r.logder->traces) CHECK(sgn(t) == 0);
    for (bool n : r.logder->nilpotent) CHECK(n);
}
