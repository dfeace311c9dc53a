#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "zmc/catalog.hpp"
#include "zmc/constraints.hpp"
#include "zmc/frontend.hpp"

using namespace zmc;

TEST_CASE("verify passes a catalog entry and reports every check") {
    VerifyOptions opt;
    opt.a_samples = 2000;
    opt.surface_samples = 300;
    const VerifyReport r = verify_entry(instantiate("scherk-spacelike"), opt);
    CHECK(r.pass());
    CHECK(r.entry == "scherk-spacelike");
    for (const char* name : {"constraints", "zmc_residual_A", "kk_ratio", "mean_curvature", "derivative_crosscheck",
                             "causal_class", "closed_form", "homothety", "mesh_audit"}) {
        bool found = false;
        for (const CheckResult& c : r.checks) found |= c.name == name;
        CHECK_MESSAGE(found, name);
    }
    std::ostringstream out;
    write_report(r, out);
    CHECK(out.str().rfind("PASS scherk-spacelike", 0) == 0);
}

TEST_CASE("verify fails when a tolerance is impossible") {
    VerifyOptions opt;
    opt.a_samples = 500;
    opt.surface_samples = 100;
    opt.mesh = false;
    opt.tol.mean_curvature = 0.0;
    opt.tol.zmc_a = 0.0;
    const VerifyReport r = verify_entry(instantiate("4.1.4"), opt);
    CHECK_FALSE(r.pass());
}

TEST_CASE("tolerance overrides") {
    const Tolerances base;
    const Tolerances scaled = apply_tolerance_overrides(base, "10");
    CHECK(scaled.zmc_a == doctest::Approx(10 * base.zmc_a));
    CHECK(scaled.locus == doctest::Approx(10 * base.locus));
    const Tolerances one = apply_tolerance_overrides(base, "zmc_a=1e-6, locus=2e-7");
    CHECK(one.zmc_a == 1e-6);
    CHECK(one.locus == 2e-7);
    CHECK(one.mean_curvature == base.mean_curvature);
    CHECK_THROWS_AS(apply_tolerance_overrides(base, "nope=1"), ParamOutOfRange);
    CHECK_THROWS_AS(apply_tolerance_overrides(base, "zmc_a=abc"), ParamOutOfRange);
    CHECK_THROWS_AS(apply_tolerance_overrides(base, "-1"), ParamOutOfRange);
    CHECK_THROWS_AS(apply_tolerance_overrides(base, "locus=-1"), ParamOutOfRange);
}

TEST_CASE("class tallies") {
    const CatalogEntry e = instantiate("4.1.4");
    const auto pts = sample_on_surface(e.surface, 300, 17);
    const ClassTally mixed = tally_classes(e.surface, pts, ExpectedClass::Mixed);
    CHECK(mixed.matches);
    CHECK(mixed.spacelike > 0);
    CHECK(mixed.timelike > 0);
    CHECK(mixed.spacelike + mixed.timelike + mixed.lightlike == 300);
    const ClassTally wrong = tally_classes(e.surface, pts, ExpectedClass::Spacelike);
    CHECK_FALSE(wrong.matches);
    CHECK(wrong.misclassified == mixed.timelike);
}

TEST_CASE("classification grid") {
    const auto mixed = classify_grid(instantiate("4.1.4").surface, 24);
    int space = 0, time = 0;
    for (const ClassifiedPoint& p : mixed) {
        space += p.kind == CausalKind::Spacelike;
        time += p.kind == CausalKind::Timelike;
        CHECK(p.a_residual <= 1e-9);
    }
    CHECK(space > 0);
    CHECK(time > 0);

    const auto timelike = classify_grid(instantiate("4.1.1-m1").surface, 24);
    CHECK_FALSE(timelike.empty());
    for (const ClassifiedPoint& p : timelike) CHECK(p.kind != CausalKind::Spacelike);

    std::ostringstream out;
    write_classify_csv(timelike, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y,z,class,margin,A_residual");
    std::size_t rows = 0;
    while (std::getline(in, line)) rows += !line.empty();
    CHECK(rows == timelike.size());
}

TEST_CASE("seed parsing") {
    const ConstantsTriple a = parse_seed("1 2 3 4 5 6 7 8 9", "zero");
    CHECK(a.kcase == CaseK::zero());
    CHECK(a.flat() == std::array<double, 9>{1, 2, 3, 4, 5, 6, 7, 8, 9});

    const ConstantsTriple b = parse_seed("# seed\nk = 2\na = 1 -1 0\nb = 0 0.5 0\nc = 0 0 -1\n", "pos");
    CHECK(b.kcase == CaseK::positive(2));
    CHECK(b.a == Vec3{1, -1, 0});
    CHECK(b.b == Vec3{0, 0.5, 0});
    CHECK(b.c == Vec3{0, 0, -1});

    // the data file records round trip through the seed reader
    const ConstantsTriple k = instantiate("k-neg-example-1").surface.constants();
    const ConstantsTriple back = parse_seed(serialize_record("x", k, {1, 1, 1}, {}, std::nullopt, {}), "negative");
    for (int i = 0; i < 9; ++i) CHECK(back.flat()[i] == doctest::Approx(k.flat()[i]).epsilon(1e-15));
    CHECK(back.kcase.k() == doctest::Approx(k.kcase.k()));

    CHECK_THROWS_AS(parse_seed("1 2 3", "zero"), ParamOutOfRange);
    CHECK_THROWS_AS(parse_seed("a = 1 2 3\nb = 1 2 3\n", "zero"), ParamOutOfRange);
}

TEST_CASE("rotational triples") {
    CHECK(is_rotational(ConstantsTriple{CaseK::zero(), {1, 1, 1}, {0, 0, 0}, {1, 0, 1}}));
    CHECK_FALSE(is_rotational(instantiate("3.1-exp-same-sign").surface.constants()));
    CHECK_FALSE(is_rotational(ConstantsTriple{CaseK::positive(1), {}, {}, {0, 0, 0}}));
}
