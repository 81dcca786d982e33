#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "morreylab/config.hpp"
#include "morreylab/experiments.hpp"
#include "morreylab/operators.hpp"
#include "morreylab/parallel.hpp"

using namespace morreylab;

namespace {

StudyConfig quick_theorem2() {
    StudyConfig cfg;
    cfg.alpha = 0.5;
    cfg.p = 1.0;
    cfg.weight = Weight::power(-0.25);
    cfg.box = Box{{-2, 0}, {2, 0}, 1};
    cfg.resolution = 512;
    cfg.family.sigma = 0.04;
    cfg.family.lambdas = {0.5, 1.0, 2.0};
    cfg.ball_stride = 4;
    return cfg;
}

} // namespace

TEST_CASE("test families are compactly supported and validated") {
    Grid g = make_grid(Box{{-2, 0}, {2, 0}, 1}, 256);
    TestFamily fam;
    fam.sigma = 0.1;
    fam.lambdas = {1.0};
    SampledFunction f = make_test_function(g, fam, 0);
    CHECK(f.values[0] == 0.0);
    CHECK(f.values[g.nearest_cell({0.0, 0.0})] > 0.9);

    TestFamily wide;
    wide.sigma = 0.5;
    wide.lambdas = {0.125}; // reach 6*0.5/0.125 = 24 leaves the box
    CHECK_THROWS_AS((void)make_test_function(g, wide, 0), std::invalid_argument);

    TestFamily ind;
    ind.base = TestFamily::Base::IndicatorBall;
    ind.halfwidth = 0.5;
    ind.ladder = TestFamily::Ladder::Translation;
    ind.shifts = {0.5};
    SampledFunction fi = make_test_function(g, ind, 0);
    CHECK(fi.values[g.nearest_cell({0.5, 0.0})] == 1.0);
    CHECK(fi.values[g.nearest_cell({-0.5, 0.0})] == 0.0);
}

TEST_CASE("theorem2 study holds scale invariance at unit-test resolution") {
    const RatioReport rep = verify_theorem2(quick_theorem2());
    REQUIRE(rep.samples.size() == 3);
    for (const StudySample& s : rep.samples) CHECK_FALSE(s.skipped);
    CHECK(rep.spread <= 1.10);
    CHECK(std::abs(rep.slope) <= 0.05);
}

TEST_CASE("theorem2 numerators scale by gamma(alpha) under the riesz option") {
    StudyConfig cfg = quick_theorem2();
    const RatioReport via_t = verify_theorem2(cfg);
    cfg.use_riesz = true;
    const RatioReport via_i = verify_theorem2(cfg);
    const double ga = gamma_alpha(cfg.alpha, 1);
    REQUIRE(via_t.samples.size() == via_i.samples.size());
    for (std::size_t k = 0; k < via_t.samples.size(); ++k) {
        CHECK(via_t.samples[k].numerator ==
              doctest::Approx(ga * via_i.samples[k].numerator).epsilon(1e-12));
    }
}

TEST_CASE("degenerate samples are skipped and noted") {
    StudyConfig cfg = quick_theorem2();
    cfg.family.base = TestFamily::Base::IndicatorBall;
    cfg.family.halfwidth = 1e-5; // narrower than a cell: samples to zero
    cfg.family.lambdas = {1.0};
    const RatioReport rep = verify_theorem2(cfg);
    REQUIRE(rep.samples.size() == 1);
    CHECK(rep.samples[0].skipped);
    CHECK(rep.note.find("skipped") != std::string::npos);
}

TEST_CASE("inadmissible parameters are rejected") {
    StudyConfig cfg = quick_theorem2();
    cfg.p = 1.5; // theorem1 needs p = n/alpha = 2
    CHECK_THROWS_AS((void)verify_theorem1(cfg), std::invalid_argument);

    StudyConfig bad_weight = quick_theorem2();
    bad_weight.weight = Weight::power(-0.75); // fails the A(1,2) scan
    CHECK_THROWS_AS((void)verify_theorem2(bad_weight), std::invalid_argument);

    StudyConfig small_s = quick_theorem2();
    small_s.p = 2.0;
    small_s.s = 1.5; // theorem1 needs s > n/(n - alpha) = 2
    CHECK_THROWS_AS((void)verify_theorem1(small_s), std::invalid_argument);
}

TEST_CASE("theorem1 and theorem3 studies run at unit-test scale") {
    StudyConfig cfg;
    cfg.alpha = 0.5;
    cfg.p = 2.0;
    cfg.box = Box{{-2, 0}, {2, 0}, 1};
    cfg.resolution = 1024;
    cfg.family.sigma = 0.04;
    cfg.family.lambdas = {0.5, 1.0, 2.0};
    const RatioReport r1 = verify_theorem1(cfg);
    CHECK(r1.spread <= 1.10);

    StudyConfig cfg3 = cfg;
    cfg3.p = 1.0;
    cfg3.weight = Weight::power(-0.25);
    const RatioReport r3 = verify_theorem3(cfg3);
    CHECK(r3.spread <= 1.10);
    for (const StudySample& s : r3.samples) {
        CHECK(s.ratio > 0.0);
        CHECK(std::isfinite(s.ratio));
    }
}

TEST_CASE("unboundedness probe rejects bad cutoffs and shows divergence") {
    CHECK_THROWS_AS((void)unboundedness_probe(1, 0.1, {0.5, 0.25}, 1 << 12),
                    std::invalid_argument);

    std::vector<double> cutoffs;
    for (int k = 4; k <= 9; ++k) cutoffs.push_back(std::pow(2.0, -k));
    const RatioReport rep = unboundedness_probe(1, 0.1, cutoffs, 1 << 14);
    for (std::size_t k = 0; k + 1 < rep.samples.size(); ++k) {
        CHECK(rep.samples[k + 1].ratio > rep.samples[k].ratio);
    }
}

TEST_CASE("reports serialize deterministically") {
    StudyConfig cfg = quick_theorem2();
    set_thread_count(1);
    const RatioReport a = verify_theorem2(cfg);
    set_thread_count(4);
    const RatioReport b = verify_theorem2(cfg);
    set_thread_count(1);
    CHECK(config::report_to_csv(a) == config::report_to_csv(b));
    CHECK(config::report_to_json(a).dump(2) == config::report_to_json(b).dump(2));

    const std::string csv = config::report_to_csv(a);
    CHECK(csv.rfind("sample_id,lambda,numerator,denominator,ratio\n", 0) == 0);
}
