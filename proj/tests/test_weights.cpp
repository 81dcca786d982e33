#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "morreylab/weights.hpp"

using namespace morreylab;

namespace {

Grid grid1d(double lo, double hi, int res) { return make_grid(Box{{lo, 0}, {hi, 0}, 1}, res); }

BallFamily standard_sweep(const Grid& g) {
    return ball_family(g, 1.0 / 64, 64.0, 2.0, g.resolution() / 8, true);
}

} // namespace

TEST_CASE("weight_pow closed forms") {
    const Weight p = Weight::power(-0.25).pow(2.0);
    CHECK(p.form() == Weight::Form::Power);
    CHECK(p.beta() == doctest::Approx(-0.5));

    const Weight c = Weight::constant(2.0).pow(3.0);
    CHECK(c.constant_value() == doctest::Approx(8.0));

    Grid g = grid1d(-1, 1, 16);
    const Weight s = Weight::sampled(sample(g, [](const Point& x) { return 1.0 + x[0] * x[0]; }));
    const Weight s1 = s.pow(1.0);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(s1.samples().values[i] == s.samples().values[i]);
    }
}

TEST_CASE("w_measure closed forms and divergence") {
    Grid g = grid1d(-2, 2, 256);
    CHECK(w_measure(Weight::constant(1.0), Ball{{0, 0}, 1.0, 1}, g) == doctest::Approx(2.0));
    // antiderivative: 2 r^{1/2} / (1/2) = 4 at r = 1
    CHECK(w_measure(Weight::power(-0.5), Ball{{0, 0}, 1.0, 1}, g) == doctest::Approx(4.0));
    // off-center interval not meeting the origin
    const double got = w_measure(Weight::power(-0.5), Ball{{3.0, 0}, 1.0, 1}, g);
    CHECK(got == doctest::Approx(2.0 * (2.0 - std::sqrt(2.0)))); // int_2^4 x^{-1/2}
    CHECK_THROWS_AS((void)w_measure(Weight::power(-1.0), Ball{{0, 0}, 1.0, 1}, g),
                    std::invalid_argument);

    // 2D origin ball closed form: 2 pi r^{b+2}/(b+2)
    Grid g2 = make_grid(Box{{-2, -2}, {2, 2}, 2}, 64);
    CHECK(w_measure(Weight::power(-1.0), Ball{{0, 0}, 1.0, 2}, g2) ==
          doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("ess sup and inf for power weights") {
    Grid g = grid1d(-2, 2, 64);
    const Weight w = Weight::power(-0.5);
    CHECK(ess_sup(w, Ball{{1.0, 0}, 0.5, 1}, g) == doctest::Approx(std::pow(0.5, -0.5)));
    CHECK(ess_inf(w, Ball{{1.0, 0}, 0.5, 1}, g) == doctest::Approx(std::pow(1.5, -0.5)));
    CHECK(ess_sup(w, Ball{{0.0, 0}, 0.5, 1}, g) == kInf);

    const Weight wp = Weight::power(0.5);
    CHECK(ess_inf(wp, Ball{{0.0, 0}, 0.5, 1}, g) == 0.0);
    CHECK(ess_sup(wp, Ball{{0.0, 0}, 0.5, 1}, g) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("sampled weights use cell centers") {
    Grid g = grid1d(-1, 1, 64);
    const Weight w = Weight::sampled(sample(g, [](const Point& x) { return 2.0 + x[0]; }));
    CHECK(ess_sup(w, Ball{{0.5, 0}, 0.25, 1}, g) == doctest::Approx(2.75).epsilon(0.02));
    CHECK(ess_inf(w, Ball{{0.5, 0}, 0.25, 1}, g) == doctest::Approx(2.25).epsilon(0.02));
    CHECK_THROWS_AS((void)ess_sup(w, Ball{{10.0, 0}, 0.1, 1}, g), std::invalid_argument);
}

TEST_CASE("conjugate exponents") {
    CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
    CHECK(conjugate_exponent(1.0) == kInf);
    CHECK(conjugate_exponent(kInf) == doctest::Approx(1.0));
    CHECK(conjugate_exponent(4.0) == doctest::Approx(4.0 / 3.0));
    CHECK_THROWS_AS((void)conjugate_exponent(0.5), std::invalid_argument);
}

TEST_CASE("exponent identities") {
    const ExponentRecord r = exponent_identities(1.0, 2.0, 0.5, 1, kInf);
    CHECK(r.kappa == doctest::Approx(0.5));
    CHECK(r.p_prime == kInf);
    CHECK(r.s_prime == doctest::Approx(1.0));

    const ExponentRecord r2 = exponent_identities(4.0 / 3.0, 4.0, 1.0, 2, kInf);
    CHECK(r2.kappa == doctest::Approx(1.0 / 3.0));

    // s'(p/s')' = p s'/(p - s'): p = 4, s' = 2 gives 8/2 = 4
    const ExponentRecord r3 = exponent_identities(4.0, q_from(4.0, 0.25, 2), 0.25, 2, 2.0);
    CHECK(r3.chain == doctest::Approx(4.0));

    // p < s' violates the theorem precondition
    CHECK_THROWS_AS((void)exponent_identities(1.0, 2.0, 0.5, 1, 2.0), std::invalid_argument);
    // inconsistent q
    CHECK_THROWS_AS((void)exponent_identities(1.0, 3.0, 0.5, 1, kInf), std::invalid_argument);
}

TEST_CASE("apq constant is 1 for constant weights in all regimes") {
    Grid g = grid1d(-2, 2, 256);
    BallFamily fam = standard_sweep(g);
    const Weight w = Weight::constant(3.0);
    for (auto [p, q] : {std::pair{1.0, 2.0}, {2.0, 4.0}, {2.0, kInf}}) {
        const ApqReport rep = apq_constant(w, p, q, fam, g);
        CHECK(rep.constant == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_FALSE(rep.divergence_flag);
    }
    CHECK_THROWS_AS((void)apq_constant(w, 0.5, 2.0, fam, g), std::invalid_argument);
    CHECK_THROWS_AS((void)apq_constant(w, 3.0, 2.0, fam, g), std::invalid_argument);
}

TEST_CASE("power weight membership window for A(1,2)") {
    Grid g = grid1d(-2, 2, 1024);
    BallFamily fam = standard_sweep(g);
    for (double beta : {-0.4, -0.25, -0.1, 0.0}) {
        const Weight w = beta == 0.0 ? Weight::constant(1.0) : Weight::power(beta);
        const ApqReport rep = apq_constant(w, 1.0, 2.0, fam, g);
        CHECK_MESSAGE(!rep.divergence_flag, "beta = ", beta);
    }
    for (double beta : {-0.9, -0.75, 0.5, 1.0}) {
        const ApqReport rep = apq_constant(Weight::power(beta), 1.0, 2.0, fam, g);
        CHECK_MESSAGE(rep.divergence_flag, "beta = ", beta);
    }
}

TEST_CASE("apq bracket is dilation covariant on origin balls") {
    Grid g = grid1d(-128, 128, 256);
    const Weight w = Weight::power(-0.25);
    double first = 0.0;
    for (double r : {0.25, 1.0, 4.0, 64.0}) {
        BallFamily fam;
        fam.dim = 1;
        fam.centers = {Point{0.0, 0.0}};
        fam.radii = {r};
        const ApqReport rep = apq_constant(w, 1.0, 2.0, fam, g);
        if (first == 0.0) {
            first = rep.constant;
        } else {
            CHECK(rep.constant == doctest::Approx(first).epsilon(0.01));
        }
    }
}

TEST_CASE("apq constant grows monotonically with the family") {
    Grid g = grid1d(-2, 2, 512);
    const Weight w = Weight::power(-0.3);
    BallFamily small = ball_family(g, 0.25, 1.0, 2.0, 128, true);
    BallFamily big = ball_family(g, 1.0 / 64, 2.0, 2.0, 32, true);
    const double c_small = apq_constant(w, 1.0, 2.0, small, g).constant;
    const double c_big = apq_constant(w, 1.0, 2.0, big, g).constant;
    CHECK(c_big >= c_small - 1e-12);
}

TEST_CASE("cell averages of 1D power weights are exact") {
    Grid g = grid1d(0, 1, 8); // cells [k/8, (k+1)/8]
    const Weight w = Weight::power(-0.5);
    // first cell: int_0^{1/8} x^{-1/2} = 2 (1/8)^{1/2}, average = that / (1/8)
    const double expected = 2.0 * std::sqrt(1.0 / 8.0) * 8.0;
    CHECK(cell_average(w, g, 0) == doctest::Approx(expected));
    CHECK(cell_average(Weight::constant(3.0), g, 5) == doctest::Approx(3.0));
}
