#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "morreylab/gammafn.hpp"
#include "morreylab/operators.hpp"
#include "morreylab/parallel.hpp"

using namespace morreylab;

namespace {

Grid grid1d(double lo, double hi, int res) { return make_grid(Box{{lo, 0}, {hi, 0}, 1}, res); }

SampledFunction indicator_unit(const Grid& g) {
    return sample(g, [](const Point& p) { return std::abs(p[0]) < 1.0 ? 1.0 : 0.0; });
}

SampledFunction gaussian(const Grid& g, double sigma, double cut) {
    return sample(g, [=](const Point& p) {
        const double r = norm(p, g.dim());
        return r > cut ? 0.0 : std::exp(-r * r / (2 * sigma * sigma));
    });
}

// antiderivative of int_{-1}^{1} |x-y|^{a-1} dy for the unit indicator
double riesz_indicator_oracle(double x, double alpha, int n) {
    const double a = alpha;
    double v;
    if (std::abs(x) < 1.0) {
        v = (std::pow(1.0 + x, a) + std::pow(1.0 - x, a)) / a;
    } else {
        const double ax = std::abs(x);
        v = (std::pow(ax + 1.0, a) - std::pow(ax - 1.0, a)) / a;
    }
    return v / gamma_alpha(alpha, n);
}

} // namespace

TEST_CASE("lanczos gamma matches the standard library") {
    for (double z = 0.05; z <= 10.0; z += 0.0317) {
        CHECK(lanczos_gamma(z) == doctest::Approx(std::tgamma(z)).epsilon(1e-12));
    }
}

TEST_CASE("gamma_alpha closed forms") {
    CHECK(gamma_alpha(0.5, 1) == doctest::Approx(std::sqrt(2 * std::numbers::pi)).epsilon(1e-10));
    CHECK(gamma_alpha(1.0, 2) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-10));
    CHECK_THROWS_AS((void)gamma_alpha(2.0, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)gamma_alpha(0.0, 1), std::invalid_argument);
}

TEST_CASE("riesz potential matches the antiderivative oracle") {
    Grid g = grid1d(-4, 4, 4096);
    SampledFunction f = indicator_unit(g);
    SampledFunction u = riesz_potential(f, 0.5);
    for (double target : {0.0, 0.5, 3.0}) {
        const std::size_t i = g.nearest_cell({target, 0.0});
        const double x = g.cell_center(i)[0];
        const double expect = riesz_indicator_oracle(x, 0.5, 1);
        CHECK(std::abs(u.values[i] - expect) / expect < 1e-3);
    }

    SampledFunction z = sample(g, [](const Point&) { return 0.0; });
    SampledFunction uz = riesz_potential(z, 0.5);
    for (double v : uz.values) CHECK(v == 0.0);
}

TEST_CASE("riesz potential is positive and dilation covariant") {
    Grid g = grid1d(-4, 4, 2048);
    SampledFunction f = gaussian(g, 0.25, 1.5);
    SampledFunction u = riesz_potential(f, 0.5);
    for (double v : u.values) CHECK(v >= 0.0);

    // I_a(f(2.))(x) = 2^{-a} (I_a f)(2x)
    SampledFunction f2 = sample(g, [&](const Point& p) {
        const double r = 2 * std::abs(p[0]);
        return r > 1.5 ? 0.0 : std::exp(-r * r / (2 * 0.25 * 0.25));
    });
    SampledFunction u2 = riesz_potential(f2, 0.5);
    for (double x : {0.25, 0.5}) {
        const double lhs = u2.values[g.nearest_cell({x, 0.0})];
        const double rhs = std::pow(2.0, -0.5) * riesz_potential_at(f, 0.5, {2 * x, 0.0});
        CHECK(lhs == doctest::Approx(rhs).epsilon(0.02));
    }
}

TEST_CASE("homogeneous integral reduces to gamma(alpha) riesz") {
    Grid g = grid1d(-2, 2, 512);
    SampledFunction f = gaussian(g, 0.2, 1.0);
    SampledFunction t = homogeneous_fractional_integral(f, HomogeneousKernel::constant(1, 1.0), 0.5);
    SampledFunction u = riesz_potential(f, 0.5);
    const double ga = gamma_alpha(0.5, 1);
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        CHECK(t.values[i] == doctest::Approx(ga * u.values[i]).epsilon(1e-8));
    }
}

TEST_CASE("odd kernel annihilates radial functions at the origin") {
    Grid g = make_grid(Box{{-1, -1}, {1, 1}, 2}, 64);
    SampledFunction f = sample(g, [](const Point& p) {
        const double r2 = p[0] * p[0] + p[1] * p[1];
        return r2 > 0.49 ? 0.0 : std::exp(-8 * r2);
    });
    const double at0 =
        homogeneous_integral_at(f, HomogeneousKernel::cos_harmonic(1), 1.0, {0.0, 0.0});
    CHECK(std::abs(at0) < 1e-6);

    CHECK_THROWS_AS(
        (void)homogeneous_fractional_integral(f, HomogeneousKernel::constant(1, 1.0), 0.5),
        std::invalid_argument);
}

TEST_CASE("fourier oracle agrees with the direct path") {
    Grid g = grid1d(-4, 4, 2048);
    SampledFunction f = gaussian(g, 0.25, 1.0);
    SampledFunction direct = riesz_potential(f, 0.5);
    SampledFunction spectral = riesz_fourier_oracle(f, 0.5);
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
        const double x = g.cell_center(i)[0];
        if (std::abs(x) > 2.0) continue;
        CHECK(std::abs(spectral.values[i] - direct.values[i]) / direct.values[i] < 0.02);
    }
}

TEST_CASE("fourier oracle is linear and rejects wide supports") {
    Grid g = grid1d(-4, 4, 1024);
    SampledFunction f = gaussian(g, 0.25, 1.0);
    SampledFunction h = sample(g, [](const Point& p) {
        return std::abs(p[0] - 0.3) < 0.5 ? 0.7 : 0.0;
    });
    SampledFunction sum = f;
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += h.values[i];

    SampledFunction of = riesz_fourier_oracle(f, 0.5);
    SampledFunction oh = riesz_fourier_oracle(h, 0.5);
    SampledFunction osum = riesz_fourier_oracle(sum, 0.5);
    double scale = 0.0;
    for (double v : osum.values) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
        CHECK(std::abs(osum.values[i] - of.values[i] - oh.values[i]) < 1e-10 * scale);
    }

    SampledFunction wide = indicator_unit(g); // support 2 > box/4
    wide.values.front() = 1.0;
    wide.values.back() = 1.0;
    CHECK_THROWS_AS((void)riesz_fourier_oracle(wide, 0.5), std::invalid_argument);
}

TEST_CASE("fractional maximal of the unit indicator") {
    Grid g = grid1d(-4, 4, 4096);
    SampledFunction f = indicator_unit(g);
    std::vector<double> ladder;
    for (double r = 1.0 / 512; r <= 4.0; r *= 2.0) ladder.push_back(r);

    // brute force over a dense radius grid: sup_r (2r)^{-1/2} min(2r, 2)
    double oracle = 0.0;
    for (double r = 1e-3; r <= 4.0; r *= 1.001) {
        oracle = std::max(oracle, std::pow(2 * r, -0.5) * std::min(2 * r, 2.0));
    }
    CHECK(oracle == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
    CHECK(fractional_maximal(f, 0.5, {0.0, 0.0}, ladder) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(0.01));

    SampledFunction z = sample(g, [](const Point&) { return 0.0; });
    CHECK(fractional_maximal(z, 0.5, {0.0, 0.0}, ladder) == 0.0);

    SampledFunction f2 = f;
    for (double& v : f2.values) v *= 2.0;
    CHECK(fractional_maximal(f2, 0.5, {0.3, 0.0}, ladder) ==
          2.0 * fractional_maximal(f, 0.5, {0.3, 0.0}, ladder));

    CHECK_THROWS_AS((void)fractional_maximal(f, 0.5, {0.0, 0.0}, {}), std::invalid_argument);
}

TEST_CASE("homogeneous maximal variants") {
    Grid g = grid1d(-4, 4, 4096);
    SampledFunction f = indicator_unit(g);
    std::vector<double> ladder;
    for (double r = 1.0 / 512; r <= 4.0; r *= 2.0) ladder.push_back(r);

    const auto one = HomogeneousKernel::constant(1, 1.0);
    const auto sign = HomogeneousKernel::two_values(1.0, -1.0);
    const auto lop = HomogeneousKernel::two_values(2.0, 0.0);

    for (double x : {0.0, 0.4, 1.5}) {
        const double plain = fractional_maximal(f, 0.5, {x, 0.0}, ladder);
        CHECK(homogeneous_fractional_maximal(f, one, 0.5, {x, 0.0}, ladder) == plain);
        CHECK(homogeneous_fractional_maximal(f, sign, 0.5, {x, 0.0}, ladder) == plain);
    }

    // one-sided kernel: sup_r (2r)^{-1/2} * 2 min(r, 1) = sqrt(2) at r = 1
    CHECK(homogeneous_fractional_maximal(f, lop, 0.5, {0.0, 0.0}, ladder) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("maximal domination by the sup of the kernel") {
    Grid g = grid1d(-2, 2, 1024);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SampledFunction f = sample(g, [&](const Point& p) {
        return std::abs(p[0]) < 1.5 ? u(rng) : 0.0;
    });
    const auto k = HomogeneousKernel::two_values(0.8, -1.7);
    const double bound = sphere_norm(k, kInf);
    std::vector<double> ladder{0.1, 0.2, 0.4, 0.8};
    SampledFunction mk = maximal_function(f, k, 0.5, ladder);
    SampledFunction m1 = maximal_function(f, HomogeneousKernel::constant(1, 1.0), 0.5, ladder);
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
        CHECK(mk.values[i] <= bound * m1.values[i] + 1e-12);
    }
}

TEST_CASE("semigroup composition") {
    Grid g = grid1d(-8, 8, 2048);
    SampledFunction f = gaussian(g, 0.02, 0.12);
    const SemigroupReport r = semigroup_check(0.3, 0.4, f, 8);
    CHECK(r.ratio <= 0.05);

    const SemigroupReport swapped = semigroup_check(0.4, 0.3, f, 8);
    CHECK(std::abs(swapped.ratio - r.ratio) <= 1e-10);

    SampledFunction z = sample(g, [](const Point&) { return 0.0; });
    const SemigroupReport zr = semigroup_check(0.3, 0.4, z, 4);
    CHECK(zr.discrepancy == 0.0);

    CHECK_THROWS_AS((void)semigroup_check(0.6, 0.5, f, 4), std::invalid_argument);
}

TEST_CASE("operators are deterministic across thread counts") {
    Grid g = grid1d(-2, 2, 4096);
    SampledFunction f = gaussian(g, 0.1, 0.6);
    set_thread_count(1);
    SampledFunction u1 = riesz_potential(f, 0.5);
    set_thread_count(4);
    SampledFunction u4 = riesz_potential(f, 0.5);
    set_thread_count(1);
    for (std::size_t i = 0; i < u1.values.size(); ++i) CHECK(u1.values[i] == u4.values[i]);
}
