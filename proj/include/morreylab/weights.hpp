#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morreylab/geometry.hpp"
#include "morreylab/kernels.hpp"

namespace morreylab {

// Positive a.e. weight: a constant, a power |x|^beta, or grid samples.
// Constant and power forms are closed-form objects; their ball measures
// and essential bounds are evaluated exactly (or by dedicated quadrature
// off-center in 2D) over the full ball, independent of any grid. Sampled
// weights live on their grid and use cell-center semantics.
class Weight {
public:
    enum class Form { Constant, Power, Sampled };

    static Weight constant(double c);
    static Weight power(double beta);
    static Weight sampled(SampledFunction samples);

    Form form() const { return form_; }
    double constant_value() const { return c_; }
    double beta() const { return beta_; }
    const SampledFunction& samples() const { return samples_; }

    // Pointwise value. Power weights at x = 0 return +inf (beta < 0) or 0
    // (beta > 0); quadrature conventions keep cell centers off the origin.
    double operator()(const Point& p, int dim) const;

    Weight pow(double t) const;

private:
    Form form_ = Form::Constant;
    double c_ = 1.0;
    double beta_ = 0.0;
    SampledFunction samples_;
};

Weight weight_pow(const Weight& w, double t);

// w-measure of a ball. Closed form for constant weights and 1D power
// weights (antiderivative, exact divergence detection); polar quadrature
// for off-center 2D power weights; grid quadrature for sampled weights.
// Returns +inf when the integral diverges (power weight with
// beta <= -n on a ball meeting the origin).
double w_measure(const Weight& w, const Ball& ball, const Grid& grid);

// Essential sup / inf over a ball (+inf / 0 at the origin for negative /
// positive powers). Sampled weights use max/min over cell centers.
double ess_sup(const Weight& w, const Ball& ball, const Grid& grid);
double ess_inf(const Weight& w, const Ball& ball, const Grid& grid);

// Average of the weight over one grid cell, used by the norm quadratures.
// Exact for constants and for 1D power weights (antiderivative); 2D power
// weights fall back to the center value.
double cell_average(const Weight& w, const Grid& grid, std::size_t index);

double conjugate_exponent(double p);
// Sobolev-type partner: 1/q = 1/p - alpha/n (inf at the critical index).
double q_from(double p, double alpha, int n);

struct ExponentRecord {
    double p = 0, q = 0;
    double p_prime = 0, q_prime = 0;
    double kappa = 0;   // p/q
    double s_prime = 0;
    double chain = 0;   // s' * (p/s')'
};

// Derives the exponent bookkeeping for (p, q, alpha, n, s) and checks the
// two arithmetic identities 1/p' + 1/q = 1 - alpha/n and
// s'(p/s')' = p s'/(p - s') to 1e-12.
ExponentRecord exponent_identities(double p, double q, double alpha, int n, double s);

inline constexpr double kBracketGuard = 1e15;

struct ApqBracket {
    Ball ball;
    double value = 0.0;
};

struct ApqReport {
    double p = 0, q = 0;
    std::vector<ApqBracket> brackets;
    double constant = 0.0;          // sup over the family, clamped at the guard
    double extended_constant = 0.0; // same sweep on the widened radius ladder
    bool divergence_flag = false;   // guard hit, or >10x growth under extension
};

// Muckenhoupt-Wheeden A(p,q) constant over a finite ball family, in the
// three regimes: generic 1 < p < q < inf, A(1,q), and A(p,inf).
ApqReport apq_constant(const Weight& w, double p, double q, const BallFamily& family,
                       const Grid& grid);

} // namespace morreylab
