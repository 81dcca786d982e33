#pragma once

#include <vector>

#include "morreylab/geometry.hpp"
#include "morreylab/kernels.hpp"

namespace morreylab {

// Normalization constant of the Riesz potential:
// gamma(alpha) = 2^alpha pi^(n/2) Gamma(alpha/2) / Gamma((n-alpha)/2).
double gamma_alpha(double alpha, int n);

// T_{Omega,alpha} f: per-cell sum of Omega(x-y)|x-y|^(alpha-n) f(y) vol,
// with the y = x cell replaced by the exact radial integral over the
// equal-volume ball. O(N^2) with a precomputed offset-kernel table.
SampledFunction homogeneous_fractional_integral(const SampledFunction& f,
                                                const HomogeneousKernel& kernel, double alpha);

// Same operator restricted to output cells [out_lo, out_hi) (linear
// indices, 1D grids only). Used when only a window of the output matters.
std::vector<double> homogeneous_integral_window(const SampledFunction& f,
                                                const HomogeneousKernel& kernel, double alpha,
                                                std::size_t out_lo, std::size_t out_hi);

// Pointwise evaluation at an arbitrary point (applies the singular-cell
// correction only when x coincides with a cell center).
double homogeneous_integral_at(const SampledFunction& f, const HomogeneousKernel& kernel,
                               double alpha, const Point& x);

// I_alpha f = T_{1,alpha} f / gamma(alpha).
SampledFunction riesz_potential(const SampledFunction& f, double alpha);
double riesz_potential_at(const SampledFunction& f, double alpha, const Point& x);

// Spectral oracle for I_alpha: multiplier (2pi |xi|)^(-alpha) on a
// zero-padded periodic extension, zero mode pinned by matching the direct
// quadrature at the box-center cell. Requires the support of f to span at
// most a quarter of the box per axis.
SampledFunction riesz_fourier_oracle(const SampledFunction& f, double alpha, int pad_factor = 8);

// M_{Omega,alpha} f at a point: max over the radius ladder of
// |B(x,r)|^(alpha/n-1) Int_B |Omega(x-y)||f(y)| dy.
double homogeneous_fractional_maximal(const SampledFunction& f, const HomogeneousKernel& kernel,
                                      double alpha, const Point& x,
                                      const std::vector<double>& radii);
double fractional_maximal(const SampledFunction& f, double alpha, const Point& x,
                          const std::vector<double>& radii);

// Grid-wide maximal function (prefix-sum fast path in 1D).
SampledFunction maximal_function(const SampledFunction& f, const HomogeneousKernel& kernel,
                                 double alpha, const std::vector<double>& radii);

struct SemigroupReport {
    double discrepancy = 0.0; // sup |I_b(I_g f) - I_{b+g} f| over the middle half
    double reference = 0.0;   // sup |I_{b+g} f| over the middle half
    double ratio = 0.0;
};

// Compares I_beta(I_gamma f) with I_{beta+gamma} f on the middle half of
// the box; the inner potential is evaluated on a pad_factor-times wider
// grid (same spacing) before the outer operator is applied.
SemigroupReport semigroup_check(double beta, double gamma, const SampledFunction& f,
                                int pad_factor = 8);

} // namespace morreylab
