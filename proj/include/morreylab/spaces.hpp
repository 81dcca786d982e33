#pragma once

#include "morreylab/geometry.hpp"
#include "morreylab/weights.hpp"

namespace morreylab {

// Result of a sup-over-balls norm: the value and the ball attaining it.
struct SupNormResult {
    double value = 0.0;
    Ball argmax{};
};

// (Int |f|^p w dx)^(1/p) over the grid, p in [1, inf).
double lp_norm(const SampledFunction& f, double p, const Weight& w);

// sup over a log-spaced level grid of t * w({|f| > t})^(1/p).
double weak_lp_norm(const SampledFunction& f, double p, const Weight& w);

// Weighted Morrey norm: sup over the family of
// (nu(B)^(-kappa) Int_B |f|^p mu dx)^(1/p). kappa = 0 ignores nu and
// reproduces lp_norm once some ball covers the support.
SupNormResult morrey_norm_report(const SampledFunction& f, double p, double kappa,
                                 const Weight& mu, const Weight& nu, const BallFamily& family);
double morrey_norm(const SampledFunction& f, double p, double kappa, const Weight& mu,
                   const Weight& nu, const BallFamily& family);

// BMO seminorm: sup over the family of the mean oscillation
// (1/|B|) Int_B |h - h_B|, with |B| and h_B taken in the same cell
// quadrature. Lower bound of the true seminorm.
SupNormResult bmo_seminorm_report(const SampledFunction& h, const BallFamily& family);
double bmo_seminorm(const SampledFunction& h, const BallFamily& family);

// Weighted variants: (max of w over cells of B) times the mean
// oscillation / sup of |h| over B. Essential sups here are cell-center
// sups, so they live on the same lattice as h.
SupNormResult weighted_bmo_norm_report(const SampledFunction& h, const Weight& w,
                                       const BallFamily& family);
double weighted_bmo_norm(const SampledFunction& h, const Weight& w, const BallFamily& family);

SupNormResult weighted_linf_norm_report(const SampledFunction& h, const Weight& w,
                                        const BallFamily& family);
double weighted_linf_norm(const SampledFunction& h, const Weight& w, const BallFamily& family);

} // namespace morreylab
