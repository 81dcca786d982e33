#pragma once

#include <string>
#include <vector>

#include "morreylab/geometry.hpp"
#include "morreylab/kernels.hpp"
#include "morreylab/operators.hpp"
#include "morreylab/spaces.hpp"
#include "morreylab/weights.hpp"

namespace morreylab {

// One-parameter families of compactly supported test functions: a base
// profile moved through a dilation or translation ladder.
struct TestFamily {
    enum class Base { Gaussian, IndicatorBall, Tent };
    enum class Ladder { Single, Dilation, Translation };

    Base base = Base::Gaussian;
    Ladder ladder = Ladder::Dilation;
    double sigma = 0.04;      // gaussian width
    double halfwidth = 1.0;   // indicator / tent half-width
    double truncation = 6.0;  // gaussian support cutoff, in sigmas
    std::vector<double> lambdas = {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<double> shifts = {0.0};

    std::size_t size() const;
    // Ladder parameter of sample k (lambda, shift, or 1).
    double parameter(std::size_t k) const;
};

// Samples member k of the family on the grid (dilations and shifts are
// taken about the box center). Throws if the support leaves the box.
SampledFunction make_test_function(const Grid& grid, const TestFamily& family, std::size_t k);

struct StudySample {
    int id = 0;
    double lambda = 1.0;
    double numerator = 0.0;
    double denominator = 0.0;
    double ratio = 0.0;
    double extra = 0.0; // study-specific column (norm^p for the divergence probe)
    bool skipped = false;
};

struct RatioReport {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<StudySample> samples;
    double spread = 0.0;
    double slope = 0.0;
    double spread_tol = 1.05;
    double slope_tol = 0.02;
    bool pass = false;
    std::string note;
};

struct StudyConfig {
    int n = 1;
    double alpha = 0.5;
    double p = 1.0;
    double s = kInf;
    HomogeneousKernel kernel = HomogeneousKernel::constant(1, 1.0);
    Weight weight = Weight::constant(1.0);
    Box box{{-2.0, 0.0}, {2.0, 0.0}, 1};
    int resolution = 2048;
    TestFamily family;
    double ball_rmin = 1.0 / 1024, ball_rmax = 2.0, ball_growth = 1.1892071150027210667;
    int ball_stride = 4;
    std::vector<double> maximal_radii; // dyadic default when empty
    double spread_tol = 1.05;
    double slope_tol = 0.02;
    double skip_threshold = 1e-10;
    bool use_riesz = false; // numerators through I_alpha instead of T_{Omega,alpha}
};

// Ratio study for the Morrey-to-BMO bound at the critical index
// kappa = p/q: per sample, |T_{Omega,alpha} f|_* over the Morrey norm of f.
RatioReport verify_theorem2(const StudyConfig& cfg);

// Ratio study for the maximal bound into L^inf(w) at p = n/alpha:
// weighted sup of M_{Omega,alpha} f over the weighted L^p norm of f.
RatioReport verify_theorem1(const StudyConfig& cfg);

// Ratio study for the Morrey-to-L^inf maximal bound: plain sup of
// M_{Omega,alpha} f over the Morrey norm of f.
RatioReport verify_theorem3(const StudyConfig& cfg);

// Divergence probe at the critical index: for the log-corrected witness
// f_eps, I_alpha f_eps(0) outgrows ||f_eps||_{L^{n/alpha}} as eps -> 0.
RatioReport unboundedness_probe(int n, double alpha, const std::vector<double>& cutoffs,
                                int resolution = 1 << 17);

// Semigroup discrepancy study wrapping semigroup_check.
RatioReport semigroup_study(double beta, double gamma, const Box& box, int resolution,
                            double sigma, int pad_factor = 8, double tolerance = 0.05);

} // namespace morreylab
