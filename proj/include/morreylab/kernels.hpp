#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "morreylab/geometry.hpp"

namespace morreylab {

// Exponents are doubles; infinity() encodes s = inf or p = inf.
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline bool is_inf(double x) { return x == kInf; }

// Degree-zero homogeneous kernel given by its restriction to the unit
// sphere: two values in 1D, an angle profile in 2D.
class HomogeneousKernel {
public:
    enum class Form { Constant, TwoValues, CosHarmonic, SinHarmonic, Tabulated };

    static HomogeneousKernel constant(int dim, double c);
    static HomogeneousKernel two_values(double positive, double negative); // n = 1
    static HomogeneousKernel cos_harmonic(int k);                          // n = 2
    static HomogeneousKernel sin_harmonic(int k);                          // n = 2
    // theta strictly increasing in [0, 2pi), >= 8 samples, periodic linear
    // interpolation between them.
    static HomogeneousKernel tabulated(std::vector<double> theta, std::vector<double> values);

    int dim() const { return dim_; }
    Form form() const { return form_; }
    double harmonic_order() const { return k_; }
    double constant_value() const { return a_; }
    double positive_value() const { return a_; }
    double negative_value() const { return b_; }

    // Value at angle theta on the circle (2D forms only).
    double at_angle(double theta) const;
    // Value at a nonzero point; exactly invariant under positive scaling.
    double operator()(const Point& x) const;

private:
    int dim_ = 1;
    Form form_ = Form::Constant;
    double a_ = 1.0;
    double b_ = 1.0;
    int k_ = 1;
    std::vector<double> tab_theta_;
    std::vector<double> tab_values_;
};

double kernel_eval(const HomogeneousKernel& kernel, const Point& x);

// L^s norm over the unit sphere with the unnormalized surface measure
// (counting measure of total mass 2 in 1D, arc length of mass 2pi in 2D).
double sphere_norm(const HomogeneousKernel& kernel, double s);
// Integral of the kernel over the sphere (used by singular-cell corrections).
double sphere_integral(const HomogeneousKernel& kernel);

// Integral modulus of continuity omega_s(delta) under rotations of the
// circle, |rho(phi)| = 2|sin(phi/2)|. Precomputes L^s rotation distances
// on a fixed log-spaced phi grid once, then answers omega/Dini queries;
// omega is exactly nondecreasing in delta by construction. In 1D the
// rotation class is trivial and omega is identically 0.
class ModulusProfile {
public:
    ModulusProfile(const HomogeneousKernel& kernel, double s);

    double s() const { return s_; }
    // Lower-bound approximation of sup_{|rho|<delta} ||Omega(rho.) - Omega||_{L^s}.
    double omega(double delta) const;
    // Log-midpoint quadrature of omega(delta)/delta over [lo, hi].
    double dini(double lo, double hi) const;

private:
    int dim_;
    double s_;
    std::vector<double> rho_;        // 2 sin(phi_j / 2), strictly increasing
    std::vector<double> running_max_; // max of distances over phi_0..phi_j
};

double modulus_of_continuity(const HomogeneousKernel& kernel, double s, double delta);

struct DiniResult {
    double value = 0.0;                 // integral of omega_s(d)/d over [delta_min, 1]
    double last_decade_increment = 0.0; // contribution of [delta_min, 10 delta_min]
};

DiniResult dini_integral(const HomogeneousKernel& kernel, double s, double delta_min);

// L^s integral over the annulus R <= |z| < 2R of the kernel difference
// |Omega(z-x)/|z-x|^(n-a) - Omega(z)/|z|^(n-a)|, on a polar grid that
// scales exactly with R. Requires |x| < R/2.
double lemma_difference_lhs(const HomogeneousKernel& kernel, double alpha, double s, double R,
                            const Point& x, int radial_cells = 512, int angular_cells = 1024);

// Matching right-hand bound R^(n/s-(n-a)) * (|x|/R + Dini term), using the
// supplied modulus profile (must have the same s).
double lemma_difference_rhs(const ModulusProfile& profile, double alpha, double s, double R,
                            const Point& x, int dim);

} // namespace morreylab
