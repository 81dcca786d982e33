#include "morreylab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "morreylab/parallel.hpp"

namespace morreylab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSphereQuadrature = 4096; // theta midpoints on the circle
constexpr int kPhiGridSize = 4096;      // rotation angles for the modulus search
constexpr double kPhiMin = 1e-7;

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

} // namespace

HomogeneousKernel HomogeneousKernel::constant(int dim, double c) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("kernel: dim must be 1 or 2");
    HomogeneousKernel k;
    k.dim_ = dim;
    k.form_ = Form::Constant;
    k.a_ = k.b_ = c;
    return k;
}

HomogeneousKernel HomogeneousKernel::two_values(double positive, double negative) {
    HomogeneousKernel k;
    k.dim_ = 1;
    k.form_ = Form::TwoValues;
    k.a_ = positive;
    k.b_ = negative;
    return k;
}

HomogeneousKernel HomogeneousKernel::cos_harmonic(int order) {
    HomogeneousKernel k;
    k.dim_ = 2;
    k.form_ = Form::CosHarmonic;
    k.k_ = order;
    return k;
}

HomogeneousKernel HomogeneousKernel::sin_harmonic(int order) {
    HomogeneousKernel k;
    k.dim_ = 2;
    k.form_ = Form::SinHarmonic;
    k.k_ = order;
    return k;
}

HomogeneousKernel HomogeneousKernel::tabulated(std::vector<double> theta, std::vector<double> values) {
    if (theta.size() < 8) throw std::invalid_argument("kernel: tabulated form needs >= 8 samples");
    if (theta.size() != values.size()) throw std::invalid_argument("kernel: theta/values size mismatch");
    if (!std::is_sorted(theta.begin(), theta.end())) {
        throw std::invalid_argument("kernel: tabulated theta must be increasing");
    }
    if (theta.front() < 0.0 || theta.back() >= kTwoPi) {
        throw std::invalid_argument("kernel: tabulated theta must lie in [0, 2pi)");
    }
    HomogeneousKernel k;
    k.dim_ = 2;
    k.form_ = Form::Tabulated;
    k.tab_theta_ = std::move(theta);
    k.tab_values_ = std::move(values);
    return k;
}

double HomogeneousKernel::at_angle(double theta) const {
    switch (form_) {
    case Form::Constant:
        return a_;
    case Form::CosHarmonic:
        return std::cos(k_ * theta);
    case Form::SinHarmonic:
        return std::sin(k_ * theta);
    case Form::Tabulated: {
        const double t = wrap_angle(theta);
        auto it = std::upper_bound(tab_theta_.begin(), tab_theta_.end(), t);
        const std::size_t n = tab_theta_.size();
        std::size_t j1 = static_cast<std::size_t>(it - tab_theta_.begin()); // first node > t
        std::size_t j0 = (j1 == 0) ? n - 1 : j1 - 1;
        double t0 = tab_theta_[j0];
        double t1 = (j1 == n) ? tab_theta_[0] + kTwoPi : tab_theta_[j1];
        if (j1 == 0) t0 -= kTwoPi; // t below the first node: wrap the last one back
        const std::size_t jv1 = (j1 == n) ? 0 : j1;
        const double span = t1 - t0;
        const double w = span > 0 ? (t - t0) / span : 0.0;
        return (1.0 - w) * tab_values_[j0] + w * tab_values_[jv1];
    }
    case Form::TwoValues:
        throw std::logic_error("kernel: two-values form has no angle parametrization");
    }
    return a_;
}

double HomogeneousKernel::operator()(const Point& x) const {
    if (dim_ == 1) {
        if (x[0] == 0.0) throw std::invalid_argument("kernel_eval: x must be nonzero");
        if (form_ == Form::Constant) return a_;
        return x[0] > 0 ? a_ : b_;
    }
    if (x[0] == 0.0 && x[1] == 0.0) throw std::invalid_argument("kernel_eval: x must be nonzero");
    if (form_ == Form::Constant) return a_;
    return at_angle(std::atan2(x[1], x[0]));
}

double kernel_eval(const HomogeneousKernel& kernel, const Point& x) { return kernel(x); }

double sphere_norm(const HomogeneousKernel& kernel, double s) {
    if (!(s >= 1.0)) throw std::invalid_argument("sphere_norm: s must be >= 1");
    if (kernel.dim() == 1) {
        const double a = std::abs(kernel.positive_value());
        const double b = std::abs(kernel.negative_value());
        if (is_inf(s)) return std::max(a, b);
        return std::pow(std::pow(a, s) + std::pow(b, s), 1.0 / s);
    }
    const double dtheta = kTwoPi / kSphereQuadrature;
    if (is_inf(s)) {
        double m = 0.0;
        for (int i = 0; i < kSphereQuadrature; ++i) {
            m = std::max(m, std::abs(kernel.at_angle((i + 0.5) * dtheta)));
        }
        return m;
    }
    CompensatedSum acc;
    for (int i = 0; i < kSphereQuadrature; ++i) {
        acc.add(std::pow(std::abs(kernel.at_angle((i + 0.5) * dtheta)), s));
    }
    return std::pow(acc.value() * dtheta, 1.0 / s);
}

double sphere_integral(const HomogeneousKernel& kernel) {
    if (kernel.dim() == 1) return kernel.positive_value() + kernel.negative_value();
    if (kernel.form() == HomogeneousKernel::Form::Constant) {
        return kTwoPi * kernel.constant_value();
    }
    const double dtheta = kTwoPi / kSphereQuadrature;
    CompensatedSum acc;
    for (int i = 0; i < kSphereQuadrature; ++i) acc.add(kernel.at_angle((i + 0.5) * dtheta));
    return acc.value() * dtheta;
}

ModulusProfile::ModulusProfile(const HomogeneousKernel& kernel, double s) : dim_(kernel.dim()), s_(s) {
    if (!(s > 1.0)) throw std::invalid_argument("modulus: s must lie in (1, inf]");
    if (dim_ == 1) return; // only the identity rotation is admissible

    rho_.resize(kPhiGridSize);
    running_max_.resize(kPhiGridSize);
    std::vector<double> phi(kPhiGridSize);
    const double ratio = std::log(std::numbers::pi / kPhiMin) / (kPhiGridSize - 1);
    for (int j = 0; j < kPhiGridSize; ++j) phi[j] = kPhiMin * std::exp(ratio * j);

    std::vector<double> dist(kPhiGridSize, 0.0);
    const double dtheta = kTwoPi / kSphereQuadrature;
    parallel_for(kPhiGridSize, [&](std::size_t j) {
        const double p = phi[j];
        if (is_inf(s_)) {
            double m = 0.0;
            for (int i = 0; i < kSphereQuadrature; ++i) {
                const double t = (i + 0.5) * dtheta;
                m = std::max(m, std::abs(kernel.at_angle(t + p) - kernel.at_angle(t)));
            }
            dist[j] = m;
        } else {
            CompensatedSum acc;
            for (int i = 0; i < kSphereQuadrature; ++i) {
                const double t = (i + 0.5) * dtheta;
                acc.add(std::pow(std::abs(kernel.at_angle(t + p) - kernel.at_angle(t)), s_));
            }
            dist[j] = std::pow(acc.value() * dtheta, 1.0 / s_);
        }
    });

    double m = 0.0;
    for (int j = 0; j < kPhiGridSize; ++j) {
        rho_[j] = 2.0 * std::abs(std::sin(phi[j] / 2.0));
        m = std::max(m, dist[j]);
        running_max_[j] = m;
    }
}

double ModulusProfile::omega(double delta) const {
    if (!(delta > 0.0) || delta > 2.0) {
        throw std::invalid_argument("modulus: delta must lie in (0, 2]");
    }
    if (dim_ == 1 || rho_.empty()) return 0.0;
    // largest j with rho_[j] < delta
    auto it = std::lower_bound(rho_.begin(), rho_.end(), delta);
    if (it == rho_.begin()) return 0.0;
    const std::size_t j = static_cast<std::size_t>(it - rho_.begin()) - 1;
    return running_max_[j];
}

double ModulusProfile::dini(double lo, double hi) const {
    if (!(lo > 0.0) || !(hi > lo)) return 0.0;
    if (dim_ == 1) return 0.0;
    const double ulo = std::log(lo);
    const double uhi = std::log(std::min(hi, 2.0));
    if (!(uhi > ulo)) return 0.0;
    const int decades = static_cast<int>(std::ceil((uhi - ulo) / std::numbers::ln10));
    const int n = std::max(64, 64 * decades);
    const double du = (uhi - ulo) / n;
    CompensatedSum acc;
    for (int k = 0; k < n; ++k) acc.add(omega(std::exp(ulo + (k + 0.5) * du)));
    return acc.value() * du;
}

double modulus_of_continuity(const HomogeneousKernel& kernel, double s, double delta) {
    return ModulusProfile(kernel, s).omega(delta);
}

DiniResult dini_integral(const HomogeneousKernel& kernel, double s, double delta_min) {
    if (!(delta_min > 0.0) || !(delta_min < 1.0)) {
        throw std::invalid_argument("dini_integral: delta_min must lie in (0, 1)");
    }
    const ModulusProfile profile(kernel, s);
    DiniResult r;
    r.value = profile.dini(delta_min, 1.0);
    r.last_decade_increment = profile.dini(delta_min, std::min(1.0, 10.0 * delta_min));
    return r;
}

namespace {

double kernel_over_distance(const HomogeneousKernel& kernel, const Point& z, double power) {
    return kernel(z) * std::pow(norm(z, kernel.dim()), power);
}

} // namespace

double lemma_difference_lhs(const HomogeneousKernel& kernel, double alpha, double s, double R,
                            const Point& x, int radial_cells, int angular_cells) {
    const int n = kernel.dim();
    if (!(alpha > 0.0) || !(alpha < n)) throw std::invalid_argument("lemma: alpha must lie in (0, n)");
    if (!(norm(x, n) < R / 2.0)) throw std::invalid_argument("lemma: requires |x| < R/2");
    const double power = alpha - n; // exponent of |z| in the kernel term

    if (n == 1) {
        const double dr = R / radial_cells;
        CompensatedSum acc;
        double sup = 0.0;
        for (int side = 0; side < 2; ++side) {
            const double sign = side == 0 ? 1.0 : -1.0;
            for (int i = 0; i < radial_cells; ++i) {
                const double z0 = sign * (R + (i + 0.5) * dr);
                const Point z{z0, 0.0};
                const Point zx{z0 - x[0], 0.0};
                const double d = std::abs(kernel_over_distance(kernel, zx, power) -
                                          kernel_over_distance(kernel, z, power));
                if (is_inf(s)) {
                    sup = std::max(sup, d);
                } else {
                    acc.add(std::pow(d, s));
                }
            }
        }
        return is_inf(s) ? sup : std::pow(acc.value() * dr, 1.0 / s);
    }

    const double dr = R / radial_cells;
    const double dtheta = kTwoPi / angular_cells;
    std::vector<double> ring(radial_cells, 0.0);
    parallel_for(static_cast<std::size_t>(radial_cells), [&](std::size_t i) {
        const double rho = R + (static_cast<double>(i) + 0.5) * dr;
        if (is_inf(s)) {
            double m = 0.0;
            for (int j = 0; j < angular_cells; ++j) {
                const double t = (j + 0.5) * dtheta;
                const Point z{rho * std::cos(t), rho * std::sin(t)};
                const Point zx{z[0] - x[0], z[1] - x[1]};
                m = std::max(m, std::abs(kernel_over_distance(kernel, zx, power) -
                                         kernel_over_distance(kernel, z, power)));
            }
            ring[i] = m;
        } else {
            CompensatedSum acc;
            for (int j = 0; j < angular_cells; ++j) {
                const double t = (j + 0.5) * dtheta;
                const Point z{rho * std::cos(t), rho * std::sin(t)};
                const Point zx{z[0] - x[0], z[1] - x[1]};
                acc.add(std::pow(std::abs(kernel_over_distance(kernel, zx, power) -
                                          kernel_over_distance(kernel, z, power)),
                                 s));
            }
            ring[i] = acc.value() * rho * dr * dtheta;
        }
    });
    if (is_inf(s)) {
        double m = 0.0;
        for (double v : ring) m = std::max(m, v);
        return m;
    }
    return std::pow(block_sum(ring), 1.0 / s);
}

double lemma_difference_rhs(const ModulusProfile& profile, double alpha, double s, double R,
                            const Point& x, int dim) {
    if (!(alpha > 0.0) || !(alpha < dim)) throw std::invalid_argument("lemma: alpha must lie in (0, n)");
    const double xn = norm(x, dim);
    if (!(xn < R / 2.0)) throw std::invalid_argument("lemma: requires |x| < R/2");
    if (xn == 0.0) return 0.0;
    const double exponent = (is_inf(s) ? 0.0 : dim / s) - (dim - alpha);
    const double bracket = xn / R + profile.dini(xn / (2.0 * R), xn / R);
    return std::pow(R, exponent) * bracket;
}

} // namespace morreylab
