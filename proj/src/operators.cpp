#include "morreylab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

#include "morreylab/gammafn.hpp"
#include "morreylab/parallel.hpp"

namespace morreylab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_alpha(double alpha, int n) {
    if (!(alpha > 0.0) || !(alpha < n)) {
        throw std::invalid_argument("operator: alpha must lie in (0, n)");
    }
}

// Radius of the ball with the same volume as one grid cell.
double equivalent_radius(const Grid& g) {
    return g.dim() == 1 ? g.spacing(0) / 2.0 : g.spacing(0) / std::sqrt(std::numbers::pi);
}

// Exact integral of Omega(z)|z|^(alpha-n) over the equal-volume ball,
// divided by the cell volume (so it slots into the kernel table).
double singular_cell_entry(const SampledFunction& f, const HomogeneousKernel& kernel,
                           double alpha) {
    const Grid& g = f.grid;
    const double rho = equivalent_radius(g);
    return sphere_integral(kernel) * std::pow(rho, alpha) / alpha / g.cell_volume();
}

// Index range [lo, hi) of cells carrying nonzero f values (1D).
std::pair<std::size_t, std::size_t> support_range(const std::vector<double>& v) {
    std::size_t lo = 0, hi = v.size();
    while (lo < hi && v[lo] == 0.0) ++lo;
    while (hi > lo && v[hi - 1] == 0.0) --hi;
    return {lo, hi};
}

struct KernelTable1D {
    std::vector<double> pos; // offset k >= 1, argument x - y = +k h
    std::vector<double> neg;
    double center = 0.0;
};

// 1D tables hold the exact integral of |t|^(alpha-1) over each cell,
// divided by the cell width (product integration). Pure midpoint sampling
// of the kernel loses Theta(h^alpha) next to the singularity, which is
// too coarse for the closed-form checks this engine must meet.
KernelTable1D build_table_1d(const SampledFunction& f, const HomogeneousKernel& kernel,
                             double alpha) {
    const Grid& g = f.grid;
    const std::size_t n = g.cell_count();
    const double h = g.spacing(0);
    const double a = kernel.form() == HomogeneousKernel::Form::Constant
                         ? kernel.constant_value()
                         : kernel.positive_value();
    const double b = kernel.form() == HomogeneousKernel::Form::Constant
                         ? kernel.constant_value()
                         : kernel.negative_value();
    KernelTable1D t;
    t.pos.resize(n);
    t.neg.resize(n);
    t.pos[0] = t.neg[0] = 0.0;
    const double scale = std::pow(h, alpha - 1.0) / alpha;
    for (std::size_t k = 1; k < n; ++k) {
        const double d = (std::pow(k + 0.5, alpha) - std::pow(k - 0.5, alpha)) * scale;
        t.pos[k] = a * d;
        t.neg[k] = b * d;
    }
    t.center = singular_cell_entry(f, kernel, alpha);
    return t;
}

std::vector<double> apply_window_1d(const SampledFunction& f, const HomogeneousKernel& kernel,
                                    double alpha, std::size_t out_lo, std::size_t out_hi) {
    const Grid& g = f.grid;
    const double vol = g.cell_volume();
    const KernelTable1D table = build_table_1d(f, kernel, alpha);
    const auto [jlo, jhi] = support_range(f.values);
    std::vector<double> out(out_hi - out_lo, 0.0);
    parallel_for(out.size(), [&](std::size_t k) {
        const std::size_t i = out_lo + k;
        CompensatedSum acc;
        for (std::size_t j = jlo; j < jhi; ++j) {
            double kv;
            if (j < i) {
                kv = table.pos[i - j];
            } else if (j > i) {
                kv = table.neg[j - i];
            } else {
                kv = table.center;
            }
            acc.add(kv * f.values[j]);
        }
        out[k] = acc.value() * vol;
    });
    return out;
}

SampledFunction apply_2d(const SampledFunction& f, const HomogeneousKernel& kernel, double alpha) {
    const Grid& g = f.grid;
    const int n = g.resolution();
    const double hx = g.spacing(0), hy = g.spacing(1);
    const double vol = g.cell_volume();
    const int w = 2 * n - 1;
    std::vector<double> table(static_cast<std::size_t>(w) * w);
    parallel_for(table.size(), [&](std::size_t idx) {
        const int dy = static_cast<int>(idx / w) - (n - 1);
        const int dx = static_cast<int>(idx % w) - (n - 1);
        if (dx == 0 && dy == 0) {
            table[idx] = singular_cell_entry(f, kernel, alpha);
            return;
        }
        const Point z{dx * hx, dy * hy};
        table[idx] = kernel(z) * std::pow(norm(z, 2), alpha - 2.0);
    });

    SampledFunction out;
    out.grid = g;
    out.values.assign(g.cell_count(), 0.0);
    parallel_for(g.cell_count(), [&](std::size_t i) {
        const int ix = static_cast<int>(i % n);
        const int iy = static_cast<int>(i / n);
        CompensatedSum acc;
        for (int jy = 0; jy < n; ++jy) {
            const std::size_t row = static_cast<std::size_t>(jy) * n;
            const std::size_t trow = static_cast<std::size_t>(iy - jy + n - 1) * w;
            for (int jx = 0; jx < n; ++jx) {
                const double fv = f.values[row + jx];
                if (fv == 0.0) continue;
                acc.add(table[trow + (ix - jx + n - 1)] * fv);
            }
        }
        out.values[i] = acc.value() * vol;
    });
    return out;
}

} // namespace

double gamma_alpha(double alpha, int n) {
    check_alpha(alpha, n);
    return std::pow(2.0, alpha) * std::pow(std::numbers::pi, n / 2.0) *
           lanczos_gamma(alpha / 2.0) / lanczos_gamma((n - alpha) / 2.0);
}

SampledFunction homogeneous_fractional_integral(const SampledFunction& f,
                                                const HomogeneousKernel& kernel, double alpha) {
    const Grid& g = f.grid;
    if (kernel.dim() != g.dim()) throw std::invalid_argument("operator: kernel/grid dimension mismatch");
    check_alpha(alpha, g.dim());
    if (g.dim() == 2) return apply_2d(f, kernel, alpha);
    SampledFunction out;
    out.grid = g;
    out.values = apply_window_1d(f, kernel, alpha, 0, g.cell_count());
    return out;
}

std::vector<double> homogeneous_integral_window(const SampledFunction& f,
                                                const HomogeneousKernel& kernel, double alpha,
                                                std::size_t out_lo, std::size_t out_hi) {
    if (f.grid.dim() != 1) throw std::invalid_argument("operator: window evaluation is 1D only");
    check_alpha(alpha, 1);
    return apply_window_1d(f, kernel, alpha, out_lo, out_hi);
}

double homogeneous_integral_at(const SampledFunction& f, const HomogeneousKernel& kernel,
                               double alpha, const Point& x) {
    const Grid& g = f.grid;
    if (kernel.dim() != g.dim()) throw std::invalid_argument("operator: kernel/grid dimension mismatch");
    check_alpha(alpha, g.dim());
    const double vol = g.cell_volume();
    const double center_entry = singular_cell_entry(f, kernel, alpha);
    const double snap = 1e-9 * g.spacing(0);
    const double s = parallel_sum(g.cell_count(), [&](std::size_t j) {
        const double fv = f.values[j];
        if (fv == 0.0) return 0.0;
        const Point y = g.cell_center(j);
        const Point d{x[0] - y[0], x[1] - y[1]};
        const double r = norm(d, g.dim());
        if (r < snap) return center_entry * fv;
        return kernel(d) * std::pow(r, alpha - g.dim()) * fv;
    });
    return s * vol;
}

SampledFunction riesz_potential(const SampledFunction& f, double alpha) {
    SampledFunction out =
        homogeneous_fractional_integral(f, HomogeneousKernel::constant(f.grid.dim(), 1.0), alpha);
    const double scale = 1.0 / gamma_alpha(alpha, f.grid.dim());
    for (double& v : out.values) v *= scale;
    return out;
}

double riesz_potential_at(const SampledFunction& f, double alpha, const Point& x) {
    return homogeneous_integral_at(f, HomogeneousKernel::constant(f.grid.dim(), 1.0), alpha, x) /
           gamma_alpha(alpha, f.grid.dim());
}

namespace {

void check_oracle_support(const SampledFunction& f) {
    const Grid& g = f.grid;
    if (g.dim() == 1) {
        const auto [lo, hi] = support_range(f.values);
        if (lo >= hi) return;
        const double width = static_cast<double>(hi - lo) * g.spacing(0);
        if (width > g.box().width(0) / 4.0 + g.spacing(0)) {
            throw std::invalid_argument("fourier oracle: support diameter must be <= box/4");
        }
        return;
    }
    const int n = g.resolution();
    int xmin = n, xmax = -1, ymin = n, ymax = -1;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (f.values[i] == 0.0) continue;
        const int ix = static_cast<int>(i % n);
        const int iy = static_cast<int>(i / n);
        xmin = std::min(xmin, ix);
        xmax = std::max(xmax, ix);
        ymin = std::min(ymin, iy);
        ymax = std::max(ymax, iy);
    }
    if (xmax < 0) return;
    const double wx = (xmax - xmin + 1) * g.spacing(0);
    const double wy = (ymax - ymin + 1) * g.spacing(1);
    if (wx > g.box().width(0) / 4.0 + g.spacing(0) || wy > g.box().width(1) / 4.0 + g.spacing(1)) {
        throw std::invalid_argument("fourier oracle: support diameter must be <= box/4");
    }
}

} // namespace

SampledFunction riesz_fourier_oracle(const SampledFunction& f, double alpha, int pad_factor) {
    const Grid& g = f.grid;
    check_alpha(alpha, g.dim());
    if (pad_factor < 2) throw std::invalid_argument("fourier oracle: pad_factor must be >= 2");
    check_oracle_support(f);

    const int n = g.resolution();
    const int m = n * pad_factor;
    const std::size_t offset = static_cast<std::size_t>(m - n) / 2;

    SampledFunction out;
    out.grid = g;
    out.values.assign(g.cell_count(), 0.0);

    if (g.dim() == 1) {
        const double L = g.box().width(0) * pad_factor;
        fftw_complex* buf = fftw_alloc_complex(m);
        for (int i = 0; i < m; ++i) buf[i][0] = buf[i][1] = 0.0;
        for (int i = 0; i < n; ++i) buf[offset + i][0] = f.values[i];
        fftw_plan fwd = fftw_plan_dft_1d(m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(fwd);
        for (int k = 0; k < m; ++k) {
            const int freq = k <= m / 2 ? k : k - m;
            const double mult =
                freq == 0 ? 0.0 : std::pow(kTwoPi * std::abs(freq) / L, -alpha) / m;
            buf[k][0] *= mult;
            buf[k][1] *= mult;
        }
        fftw_plan bwd = fftw_plan_dft_1d(m, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(bwd);
        for (int i = 0; i < n; ++i) out.values[i] = buf[offset + i][0];
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    } else {
        const double Lx = g.box().width(0) * pad_factor;
        const double Ly = g.box().width(1) * pad_factor;
        fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(m) * m);
        for (std::size_t i = 0; i < static_cast<std::size_t>(m) * m; ++i) buf[i][0] = buf[i][1] = 0.0;
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                buf[(offset + iy) * m + offset + ix][0] = f.values[static_cast<std::size_t>(iy) * n + ix];
            }
        }
        fftw_plan fwd = fftw_plan_dft_2d(m, m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(fwd);
        const double scale = 1.0 / (static_cast<double>(m) * m);
        for (int ky = 0; ky < m; ++ky) {
            const int fy = ky <= m / 2 ? ky : ky - m;
            for (int kx = 0; kx < m; ++kx) {
                const int fx = kx <= m / 2 ? kx : kx - m;
                const double xi = std::hypot(fx / Lx, fy / Ly);
                const double mult = xi == 0.0 ? 0.0 : std::pow(kTwoPi * xi, -alpha) * scale;
                fftw_complex& c = buf[static_cast<std::size_t>(ky) * m + kx];
                c[0] *= mult;
                c[1] *= mult;
            }
        }
        fftw_plan bwd = fftw_plan_dft_2d(m, m, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(bwd);
        for (int iy = 0; iy < n; ++iy) {
            for (int ix = 0; ix < n; ++ix) {
                out.values[static_cast<std::size_t>(iy) * n + ix] = buf[(offset + iy) * m + offset + ix][0];
            }
        }
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }

    // The zero mode is not determined by the multiplier; pin the additive
    // constant by matching the direct quadrature at the box-center cell.
    Point mid{};
    for (int a = 0; a < g.dim(); ++a) mid[a] = 0.5 * (g.box().lo[a] + g.box().hi[a]);
    const std::size_t ref = g.nearest_cell(mid);
    const double direct = riesz_potential_at(f, alpha, g.cell_center(ref));
    const double shift = direct - out.values[ref];
    for (double& v : out.values) v += shift;
    return out;
}

namespace {

double sphere_abs_average(const HomogeneousKernel& kernel) {
    if (kernel.dim() == 1) {
        return (std::abs(kernel.positive_value()) + std::abs(kernel.negative_value())) / 2.0;
    }
    return sphere_norm(kernel, 1.0) / sphere_measure(2);
}

struct MaximalContext {
    std::vector<double> prefix_abs; // 1D: prefix sums of |f|
    double abs_pos = 1.0, abs_neg = 1.0, abs_center = 1.0;
};

MaximalContext maximal_context(const SampledFunction& f, const HomogeneousKernel& kernel) {
    MaximalContext ctx;
    if (f.grid.dim() == 1) {
        ctx.prefix_abs.resize(f.values.size() + 1, 0.0);
        CompensatedSum acc;
        for (std::size_t j = 0; j < f.values.size(); ++j) {
            acc.add(std::abs(f.values[j]));
            ctx.prefix_abs[j + 1] = acc.value();
        }
        ctx.abs_pos = kernel.form() == HomogeneousKernel::Form::Constant
                          ? std::abs(kernel.constant_value())
                          : std::abs(kernel.positive_value());
        ctx.abs_neg = kernel.form() == HomogeneousKernel::Form::Constant
                          ? std::abs(kernel.constant_value())
                          : std::abs(kernel.negative_value());
    }
    ctx.abs_center = sphere_abs_average(kernel);
    return ctx;
}

double maximal_at_1d(const SampledFunction& f, const MaximalContext& ctx, double alpha,
                     double x, const std::vector<double>& radii) {
    const Grid& g = f.grid;
    const double h = g.spacing(0);
    // cells strictly left of x, the cell centered at x (if any), and the rest
    const double t = (x - g.box().lo[0]) / h - 0.5;
    const long nearest = std::lround(t);
    const bool on_center = std::abs(t - static_cast<double>(nearest)) < 1e-9 &&
                           nearest >= 0 && nearest < g.resolution();
    double best = 0.0;
    for (double r : radii) {
        auto [j0, j1] = g.axis_range(0, x, r);
        if (j1 <= j0) continue;
        const long split = on_center ? nearest : static_cast<long>(std::ceil(t));
        const long left_end = std::clamp(split, static_cast<long>(j0), static_cast<long>(j1));
        const long right_begin =
            std::clamp(on_center ? nearest + 1 : split, static_cast<long>(j0), static_cast<long>(j1));
        CompensatedSum acc;
        acc.add(ctx.abs_pos * (ctx.prefix_abs[left_end] - ctx.prefix_abs[j0]));
        acc.add(ctx.abs_neg * (ctx.prefix_abs[j1] - ctx.prefix_abs[right_begin]));
        if (on_center && nearest >= j0 && nearest < j1) {
            acc.add(ctx.abs_center * std::abs(f.values[static_cast<std::size_t>(nearest)]));
        }
        const double integral = acc.value() * h;
        best = std::max(best, std::pow(ball_volume(1, r), alpha - 1.0) * integral);
    }
    return best;
}

double maximal_at_2d(const SampledFunction& f, const HomogeneousKernel& kernel, double alpha,
                     const Point& x, const std::vector<double>& radii) {
    const Grid& g = f.grid;
    const double vol = g.cell_volume();
    const double snap = 1e-9 * g.spacing(0);
    const double abs_center = sphere_abs_average(kernel);
    double best = 0.0;
    for (double r : radii) {
        auto [x0, x1] = g.axis_range(0, x[0], r);
        auto [y0, y1] = g.axis_range(1, x[1], r);
        CompensatedSum acc;
        for (int iy = y0; iy < y1; ++iy) {
            const std::size_t row = static_cast<std::size_t>(iy) * g.resolution();
            for (int ix = x0; ix < x1; ++ix) {
                const Point y = g.cell_center(row + ix);
                const Point d{x[0] - y[0], x[1] - y[1]};
                const double dist = norm(d, 2);
                if (dist >= r) continue;
                const double fv = std::abs(f.values[row + ix]);
                if (fv == 0.0) continue;
                acc.add(dist < snap ? abs_center * fv : std::abs(kernel(d)) * fv);
            }
        }
        best = std::max(best, std::pow(ball_volume(2, r), alpha / 2.0 - 1.0) * acc.value() * vol);
    }
    return best;
}

} // namespace

double homogeneous_fractional_maximal(const SampledFunction& f, const HomogeneousKernel& kernel,
                                      double alpha, const Point& x,
                                      const std::vector<double>& radii) {
    const Grid& g = f.grid;
    if (kernel.dim() != g.dim()) throw std::invalid_argument("operator: kernel/grid dimension mismatch");
    check_alpha(alpha, g.dim());
    if (radii.empty()) throw std::invalid_argument("maximal: empty radius ladder");
    if (g.dim() == 1) {
        const MaximalContext ctx = maximal_context(f, kernel);
        return maximal_at_1d(f, ctx, alpha, x[0], radii);
    }
    return maximal_at_2d(f, kernel, alpha, x, radii);
}

double fractional_maximal(const SampledFunction& f, double alpha, const Point& x,
                          const std::vector<double>& radii) {
    return homogeneous_fractional_maximal(f, HomogeneousKernel::constant(f.grid.dim(), 1.0), alpha,
                                          x, radii);
}

SampledFunction maximal_function(const SampledFunction& f, const HomogeneousKernel& kernel,
                                 double alpha, const std::vector<double>& radii) {
    const Grid& g = f.grid;
    if (kernel.dim() != g.dim()) throw std::invalid_argument("operator: kernel/grid dimension mismatch");
    check_alpha(alpha, g.dim());
    if (radii.empty()) throw std::invalid_argument("maximal: empty radius ladder");
    SampledFunction out;
    out.grid = g;
    out.values.assign(g.cell_count(), 0.0);
    if (g.dim() == 1) {
        const MaximalContext ctx = maximal_context(f, kernel);
        parallel_for(g.cell_count(), [&](std::size_t i) {
            out.values[i] = maximal_at_1d(f, ctx, alpha, g.cell_center(i)[0], radii);
        });
    } else {
        parallel_for(g.cell_count(), [&](std::size_t i) {
            out.values[i] = maximal_at_2d(f, kernel, alpha, g.cell_center(i), radii);
        });
    }
    return out;
}

SemigroupReport semigroup_check(double beta, double gamma, const SampledFunction& f,
                                int pad_factor) {
    const Grid& g = f.grid;
    if (g.dim() != 1) throw std::invalid_argument("semigroup_check: 1D only");
    if (!(beta > 0.0) || !(gamma > 0.0) || !(beta + gamma < 1.0)) {
        throw std::invalid_argument("semigroup_check: requires beta, gamma > 0 and beta + gamma < n");
    }
    if (pad_factor < 1) throw std::invalid_argument("semigroup_check: pad_factor must be >= 1");

    const int n = g.resolution();
    const int m = n * pad_factor;
    const std::size_t offset = static_cast<std::size_t>(m - n) / 2;

    // Inner potential on the widened grid (same spacing, same centers).
    Box wide = g.box();
    const double mid = 0.5 * (wide.lo[0] + wide.hi[0]);
    const double halfw = 0.5 * wide.width(0) * pad_factor;
    wide.lo[0] = mid - halfw;
    wide.hi[0] = mid + halfw;
    SampledFunction fw;
    fw.grid = make_grid(wide, m);
    fw.values.assign(fw.grid.cell_count(), 0.0);
    for (int i = 0; i < n; ++i) fw.values[offset + i] = f.values[i];
    SampledFunction inner = riesz_potential(fw, gamma);

    // Middle half of the original box.
    const std::size_t mid_lo = static_cast<std::size_t>(n) / 4;
    const std::size_t mid_hi = static_cast<std::size_t>(n) - n / 4;
    const std::vector<double> composed = homogeneous_integral_window(
        inner, HomogeneousKernel::constant(1, 1.0), beta, offset + mid_lo, offset + mid_hi);
    const std::vector<double> direct = homogeneous_integral_window(
        f, HomogeneousKernel::constant(1, 1.0), beta + gamma, mid_lo, mid_hi);

    const double gb = gamma_alpha(beta, 1);
    const double gbg = gamma_alpha(beta + gamma, 1);
    SemigroupReport rep;
    for (std::size_t k = 0; k < direct.size(); ++k) {
        const double ref = direct[k] / gbg;
        rep.discrepancy = std::max(rep.discrepancy, std::abs(composed[k] / gb - ref));
        rep.reference = std::max(rep.reference, std::abs(ref));
    }
    rep.ratio = rep.reference > 0.0 ? rep.discrepancy / rep.reference : 0.0;
    return rep;
}

} // namespace morreylab
