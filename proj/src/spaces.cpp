#include "morreylab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "morreylab/parallel.hpp"

namespace morreylab {

namespace {

// Visits cells whose centers lie in the ball, row-major order.
template <class Visit>
void for_cells_in_ball(const Grid& g, const Ball& ball, Visit visit) {
    auto [x0, x1] = g.axis_range(0, ball.center[0], ball.radius);
    auto [y0, y1] = g.dim() == 2 ? g.axis_range(1, ball.center[1], ball.radius)
                                 : std::pair<int, int>{0, 1};
    for (int iy = y0; iy < y1; ++iy) {
        const std::size_t base =
            g.dim() == 2 ? static_cast<std::size_t>(iy) * g.resolution() : 0;
        for (int ix = x0; ix < x1; ++ix) {
            const std::size_t idx = base + ix;
            if (ball.contains(g.cell_center(idx))) visit(idx);
        }
    }
}

double weight_at_cell(const Weight& w, const Grid& g, std::size_t idx) {
    const double v = cell_average(w, g, idx);
    if (!std::isfinite(v)) {
        throw std::invalid_argument(
            "norm: weight is not integrable on a grid cell (power weight at the origin?)");
    }
    return v;
}

} // namespace

double lp_norm(const SampledFunction& f, double p, const Weight& w) {
    if (!(p >= 1.0) || is_inf(p)) throw std::invalid_argument("lp_norm: p must lie in [1, inf)");
    const Grid& g = f.grid;
    const double s = parallel_sum(f.values.size(), [&](std::size_t i) {
        const double fv = std::abs(f.values[i]);
        if (fv == 0.0) return 0.0;
        return std::pow(fv, p) * weight_at_cell(w, g, i);
    });
    return std::pow(s * g.cell_volume(), 1.0 / p);
}

double weak_lp_norm(const SampledFunction& f, double p, const Weight& w) {
    if (!(p >= 1.0) || is_inf(p)) throw std::invalid_argument("weak_lp_norm: p must lie in [1, inf)");
    const Grid& g = f.grid;
    const std::size_t n = f.values.size();

    double fmax = 0.0, fmin_pos = kInf;
    for (double v : f.values) {
        const double a = std::abs(v);
        if (a > 0.0) {
            fmax = std::max(fmax, a);
            fmin_pos = std::min(fmin_pos, a);
        }
    }
    if (fmax == 0.0) return 0.0;

    // Sort cells by decreasing |f| (index tie-break keeps this
    // deterministic), then prefix-sum the w-masses so each level set's
    // measure is one lookup.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double fa = std::abs(f.values[a]), fb = std::abs(f.values[b]);
        return fa != fb ? fa > fb : a < b;
    });
    std::vector<double> level(n), mass(n + 1, 0.0);
    CompensatedSum acc;
    for (std::size_t k = 0; k < n; ++k) {
        level[k] = std::abs(f.values[order[k]]);
        if (level[k] > 0.0) acc.add(weight_at_cell(w, g, order[k]) * g.cell_volume());
        mass[k + 1] = acc.value();
    }

    constexpr int kLevels = 256;
    const double llo = std::log(fmin_pos), lhi = std::log(fmax);
    double best = 0.0;
    for (int k = 0; k < kLevels; ++k) {
        const double t =
            std::exp(llo + (lhi - llo) * (kLevels == 1 ? 0.0 : static_cast<double>(k) / (kLevels - 1))) *
            (1.0 - 1e-9);
        // count of cells with |f| > t
        const std::size_t cnt =
            std::upper_bound(level.begin(), level.end(), t, std::greater<double>()) - level.begin();
        best = std::max(best, t * std::pow(mass[cnt], 1.0 / p));
    }
    return best;
}

SupNormResult morrey_norm_report(const SampledFunction& f, double p, double kappa,
                                 const Weight& mu, const Weight& nu, const BallFamily& family) {
    if (!(p >= 1.0) || is_inf(p)) throw std::invalid_argument("morrey_norm: p must lie in [1, inf)");
    if (!(kappa >= 0.0) || !(kappa < 1.0)) throw std::invalid_argument("morrey_norm: kappa must lie in [0, 1)");
    if (family.size() == 0) throw std::invalid_argument("morrey_norm: empty ball family");
    const Grid& g = f.grid;

    SupNormResult out;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const Ball b = family.ball(k);
        CompensatedSum acc;
        for_cells_in_ball(g, b, [&](std::size_t idx) {
            const double fv = std::abs(f.values[idx]);
            if (fv > 0.0) acc.add(std::pow(fv, p) * weight_at_cell(mu, g, idx));
        });
        const double m = acc.value() * g.cell_volume();
        double bracket;
        if (kappa == 0.0) {
            bracket = std::pow(m, 1.0 / p);
        } else {
            const double nb = w_measure(nu, b, g);
            if (!(nb > 0.0)) throw std::invalid_argument("morrey_norm: nu(B) vanishes on a family ball");
            bracket = std::pow(m * std::pow(nb, -kappa), 1.0 / p);
        }
        if (bracket > out.value) {
            out.value = bracket;
            out.argmax = b;
        }
    }
    return out;
}

double morrey_norm(const SampledFunction& f, double p, double kappa, const Weight& mu,
                   const Weight& nu, const BallFamily& family) {
    return morrey_norm_report(f, p, kappa, mu, nu, family).value;
}

namespace {

struct Oscillation {
    double mean_abs_dev = 0.0;
    bool empty = true;
};

Oscillation ball_oscillation(const SampledFunction& h, const Ball& b) {
    const Grid& g = h.grid;
    CompensatedSum sum;
    std::size_t count = 0;
    for_cells_in_ball(g, b, [&](std::size_t idx) {
        sum.add(h.values[idx]);
        ++count;
    });
    Oscillation osc;
    if (count == 0) return osc;
    const double mean = sum.value() / static_cast<double>(count);
    CompensatedSum dev;
    for_cells_in_ball(g, b, [&](std::size_t idx) { dev.add(std::abs(h.values[idx] - mean)); });
    osc.mean_abs_dev = dev.value() / static_cast<double>(count);
    osc.empty = false;
    return osc;
}

double cell_sup(const SampledFunction& h, const Ball& b, bool* any) {
    double m = 0.0;
    bool found = false;
    for_cells_in_ball(h.grid, b, [&](std::size_t idx) {
        m = std::max(m, std::abs(h.values[idx]));
        found = true;
    });
    if (any) *any = found;
    return m;
}

// Cell-center essential sup of the weight over the ball (clipped to the
// grid box): lives on the same lattice as the sampled functions.
double cell_weight_sup(const Weight& w, const Grid& g, const Ball& b, bool* any) {
    double m = 0.0;
    bool found = false;
    for_cells_in_ball(g, b, [&](std::size_t idx) {
        m = std::max(m, w(g.cell_center(idx), g.dim()));
        found = true;
    });
    if (any) *any = found;
    return m;
}

} // namespace

SupNormResult bmo_seminorm_report(const SampledFunction& h, const BallFamily& family) {
    if (family.size() == 0) throw std::invalid_argument("bmo_seminorm: empty ball family");
    SupNormResult out;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const Ball b = family.ball(k);
        const Oscillation osc = ball_oscillation(h, b);
        if (!osc.empty && osc.mean_abs_dev > out.value) {
            out.value = osc.mean_abs_dev;
            out.argmax = b;
        }
    }
    return out;
}

double bmo_seminorm(const SampledFunction& h, const BallFamily& family) {
    return bmo_seminorm_report(h, family).value;
}

SupNormResult weighted_bmo_norm_report(const SampledFunction& h, const Weight& w,
                                       const BallFamily& family) {
    if (family.size() == 0) throw std::invalid_argument("weighted_bmo_norm: empty ball family");
    SupNormResult out;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const Ball b = family.ball(k);
        const Oscillation osc = ball_oscillation(h, b);
        if (osc.empty) continue;
        bool any = false;
        const double ws = cell_weight_sup(w, h.grid, b, &any);
        const double bracket = ws * osc.mean_abs_dev;
        if (any && bracket > out.value) {
            out.value = bracket;
            out.argmax = b;
        }
    }
    return out;
}

double weighted_bmo_norm(const SampledFunction& h, const Weight& w, const BallFamily& family) {
    return weighted_bmo_norm_report(h, w, family).value;
}

SupNormResult weighted_linf_norm_report(const SampledFunction& h, const Weight& w,
                                        const BallFamily& family) {
    if (family.size() == 0) throw std::invalid_argument("weighted_linf_norm: empty ball family");
    SupNormResult out;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const Ball b = family.ball(k);
        bool any_h = false, any_w = false;
        const double hs = cell_sup(h, b, &any_h);
        if (!any_h) continue;
        const double ws = cell_weight_sup(w, h.grid, b, &any_w);
        const double bracket = ws * hs;
        if (bracket > out.value) {
            out.value = bracket;
            out.argmax = b;
        }
    }
    return out;
}

double weighted_linf_norm(const SampledFunction& h, const Weight& w, const BallFamily& family) {
    return weighted_linf_norm_report(h, w, family).value;
}

} // namespace morreylab
