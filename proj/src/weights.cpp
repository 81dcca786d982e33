#include "morreylab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "morreylab/summation.hpp"

namespace morreylab {

namespace {

// Antiderivative of |x|^beta (odd, continuous through 0 when beta > -1).
double power_antiderivative(double x, double beta) {
    if (x == 0.0) return 0.0;
    if (beta == -1.0) return x > 0 ? std::log(x) : -std::log(-x);
    const double sign = x > 0 ? 1.0 : -1.0;
    return sign * std::pow(std::abs(x), beta + 1.0) / (beta + 1.0);
}

// Exact integral of |x|^beta over [a, b] (1D).
double power_interval_integral(double a, double b, double beta) {
    if (a >= b) return 0.0;
    const bool meets_origin = a <= 0.0 && b >= 0.0;
    if (meets_origin && beta <= -1.0) return kInf;
    return power_antiderivative(b, beta) - power_antiderivative(a, beta);
}

// Integral of |x|^beta over a 2D ball, polar quadrature about the ball
// center; exact for origin-centered balls.
double power_disc_integral(const Ball& ball, double beta) {
    const double c = norm(ball.center, 2);
    if (c <= ball.radius && beta <= -2.0) return kInf;
    if (c == 0.0) {
        if (beta <= -2.0) return kInf;
        return 2.0 * std::numbers::pi * std::pow(ball.radius, beta + 2.0) / (beta + 2.0);
    }
    const int nr = 256, nt = 256;
    const double dr = ball.radius / nr;
    const double dt = 2.0 * std::numbers::pi / nt;
    CompensatedSum acc;
    for (int i = 0; i < nr; ++i) {
        const double rho = (i + 0.5) * dr;
        for (int j = 0; j < nt; ++j) {
            const double t = (j + 0.5) * dt;
            const double px = ball.center[0] + rho * std::cos(t);
            const double py = ball.center[1] + rho * std::sin(t);
            acc.add(std::pow(std::hypot(px, py), beta) * rho);
        }
    }
    return acc.value() * dr * dt;
}

} // namespace

Weight Weight::constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("weight: constant must be positive");
    Weight w;
    w.form_ = Form::Constant;
    w.c_ = c;
    return w;
}

Weight Weight::power(double beta) {
    Weight w;
    w.form_ = Form::Power;
    w.beta_ = beta;
    return w;
}

Weight Weight::sampled(SampledFunction samples) {
    for (double v : samples.values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("weight: sampled values must be positive and finite");
        }
    }
    Weight w;
    w.form_ = Form::Sampled;
    w.samples_ = std::move(samples);
    return w;
}

double Weight::operator()(const Point& p, int dim) const {
    switch (form_) {
    case Form::Constant:
        return c_;
    case Form::Power: {
        const double r = norm(p, dim);
        if (r == 0.0) return beta_ < 0 ? kInf : (beta_ > 0 ? 0.0 : 1.0);
        return std::pow(r, beta_);
    }
    case Form::Sampled:
        if (!samples_.grid.box().contains(p)) {
            throw std::invalid_argument("weight: sampled weight evaluated outside its grid box");
        }
        return samples_.values[samples_.grid.nearest_cell(p)];
    }
    return c_;
}

Weight Weight::pow(double t) const {
    switch (form_) {
    case Form::Constant:
        return Weight::constant(std::pow(c_, t));
    case Form::Power:
        return Weight::power(beta_ * t);
    case Form::Sampled: {
        SampledFunction out = samples_;
        for (double& v : out.values) v = std::pow(v, t);
        return Weight::sampled(std::move(out));
    }
    }
    return *this;
}

Weight weight_pow(const Weight& w, double t) { return w.pow(t); }

namespace {

// Ball integral of the weight; +inf when a power weight is not locally
// integrable on the ball. apq_constant consumes the +inf (divergence is
// an outcome there, not an error).
double ball_integral(const Weight& w, const Ball& ball) {
    switch (w.form()) {
    case Weight::Form::Constant:
        return w.constant_value() * ball.volume();
    case Weight::Form::Power:
        if (ball.dim == 1) {
            return power_interval_integral(ball.center[0] - ball.radius,
                                           ball.center[0] + ball.radius, w.beta());
        }
        return power_disc_integral(ball, w.beta());
    case Weight::Form::Sampled: {
        const SampledFunction& f = w.samples();
        Ball b = ball;
        b.dim = f.grid.dim();
        return integrate(f, b);
    }
    }
    return 0.0;
}

} // namespace

double w_measure(const Weight& w, const Ball& ball, const Grid& grid) {
    (void)grid;
    const double v = ball_integral(w, ball);
    if (!std::isfinite(v)) {
        throw std::invalid_argument(
            "w_measure: power weight is not locally integrable on this ball (beta <= -n at the origin)");
    }
    return v;
}

namespace {

template <class Fold>
double sampled_extreme(const Weight& w, const Ball& ball, double init, Fold fold) {
    const Grid& g = w.samples().grid;
    auto [x0, x1] = g.axis_range(0, ball.center[0], ball.radius);
    auto [y0, y1] = g.dim() == 2 ? g.axis_range(1, ball.center[1], ball.radius)
                                 : std::pair<int, int>{0, 1};
    double out = init;
    bool any = false;
    for (int iy = y0; iy < y1; ++iy) {
        const std::size_t base = static_cast<std::size_t>(iy) * (g.dim() == 2 ? g.resolution() : 0);
        for (int ix = x0; ix < x1; ++ix) {
            const std::size_t idx = base + ix;
            if (!ball.contains(g.cell_center(idx))) continue;
            out = fold(out, w.samples().values[idx]);
            any = true;
        }
    }
    if (!any) throw std::invalid_argument("weight: ball contains no grid cells");
    return out;
}

} // namespace

double ess_sup(const Weight& w, const Ball& ball, const Grid& grid) {
    (void)grid;
    switch (w.form()) {
    case Weight::Form::Constant:
        return w.constant_value();
    case Weight::Form::Power: {
        const double beta = w.beta();
        const double c = norm(ball.center, ball.dim);
        const double dmin = std::max(0.0, c - ball.radius);
        const double dmax = c + ball.radius;
        if (beta >= 0.0) return std::pow(dmax, beta);
        return dmin == 0.0 ? kInf : std::pow(dmin, beta);
    }
    case Weight::Form::Sampled:
        return sampled_extreme(w, ball, -kInf, [](double a, double b) { return std::max(a, b); });
    }
    return 0.0;
}

double ess_inf(const Weight& w, const Ball& ball, const Grid& grid) {
    (void)grid;
    switch (w.form()) {
    case Weight::Form::Constant:
        return w.constant_value();
    case Weight::Form::Power: {
        const double beta = w.beta();
        const double c = norm(ball.center, ball.dim);
        const double dmin = std::max(0.0, c - ball.radius);
        const double dmax = c + ball.radius;
        if (beta <= 0.0) return std::pow(dmax, beta);
        return dmin == 0.0 ? 0.0 : std::pow(dmin, beta);
    }
    case Weight::Form::Sampled:
        return sampled_extreme(w, ball, kInf, [](double a, double b) { return std::min(a, b); });
    }
    return 0.0;
}

double cell_average(const Weight& w, const Grid& grid, std::size_t index) {
    switch (w.form()) {
    case Weight::Form::Constant:
        return w.constant_value();
    case Weight::Form::Power: {
        if (grid.dim() == 2) return w(grid.cell_center(index), 2);
        const double h = grid.spacing(0);
        const double c = grid.cell_center(index)[0];
        return power_interval_integral(c - h / 2.0, c + h / 2.0, w.beta()) / h;
    }
    case Weight::Form::Sampled:
        return w.samples().values[index];
    }
    return 0.0;
}

double conjugate_exponent(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("conjugate_exponent: p must be >= 1");
    if (p == 1.0) return kInf;
    if (is_inf(p)) return 1.0;
    return p / (p - 1.0);
}

double q_from(double p, double alpha, int n) {
    const double inv = 1.0 / p - alpha / n;
    if (inv < -1e-14) throw std::invalid_argument("q_from: requires 1/p >= alpha/n");
    if (inv <= 1e-14) return kInf;
    return 1.0 / inv;
}

ExponentRecord exponent_identities(double p, double q, double alpha, int n, double s) {
    if (!(alpha > 0.0) || !(alpha < n)) throw std::invalid_argument("exponents: alpha must lie in (0, n)");
    if (!(p >= 1.0)) throw std::invalid_argument("exponents: p must be >= 1");
    const double invq = is_inf(q) ? 0.0 : 1.0 / q;
    if (std::abs(invq - (1.0 / p - alpha / n)) > 1e-12) {
        throw std::invalid_argument("exponents: inconsistent (p, q, alpha, n): 1/q must equal 1/p - alpha/n");
    }
    ExponentRecord r;
    r.p = p;
    r.q = q;
    r.p_prime = conjugate_exponent(p);
    r.q_prime = conjugate_exponent(q);
    r.s_prime = conjugate_exponent(s);
    if (p < r.s_prime - 1e-14) throw std::invalid_argument("exponents: requires p >= s'");
    r.kappa = is_inf(q) ? 0.0 : p / q;

    // 1/p' + 1/q = 1 - alpha/n
    const double lhs1 = (is_inf(r.p_prime) ? 0.0 : 1.0 / r.p_prime) + invq;
    if (std::abs(lhs1 - (1.0 - alpha / n)) > 1e-12) {
        throw std::invalid_argument("exponents: identity 1/p' + 1/q = 1 - alpha/n failed");
    }

    // s'(p/s')' = p s' / (p - s')
    if (std::abs(p - r.s_prime) <= 1e-14) {
        r.chain = kInf;
    } else {
        r.chain = r.s_prime * conjugate_exponent(p / r.s_prime);
        const double direct = p * r.s_prime / (p - r.s_prime);
        if (std::abs(r.chain - direct) > 1e-12 * std::max(1.0, direct)) {
            throw std::invalid_argument("exponents: identity s'(p/s')' = ps'/(p - s') failed");
        }
    }
    return r;
}

namespace {

double clamp_bracket(double v) {
    if (!std::isfinite(v) || v >= kBracketGuard) return kBracketGuard;
    return v;
}

double apq_bracket(const Weight& w, double p, double q, const Ball& ball, const Grid& grid) {
    (void)grid;
    const double vol = ball.volume();
    if (p == 1.0) {
        // (avg w^q)^{1/q} * ess sup 1/w
        const double avg = ball_integral(w.pow(q), ball) / vol;
        const double inf_w = ess_inf(w, ball, grid);
        if (inf_w == 0.0) return kInf;
        return std::pow(avg, 1.0 / q) / inf_w;
    }
    const double pp = conjugate_exponent(p);
    if (is_inf(q)) {
        const double avg = ball_integral(w.pow(-pp), ball) / vol;
        return ess_sup(w, ball, grid) * std::pow(avg, 1.0 / pp);
    }
    const double avg_q = ball_integral(w.pow(q), ball) / vol;
    const double avg_pp = ball_integral(w.pow(-pp), ball) / vol;
    return std::pow(avg_q, 1.0 / q) * std::pow(avg_pp, 1.0 / pp);
}

double family_sup(const Weight& w, double p, double q, const BallFamily& family, const Grid& grid,
                  std::vector<ApqBracket>* record) {
    double sup = 0.0;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const Ball b = family.ball(k);
        double v;
        try {
            v = clamp_bracket(apq_bracket(w, p, q, b, grid));
        } catch (const std::invalid_argument&) {
            continue; // sampled weight, ball misses every cell
        }
        if (record) record->push_back({b, v});
        sup = std::max(sup, v);
    }
    return sup;
}

} // namespace

ApqReport apq_constant(const Weight& w, double p, double q, const BallFamily& family,
                       const Grid& grid) {
    const bool a1q = p == 1.0 && q > 1.0 && !is_inf(q);
    const bool apinf = is_inf(q) && p > 1.0 && !is_inf(p);
    const bool generic = p > 1.0 && !is_inf(p) && q > p && !is_inf(q);
    if (!a1q && !apinf && !generic) {
        throw std::invalid_argument("apq_constant: (p, q) must be one of 1<p<q<inf, (1, q), (p, inf)");
    }
    if (family.size() == 0) throw std::invalid_argument("apq_constant: empty ball family");

    ApqReport rep;
    rep.p = p;
    rep.q = q;
    rep.constant = family_sup(w, p, q, family, grid, &rep.brackets);

    // Widened radius ladder as a stability probe: a genuine A(p,q) weight
    // keeps the sup bounded; failures keep growing.
    BallFamily wide = family;
    wide.radii.clear();
    const double growth = family.radii.size() > 1 ? family.radii[1] / family.radii[0] : 2.0;
    for (double r = family.radii.front() / 16.0; r <= family.radii.back() * 16.0 * (1 + 1e-12);
         r *= growth) {
        wide.radii.push_back(r);
    }
    rep.extended_constant = family_sup(w, p, q, wide, grid, nullptr);

    rep.divergence_flag = rep.constant >= kBracketGuard ||
                          rep.extended_constant >= kBracketGuard ||
                          rep.extended_constant > 10.0 * rep.constant;
    return rep;
}

} // namespace morreylab
