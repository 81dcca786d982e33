#include "morreylab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace morreylab {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Point box_center(const Box& box) {
    Point c{};
    for (int a = 0; a < box.dim; ++a) c[a] = 0.5 * (box.lo[a] + box.hi[a]);
    return c;
}

double base_profile(const TestFamily& fam, double r) {
    switch (fam.base) {
    case TestFamily::Base::Gaussian:
        return r > fam.truncation * fam.sigma ? 0.0
                                              : std::exp(-r * r / (2.0 * fam.sigma * fam.sigma));
    case TestFamily::Base::IndicatorBall:
        return r < fam.halfwidth ? 1.0 : 0.0;
    case TestFamily::Base::Tent:
        return std::max(0.0, 1.0 - r / fam.halfwidth);
    }
    return 0.0;
}

double support_radius(const TestFamily& fam) {
    return fam.base == TestFamily::Base::Gaussian ? fam.truncation * fam.sigma : fam.halfwidth;
}

std::vector<double> dyadic_radii(double lo, double hi) {
    std::vector<double> out;
    for (double r = lo; r <= hi * (1 + 1e-12); r *= 2.0) out.push_back(r);
    return out;
}

// Shared sweep for weight-class prechecks: radii 2^-6 .. 2^6, strided
// centers plus the origin cell.
ApqReport membership_scan(const Weight& w, double p, double q, const Grid& grid) {
    const BallFamily sweep =
        ball_family(grid, 1.0 / 64, 64.0, 2.0, std::max(1, grid.resolution() / 8), true);
    return apq_constant(w, p, q, sweep, grid);
}

void finish_ladder_report(RatioReport& rep) {
    double rmin = kInf, rmax = 0.0;
    std::vector<double> lx, ly;
    for (const StudySample& s : rep.samples) {
        if (s.skipped) continue;
        rmin = std::min(rmin, s.ratio);
        rmax = std::max(rmax, s.ratio);
        if (s.lambda > 0.0 && s.ratio > 0.0) {
            lx.push_back(std::log(s.lambda));
            ly.push_back(std::log(s.ratio));
        }
    }
    rep.spread = (rmin > 0.0 && rmax > 0.0 && rmin < kInf) ? rmax / rmin : kInf;

    rep.slope = 0.0;
    if (lx.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= lx.size();
        my /= lx.size();
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        if (sxx > 0.0) rep.slope = sxy / sxx;
    }
    rep.pass = rep.spread <= rep.spread_tol && std::abs(rep.slope) <= rep.slope_tol;
}

struct StudyContext {
    Grid grid;
    BallFamily balls;
    ExponentRecord exps;
    double apq_constant_value = 0.0;
};

StudyContext prepare_morrey_study(const StudyConfig& cfg, const char* who) {
    StudyContext ctx;
    ctx.grid = make_grid(cfg.box, cfg.resolution);
    const double q = q_from(cfg.p, cfg.alpha, cfg.n);
    ctx.exps = exponent_identities(cfg.p, q, cfg.alpha, cfg.n, cfg.s);
    const double sp = ctx.exps.s_prime;
    const Weight ws = cfg.weight.pow(sp);
    const ApqReport scan = membership_scan(ws, cfg.p / sp, q / sp, ctx.grid);
    if (scan.divergence_flag) {
        throw std::invalid_argument(std::string(who) +
                                    ": weight fails the A(p/s', q/s') membership scan");
    }
    ctx.apq_constant_value = scan.constant;
    ctx.balls = ball_family(ctx.grid, cfg.ball_rmin, cfg.ball_rmax, cfg.ball_growth,
                            cfg.ball_stride, true);
    return ctx;
}

void push_common_params(RatioReport& rep, const StudyConfig& cfg, double q, double kappa) {
    rep.params.emplace_back("n", fmt(cfg.n));
    rep.params.emplace_back("alpha", fmt(cfg.alpha));
    rep.params.emplace_back("p", fmt(cfg.p));
    if (!is_inf(q)) rep.params.emplace_back("q", fmt(q));
    rep.params.emplace_back("kappa", fmt(kappa));
    rep.params.emplace_back("s", is_inf(cfg.s) ? "inf" : fmt(cfg.s));
    rep.params.emplace_back("resolution", fmt(cfg.resolution));
    rep.params.emplace_back("spread_tol", fmt(cfg.spread_tol));
    rep.params.emplace_back("slope_tol", fmt(cfg.slope_tol));
}

} // namespace

std::size_t TestFamily::size() const {
    switch (ladder) {
    case Ladder::Single:
        return 1;
    case Ladder::Dilation:
        return lambdas.size();
    case Ladder::Translation:
        return shifts.size();
    }
    return 0;
}

double TestFamily::parameter(std::size_t k) const {
    switch (ladder) {
    case Ladder::Single:
        return 1.0;
    case Ladder::Dilation:
        return lambdas.at(k);
    case Ladder::Translation:
        return shifts.at(k);
    }
    return 1.0;
}

SampledFunction make_test_function(const Grid& grid, const TestFamily& family, std::size_t k) {
    const Point c = box_center(grid.box());
    double scale = 1.0;
    Point shift{};
    if (family.ladder == TestFamily::Ladder::Dilation) {
        scale = family.lambdas.at(k);
    } else if (family.ladder == TestFamily::Ladder::Translation) {
        shift[0] = family.shifts.at(k);
    }

    const double reach = support_radius(family) / scale;
    for (int a = 0; a < grid.dim(); ++a) {
        const double room = grid.box().width(a) / 2.0 - std::abs(shift[a]);
        if (reach > room) {
            throw std::invalid_argument("test family: support leaves the grid box");
        }
    }
    return sample(grid, [&](const Point& x) {
        Point y{};
        for (int a = 0; a < grid.dim(); ++a) y[a] = scale * (x[a] - c[a] - shift[a]);
        return base_profile(family, norm(y, grid.dim()));
    });
}

RatioReport verify_theorem2(const StudyConfig& cfg) {
    StudyContext ctx = prepare_morrey_study(cfg, "theorem2");
    const double q = ctx.exps.q;
    const Weight mu = cfg.weight.pow(cfg.p);
    const Weight nu = cfg.weight.pow(q);

    RatioReport rep;
    rep.experiment = cfg.use_riesz ? "theorem2-riesz" : "theorem2";
    rep.spread_tol = cfg.spread_tol;
    rep.slope_tol = cfg.slope_tol;
    push_common_params(rep, cfg, q, ctx.exps.kappa);
    rep.params.emplace_back("apq_scan_constant", fmt(ctx.apq_constant_value));

    for (std::size_t k = 0; k < cfg.family.size(); ++k) {
        StudySample smp;
        smp.id = static_cast<int>(k);
        smp.lambda = cfg.family.parameter(k);
        const SampledFunction f = make_test_function(ctx.grid, cfg.family, k);
        smp.denominator = morrey_norm(f, cfg.p, ctx.exps.kappa, mu, nu, ctx.balls);
        if (smp.denominator < cfg.skip_threshold) {
            smp.skipped = true;
            rep.note += "sample " + std::to_string(smp.id) + " skipped (denominator ~ 0); ";
        } else {
            const SampledFunction u =
                cfg.use_riesz ? riesz_potential(f, cfg.alpha)
                              : homogeneous_fractional_integral(f, cfg.kernel, cfg.alpha);
            smp.numerator = bmo_seminorm(u, ctx.balls);
            smp.ratio = smp.numerator / smp.denominator;
        }
        rep.samples.push_back(smp);
    }
    finish_ladder_report(rep);
    return rep;
}

RatioReport verify_theorem1(const StudyConfig& cfg) {
    if (std::abs(cfg.p - cfg.n / cfg.alpha) > 1e-9) {
        throw std::invalid_argument("theorem1: requires p = n/alpha");
    }
    if (!is_inf(cfg.s) && !(cfg.s > cfg.n / (cfg.n - cfg.alpha))) {
        throw std::invalid_argument("theorem1: requires s > n/(n - alpha)");
    }
    const Grid grid = make_grid(cfg.box, cfg.resolution);
    const double sp = conjugate_exponent(cfg.s);
    const ApqReport scan = membership_scan(cfg.weight.pow(sp), cfg.p / sp, kInf, grid);
    if (scan.divergence_flag) {
        throw std::invalid_argument("theorem1: weight fails the A(p/s', inf) membership scan");
    }
    const BallFamily balls =
        ball_family(grid, cfg.ball_rmin, cfg.ball_rmax, cfg.ball_growth, cfg.ball_stride, true);
    const std::vector<double> radii =
        cfg.maximal_radii.empty() ? dyadic_radii(1.0 / 256, 4.0) : cfg.maximal_radii;
    const Weight wp = cfg.weight.pow(cfg.p);

    RatioReport rep;
    rep.experiment = "theorem1";
    rep.spread_tol = cfg.spread_tol;
    rep.slope_tol = cfg.slope_tol;
    push_common_params(rep, cfg, kInf, 0.0);
    rep.params.emplace_back("apq_scan_constant", fmt(scan.constant));

    for (std::size_t k = 0; k < cfg.family.size(); ++k) {
        StudySample smp;
        smp.id = static_cast<int>(k);
        smp.lambda = cfg.family.parameter(k);
        const SampledFunction f = make_test_function(grid, cfg.family, k);
        smp.denominator = lp_norm(f, cfg.p, wp);
        if (smp.denominator < cfg.skip_threshold) {
            smp.skipped = true;
            rep.note += "sample " + std::to_string(smp.id) + " skipped (denominator ~ 0); ";
        } else {
            const SampledFunction m = maximal_function(f, cfg.kernel, cfg.alpha, radii);
            smp.numerator = weighted_linf_norm(m, cfg.weight, balls);
            smp.ratio = smp.numerator / smp.denominator;
        }
        rep.samples.push_back(smp);
    }
    finish_ladder_report(rep);
    return rep;
}

RatioReport verify_theorem3(const StudyConfig& cfg) {
    StudyContext ctx = prepare_morrey_study(cfg, "theorem3");
    const double q = ctx.exps.q;
    const Weight mu = cfg.weight.pow(cfg.p);
    const Weight nu = cfg.weight.pow(q);
    const std::vector<double> radii =
        cfg.maximal_radii.empty() ? dyadic_radii(1.0 / 256, 4.0) : cfg.maximal_radii;

    RatioReport rep;
    rep.experiment = "theorem3";
    rep.spread_tol = cfg.spread_tol;
    rep.slope_tol = cfg.slope_tol;
    push_common_params(rep, cfg, q, ctx.exps.kappa);
    rep.params.emplace_back("apq_scan_constant", fmt(ctx.apq_constant_value));

    for (std::size_t k = 0; k < cfg.family.size(); ++k) {
        StudySample smp;
        smp.id = static_cast<int>(k);
        smp.lambda = cfg.family.parameter(k);
        const SampledFunction f = make_test_function(ctx.grid, cfg.family, k);
        smp.denominator = morrey_norm(f, cfg.p, ctx.exps.kappa, mu, nu, ctx.balls);
        if (smp.denominator < cfg.skip_threshold) {
            smp.skipped = true;
            rep.note += "sample " + std::to_string(smp.id) + " skipped (denominator ~ 0); ";
        } else {
            const SampledFunction m = maximal_function(f, cfg.kernel, cfg.alpha, radii);
            smp.numerator = *std::max_element(m.values.begin(), m.values.end());
            smp.ratio = smp.numerator / smp.denominator;
        }
        rep.samples.push_back(smp);
    }
    finish_ladder_report(rep);
    return rep;
}

RatioReport unboundedness_probe(int n, double alpha, const std::vector<double>& cutoffs,
                                int resolution) {
    if (!(alpha > 0.0) || !(alpha < n)) throw std::invalid_argument("probe: alpha must lie in (0, n)");
    for (double eps : cutoffs) {
        if (!(eps > 0.0) || !(eps < 0.5)) {
            throw std::invalid_argument("probe: cutoffs must lie in (0, 1/2)");
        }
    }
    if (cutoffs.size() < 2) throw std::invalid_argument("probe: need at least two cutoffs");

    Box box{{-1.0, -1.0}, {1.0, 1.0}, n};
    const Grid grid = make_grid(box, resolution);
    const double p = static_cast<double>(n) / alpha;
    const Weight lebesgue = Weight::constant(1.0);
    const Point origin{};

    RatioReport rep;
    rep.experiment = "unboundedness";
    rep.params.emplace_back("n", fmt(n));
    rep.params.emplace_back("alpha", fmt(alpha));
    rep.params.emplace_back("p", fmt(p));
    rep.params.emplace_back("resolution", fmt(resolution));

    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        const double eps = cutoffs[k];
        const SampledFunction f = sample(grid, [&](const Point& x) {
            const double r = norm(x, n);
            if (r <= eps || r >= 0.5) return 0.0;
            return std::pow(r, -alpha) / std::log(1.0 / r);
        });
        StudySample smp;
        smp.id = static_cast<int>(k);
        smp.lambda = eps;
        smp.numerator = riesz_potential_at(f, alpha, origin);
        smp.denominator = lp_norm(f, p, lebesgue);
        smp.ratio = smp.numerator / smp.denominator;
        smp.extra = std::pow(smp.denominator, p);
        rep.samples.push_back(smp);
    }

    bool monotone = true;
    bool halving = true;
    for (std::size_t k = 0; k + 1 < rep.samples.size(); ++k) {
        if (!(rep.samples[k + 1].ratio > rep.samples[k].ratio)) monotone = false;
    }
    for (std::size_t k = 0; k + 2 < rep.samples.size(); ++k) {
        const double d0 = rep.samples[k + 1].extra - rep.samples[k].extra;
        const double d1 = rep.samples[k + 2].extra - rep.samples[k + 1].extra;
        if (!(d0 > 0.0) || !(d1 > 0.0) || !(d1 <= 0.5 * d0)) halving = false;
    }
    double rmin = rep.samples.front().ratio, rmax = rmin;
    for (const StudySample& s : rep.samples) {
        rmin = std::min(rmin, s.ratio);
        rmax = std::max(rmax, s.ratio);
    }
    rep.spread = rmin > 0.0 ? rmax / rmin : kInf;
    rep.spread_tol = kInf;
    rep.slope_tol = kInf;
    rep.pass = monotone && halving;
    rep.note = std::string("ratio monotone: ") + (monotone ? "yes" : "no") +
               "; norm^p increments halving: " + (halving ? "yes" : "no");
    return rep;
}

RatioReport semigroup_study(double beta, double gamma, const Box& box, int resolution,
                            double sigma, int pad_factor, double tolerance) {
    const Grid grid = make_grid(box, resolution);
    TestFamily fam;
    fam.base = TestFamily::Base::Gaussian;
    fam.ladder = TestFamily::Ladder::Single;
    fam.sigma = sigma;
    const SampledFunction f = make_test_function(grid, fam, 0);
    const SemigroupReport sg = semigroup_check(beta, gamma, f, pad_factor);

    RatioReport rep;
    rep.experiment = "semigroup";
    rep.params.emplace_back("beta", fmt(beta));
    rep.params.emplace_back("gamma", fmt(gamma));
    rep.params.emplace_back("sigma", fmt(sigma));
    rep.params.emplace_back("resolution", fmt(resolution));
    rep.params.emplace_back("pad_factor", fmt(pad_factor));
    rep.params.emplace_back("tolerance", fmt(tolerance));
    StudySample smp;
    smp.id = 0;
    smp.lambda = 1.0;
    smp.numerator = sg.discrepancy;
    smp.denominator = sg.reference;
    smp.ratio = sg.ratio;
    rep.samples.push_back(smp);
    rep.spread = 1.0;
    rep.spread_tol = kInf;
    rep.slope_tol = kInf;
    rep.pass = sg.ratio <= tolerance;
    rep.note = "sup discrepancy ratio vs tolerance " + fmt(tolerance);
    return rep;
}

} // namespace morreylab
