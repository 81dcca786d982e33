#include "morreylab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace morreylab::config {

namespace {

std::string csv_number(double v) {
    char buf[40];
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const json& require(const json& j, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError("config: missing key '" + key + "'");
    return *it;
}

double require_number(const json& j, const std::string& key) {
    const json& v = require(j, key);
    if (!v.is_number()) throw ParseError("config: key '" + key + "' must be a number");
    return v.get<double>();
}

} // namespace

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("config: cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("config: JSON parse failure in '" + path + "': " + e.what());
    }
}

double parse_exponent(const json& j, const std::string& key) {
    const json& v = require(j, key);
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return kInf;
        throw ParseError("config: key '" + key + "' must be a number or \"inf\"");
    }
    if (!v.is_number()) throw ParseError("config: key '" + key + "' must be a number or \"inf\"");
    return v.get<double>();
}

Grid parse_grid(const json& j) {
    const json& box = require(j, "box");
    const json& lo = require(box, "lo");
    const json& hi = require(box, "hi");
    if (!lo.is_array() || !hi.is_array() || lo.size() != hi.size() || lo.empty() || lo.size() > 2) {
        throw ParseError("config: box lo/hi must be arrays of length 1 or 2");
    }
    Box b;
    b.dim = static_cast<int>(lo.size());
    for (int a = 0; a < b.dim; ++a) {
        b.lo[a] = lo[a].get<double>();
        b.hi[a] = hi[a].get<double>();
    }
    const int res = static_cast<int>(require_number(j, "resolution"));
    return make_grid(b, res);
}

HomogeneousKernel parse_kernel(const json& j) {
    const std::string form = require(j, "form").get<std::string>();
    if (form == "constant") {
        const int n = j.contains("n") ? j["n"].get<int>() : 1;
        return HomogeneousKernel::constant(n, j.value("value", 1.0));
    }
    if (form == "two-values") {
        return HomogeneousKernel::two_values(require_number(j, "a"), require_number(j, "b"));
    }
    if (form == "cos-harmonic") {
        return HomogeneousKernel::cos_harmonic(static_cast<int>(require_number(j, "k")));
    }
    if (form == "sin-harmonic") {
        return HomogeneousKernel::sin_harmonic(static_cast<int>(require_number(j, "k")));
    }
    if (form == "tabulated") {
        const json& th = require(j, "theta");
        const json& vals = require(j, "values");
        if (!th.is_array() || !vals.is_array()) {
            throw ParseError("config: tabulated kernel needs 'theta' and 'values' arrays");
        }
        return HomogeneousKernel::tabulated(th.get<std::vector<double>>(),
                                            vals.get<std::vector<double>>());
    }
    throw ParseError("config: unknown kernel form '" + form + "'");
}

Weight parse_weight(const json& j) {
    const std::string form = require(j, "form").get<std::string>();
    if (form == "constant") return Weight::constant(j.value("c", 1.0));
    if (form == "power") return Weight::power(require_number(j, "beta"));
    throw ParseError("config: unknown weight form '" + form + "' (sampled weights are API-only)");
}

BallFamily parse_ball_family(const json& j, const Grid& grid) {
    return ball_family(grid, require_number(j, "r_min"), require_number(j, "r_max"),
                       j.value("growth", 2.0), static_cast<int>(j.value("center_stride", 1.0)),
                       j.value("include_box_center", true));
}

TestFamily parse_test_family(const json& j) {
    TestFamily fam;
    const std::string base = j.value("base", std::string("gaussian"));
    if (base == "gaussian") {
        fam.base = TestFamily::Base::Gaussian;
    } else if (base == "indicator-ball") {
        fam.base = TestFamily::Base::IndicatorBall;
    } else if (base == "tent") {
        fam.base = TestFamily::Base::Tent;
    } else {
        throw ParseError("config: unknown test family base '" + base + "'");
    }
    const std::string ladder = j.value("ladder", std::string("dilation"));
    if (ladder == "single") {
        fam.ladder = TestFamily::Ladder::Single;
    } else if (ladder == "dilation") {
        fam.ladder = TestFamily::Ladder::Dilation;
    } else if (ladder == "translation") {
        fam.ladder = TestFamily::Ladder::Translation;
    } else {
        throw ParseError("config: unknown ladder kind '" + ladder + "'");
    }
    fam.sigma = j.value("sigma", fam.sigma);
    fam.halfwidth = j.value("halfwidth", fam.halfwidth);
    fam.truncation = j.value("truncation", fam.truncation);
    if (j.contains("lambdas")) fam.lambdas = j["lambdas"].get<std::vector<double>>();
    if (j.contains("shifts")) fam.shifts = j["shifts"].get<std::vector<double>>();
    return fam;
}

SampledFunction parse_function(const json& j, const Grid& grid) {
    const std::string type = require(j, "type").get<std::string>();
    Point c{};
    if (j.contains("center")) {
        const auto cv = j["center"].get<std::vector<double>>();
        for (std::size_t a = 0; a < cv.size() && a < 2; ++a) c[a] = cv[a];
    }
    const double amp = j.value("amplitude", 1.0);
    if (type == "gaussian") {
        const double sigma = require_number(j, "sigma");
        const double trunc = j.value("truncation", 6.0);
        return sample(grid, [&](const Point& x) {
            const double r = distance(x, c, grid.dim());
            return r > trunc * sigma ? 0.0 : amp * std::exp(-r * r / (2.0 * sigma * sigma));
        });
    }
    if (type == "indicator-ball") {
        const double radius = require_number(j, "radius");
        return sample(grid, [&](const Point& x) {
            return distance(x, c, grid.dim()) < radius ? amp : 0.0;
        });
    }
    if (type == "tent") {
        const double radius = require_number(j, "radius");
        return sample(grid, [&](const Point& x) {
            return amp * std::max(0.0, 1.0 - distance(x, c, grid.dim()) / radius);
        });
    }
    throw ParseError("config: unknown function type '" + type + "'");
}

json number_or_string(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json report_to_json(const RatioReport& rep) {
    json j;
    j["experiment"] = rep.experiment;
    json params = json::object();
    for (const auto& [k, v] : rep.params) params[k] = v;
    j["params"] = params;
    json samples = json::array();
    for (const StudySample& s : rep.samples) {
        json row;
        row["sample_id"] = s.id;
        row["lambda"] = number_or_string(s.lambda);
        row["numerator"] = number_or_string(s.numerator);
        row["denominator"] = number_or_string(s.denominator);
        row["ratio"] = s.skipped ? json("skipped") : number_or_string(s.ratio);
        if (s.extra != 0.0) row["extra"] = number_or_string(s.extra);
        samples.push_back(row);
    }
    j["samples"] = samples;
    j["spread"] = number_or_string(rep.spread);
    j["slope"] = number_or_string(rep.slope);
    j["spread_tol"] = number_or_string(rep.spread_tol);
    j["slope_tol"] = number_or_string(rep.slope_tol);
    j["pass"] = rep.pass;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

std::string report_to_csv(const RatioReport& rep) {
    std::string out = "sample_id,lambda,numerator,denominator,ratio\n";
    for (const StudySample& s : rep.samples) {
        out += std::to_string(s.id);
        out += ',';
        out += csv_number(s.lambda);
        out += ',';
        out += csv_number(s.numerator);
        out += ',';
        out += csv_number(s.denominator);
        out += ',';
        out += s.skipped ? "nan" : csv_number(s.ratio);
        out += '\n';
    }
    return out;
}

} // namespace morreylab::config
