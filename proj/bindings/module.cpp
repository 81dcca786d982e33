#include <pybind11/pybind11.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "morreylab/experiments.hpp"
#include "morreylab/geometry.hpp"
#include "morreylab/kernels.hpp"
#include "morreylab/operators.hpp"
#include "morreylab/parallel.hpp"
#include "morreylab/spaces.hpp"
#include "morreylab/weights.hpp"

namespace py = pybind11;
using namespace morreylab;

namespace {

Point to_point(const std::vector<double>& v) {
    Point p{};
    for (std::size_t a = 0; a < v.size() && a < 2; ++a) p[a] = v[a];
    return p;
}

py::array_t<double> values_array(const SampledFunction& f) {
    const Grid& g = f.grid;
    if (g.dim() == 1) {
        return py::array_t<double>({static_cast<py::ssize_t>(f.values.size())}, f.values.data());
    }
    const py::ssize_t n = g.resolution();
    return py::array_t<double>({n, n}, f.values.data());
}

SampledFunction from_array(const Grid& g, py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    if (static_cast<std::size_t>(arr.size()) != g.cell_count()) {
        throw std::invalid_argument("values array size does not match the grid");
    }
    SampledFunction f;
    f.grid = g;
    f.values.assign(arr.data(), arr.data() + arr.size());
    return f;
}

py::dict report_dict(const RatioReport& rep) {
    py::dict d;
    d["experiment"] = rep.experiment;
    py::dict params;
    for (const auto& [k, v] : rep.params) params[py::str(k)] = v;
    d["params"] = params;
    py::list samples;
    for (const StudySample& s : rep.samples) {
        py::dict row;
        row["sample_id"] = s.id;
        row["lambda"] = s.lambda;
        row["numerator"] = s.numerator;
        row["denominator"] = s.denominator;
        row["ratio"] = s.ratio;
        row["skipped"] = s.skipped;
        if (s.extra != 0.0) row["extra"] = s.extra;
        samples.append(row);
    }
    d["samples"] = samples;
    d["spread"] = rep.spread;
    d["slope"] = rep.slope;
    d["pass"] = rep.pass;
    d["note"] = rep.note;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fractional integral operators, Muckenhoupt-Wheeden weights, and "
              "Morrey/BMO norm functionals on grids";

    py::class_<Grid>(m, "Grid")
        .def(py::init([](std::vector<double> lo, std::vector<double> hi, int resolution) {
                 Box b;
                 b.dim = static_cast<int>(lo.size());
                 b.lo = to_point(lo);
                 b.hi = to_point(hi);
                 return make_grid(b, resolution);
             }),
             py::arg("lo"), py::arg("hi"), py::arg("resolution"))
        .def_property_readonly("dim", &Grid::dim)
        .def_property_readonly("resolution", &Grid::resolution)
        .def_property_readonly("cell_volume", &Grid::cell_volume)
        .def("centers", [](const Grid& g) {
            std::vector<double> buf(g.cell_count() * g.dim());
            for (std::size_t i = 0; i < g.cell_count(); ++i) {
                const Point p = g.cell_center(i);
                for (int a = 0; a < g.dim(); ++a) buf[i * g.dim() + a] = p[a];
            }
            return py::array_t<double>({static_cast<py::ssize_t>(g.cell_count()),
                                        static_cast<py::ssize_t>(g.dim())},
                                       buf.data());
        });

    py::class_<SampledFunction>(m, "SampledFunction")
        .def(py::init(&from_array), py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", [](const SampledFunction& f) { return f.grid; })
        .def_property_readonly("values", &values_array);

    py::class_<Ball>(m, "Ball")
        .def(py::init([](std::vector<double> center, double radius) {
                 return Ball{to_point(center), radius, static_cast<int>(center.size())};
             }),
             py::arg("center"), py::arg("radius"))
        .def_property_readonly("radius", [](const Ball& b) { return b.radius; })
        .def_property_readonly("center", [](const Ball& b) {
            return std::vector<double>(b.center.begin(), b.center.begin() + b.dim);
        });

    py::class_<BallFamily>(m, "BallFamily")
        .def("__len__", &BallFamily::size)
        .def("ball", &BallFamily::ball);
    m.def("ball_family", &ball_family, py::arg("grid"), py::arg("r_min"), py::arg("r_max"),
          py::arg("growth") = 2.0, py::arg("center_stride") = 1,
          py::arg("include_box_center") = true);

    m.def("sample", [](const Grid& g, const std::function<double(std::vector<double>)>& fn) {
        return sample(g, [&](const Point& p) {
            return fn(std::vector<double>(p.begin(), p.begin() + g.dim()));
        });
    });
    m.def("integrate",
          [](const SampledFunction& f, const Ball& b) { return integrate(f, b); });
    m.def("integrate", [](const SampledFunction& f) { return integrate(f); });

    py::class_<HomogeneousKernel>(m, "HomogeneousKernel")
        .def_static("constant", &HomogeneousKernel::constant, py::arg("dim"), py::arg("c"))
        .def_static("two_values", &HomogeneousKernel::two_values, py::arg("positive"),
                    py::arg("negative"))
        .def_static("cos_harmonic", &HomogeneousKernel::cos_harmonic, py::arg("k"))
        .def_static("sin_harmonic", &HomogeneousKernel::sin_harmonic, py::arg("k"))
        .def_static("tabulated", &HomogeneousKernel::tabulated, py::arg("theta"), py::arg("values"))
        .def("__call__",
             [](const HomogeneousKernel& k, std::vector<double> x) { return k(to_point(x)); });

    m.def("kernel_eval",
          [](const HomogeneousKernel& k, std::vector<double> x) { return k(to_point(x)); });
    m.def("sphere_norm", &sphere_norm, py::arg("kernel"), py::arg("s"));
    m.def("modulus_of_continuity", &modulus_of_continuity, py::arg("kernel"), py::arg("s"),
          py::arg("delta"));
    m.def("dini_integral", [](const HomogeneousKernel& k, double s, double delta_min) {
        const DiniResult r = dini_integral(k, s, delta_min);
        py::dict d;
        d["value"] = r.value;
        d["last_decade_increment"] = r.last_decade_increment;
        return d;
    });
    m.def("lemma_difference_lhs",
          [](const HomogeneousKernel& k, double alpha, double s, double R, std::vector<double> x) {
              return lemma_difference_lhs(k, alpha, s, R, to_point(x));
          });
    m.def("lemma_difference_rhs",
          [](const HomogeneousKernel& k, double alpha, double s, double R, std::vector<double> x) {
              const ModulusProfile prof(k, s);
              return lemma_difference_rhs(prof, alpha, s, R, to_point(x), k.dim());
          });

    py::class_<Weight>(m, "Weight")
        .def_static("constant", &Weight::constant, py::arg("c"))
        .def_static("power", &Weight::power, py::arg("beta"))
        .def("pow", &Weight::pow)
        .def("__call__", [](const Weight& w, std::vector<double> x) {
            return w(to_point(x), static_cast<int>(x.size()));
        });

    m.def("w_measure", &w_measure, py::arg("w"), py::arg("ball"), py::arg("grid"));
    m.def("conjugate_exponent", &conjugate_exponent, py::arg("p"));
    m.def("q_from", &q_from, py::arg("p"), py::arg("alpha"), py::arg("n"));
    m.def("exponent_identities", [](double p, double q, double alpha, int n, double s) {
        const ExponentRecord r = exponent_identities(p, q, alpha, n, s);
        py::dict d;
        d["p_prime"] = r.p_prime;
        d["q_prime"] = r.q_prime;
        d["kappa"] = r.kappa;
        d["s_prime"] = r.s_prime;
        d["chain"] = r.chain;
        return d;
    });
    m.def("apq_constant", [](const Weight& w, double p, double q, const BallFamily& fam,
                             const Grid& grid) {
        const ApqReport r = apq_constant(w, p, q, fam, grid);
        py::dict d;
        d["constant"] = r.constant;
        d["extended_constant"] = r.extended_constant;
        d["divergence_flag"] = r.divergence_flag;
        return d;
    });

    m.def("gamma_alpha", &gamma_alpha, py::arg("alpha"), py::arg("n"));
    m.def("riesz_potential", &riesz_potential, py::arg("f"), py::arg("alpha"));
    m.def("riesz_potential_at", [](const SampledFunction& f, double alpha, std::vector<double> x) {
        return riesz_potential_at(f, alpha, to_point(x));
    });
    m.def("riesz_fourier_oracle", &riesz_fourier_oracle, py::arg("f"), py::arg("alpha"),
          py::arg("pad_factor") = 8);
    m.def("homogeneous_fractional_integral", &homogeneous_fractional_integral, py::arg("f"),
          py::arg("kernel"), py::arg("alpha"));
    m.def("fractional_maximal",
          [](const SampledFunction& f, double alpha, std::vector<double> x,
             std::vector<double> radii) { return fractional_maximal(f, alpha, to_point(x), radii); });
    m.def("homogeneous_fractional_maximal",
          [](const SampledFunction& f, const HomogeneousKernel& k, double alpha,
             std::vector<double> x, std::vector<double> radii) {
              return homogeneous_fractional_maximal(f, k, alpha, to_point(x), radii);
          });
    m.def("maximal_function", &maximal_function, py::arg("f"), py::arg("kernel"), py::arg("alpha"),
          py::arg("radii"));

    m.def("lp_norm", &lp_norm, py::arg("f"), py::arg("p"), py::arg("w"));
    m.def("weak_lp_norm", &weak_lp_norm, py::arg("f"), py::arg("p"), py::arg("w"));
    m.def("morrey_norm", &morrey_norm, py::arg("f"), py::arg("p"), py::arg("kappa"), py::arg("mu"),
          py::arg("nu"), py::arg("family"));
    m.def("bmo_seminorm", &bmo_seminorm, py::arg("h"), py::arg("family"));
    m.def("weighted_bmo_norm", &weighted_bmo_norm, py::arg("h"), py::arg("w"), py::arg("family"));
    m.def("weighted_linf_norm", &weighted_linf_norm, py::arg("h"), py::arg("w"), py::arg("family"));

    m.def("semigroup_check", [](double beta, double gamma, const SampledFunction& f, int pad) {
        const SemigroupReport r = semigroup_check(beta, gamma, f, pad);
        py::dict d;
        d["discrepancy"] = r.discrepancy;
        d["reference"] = r.reference;
        d["ratio"] = r.ratio;
        return d;
    }, py::arg("beta"), py::arg("gamma"), py::arg("f"), py::arg("pad_factor") = 8);

    m.def("unboundedness_probe",
          [](int n, double alpha, std::vector<double> cutoffs, int resolution) {
              return report_dict(unboundedness_probe(n, alpha, cutoffs, resolution));
          },
          py::arg("n"), py::arg("alpha"), py::arg("cutoffs"), py::arg("resolution") = 1 << 17);

    m.def("set_thread_count", &set_thread_count);
    m.attr("inf") = kInf;
}
