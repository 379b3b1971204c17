#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cleconn/bessel.hpp"
#include "cleconn/cli.hpp"
#include "cleconn/errors.hpp"
#include "cleconn/hookup.hpp"
#include "cleconn/lattice.hpp"
#include "cleconn/sle.hpp"
#include "cleconn/specialfn.hpp"

namespace py = pybind11;
using namespace cleconn;

namespace {

py::dict as_dict(const McEstimate& e) {
    py::dict d;
    d["mean"] = e.mean;
    d["std_error"] = e.std_error;
    d["n"] = e.n;
    d["seed"] = e.seed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "hook-up probabilities for conformal loop ensembles";
    m.attr("__version__") = kVersion;

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    // bad input surfaces as ValueError, the rest as Error
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ParameterError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ConfigurationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    py::class_<KappaContext>(m, "KappaContext")
        .def_readonly("kappa", &KappaContext::kappa)
        .def_readonly("theta", &KappaContext::theta)
        .def_readonly("eta", &KappaContext::eta)
        .def_readonly("alpha", &KappaContext::alpha)
        .def_readonly("bessel_dim", &KappaContext::bessel_dim)
        .def_readonly("boundary_exponent", &KappaContext::boundary_exponent)
        .def_property_readonly("regime", [](const KappaContext& c) { return regime_name(c.regime); });
    m.def("make_context", &make_context, py::arg("kappa"));

    m.def("hyp2f1", [](double a, double b, double c, double x) { return gauss_2f1({a, b, c}, x); },
          py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"));

    m.def("hookup", [](double kappa, double x) {
        const HookupEvaluation ev = hookup_probability(make_context(kappa), x);
        py::dict d;
        d["x"] = ev.x;
        d["z_x"] = ev.z_x;
        d["z_mirror"] = ev.z_mirror;
        d["h"] = ev.h;
        return d;
    }, py::arg("kappa"), py::arg("x"));
    m.def("aspect_to_cross", &aspect_to_cross, py::arg("aspect"));
    m.def("cross_to_aspect", &cross_to_aspect, py::arg("x"));
    m.def("relate", [](double kappa) {
        const ModelRelation r = relate_models(make_context(kappa));
        py::dict d;
        d["loop_weight"] = r.loop_weight;
        d["cluster_weight"] = r.cluster_weight ? py::object(py::float_(*r.cluster_weight)) : py::object(py::none());
        d["central_charge"] = r.central_charge;
        return d;
    }, py::arg("kappa"));
    m.def("cardy_hit_probability", [](double kappa, double eps) { return cardy_hit_probability(make_context(kappa), eps); },
          py::arg("kappa"), py::arg("eps"));
    m.def("interval_hit_probability",
          [](double kappa, double left, double right) { return interval_hit_probability(make_context(kappa), left, right); },
          py::arg("kappa"), py::arg("left"), py::arg("right"));
    m.def("localtime_expectation", [](double kappa) { return localtime_expectation(make_context(kappa)); }, py::arg("kappa"));
    m.def("avoid_probability", [](double kappa, double x) { return avoid_probability_Q(make_context(kappa), x); },
          py::arg("kappa"), py::arg("x"));

    m.def("sle_hit", [](double kappa, double eps, std::uint64_t samples, std::uint64_t seed, double dt) {
        SleHitConfig cfg;
        cfg.kappa = kappa;
        cfg.eps = eps;
        cfg.n_samples = samples;
        cfg.seed = seed;
        cfg.dt = dt;
        McEstimate est;
        {
            py::gil_scoped_release release;
            est = estimate_hit_probability(cfg);
        }
        py::dict d = as_dict(est);
        d["exact"] = exact_hit_probability(cfg);
        return d;
    }, py::arg("kappa"), py::arg("eps"), py::arg("samples"), py::arg("seed") = 1, py::arg("dt") = 1e-2);
    m.def("bessel_localtime", [](double kappa, std::uint64_t samples, std::uint64_t seed, double up_level) {
        LocalTimeConfig ltc;
        ltc.n_samples = samples;
        ltc.seed = seed;
        ltc.up_level = up_level;
        return estimate_localtime_expectation(make_context(kappa), ltc);
    }, py::arg("kappa"), py::arg("samples"), py::arg("seed") = 1, py::arg("up_level") = 1e-3,
       py::call_guard<py::gil_scoped_release>());
    m.def("excursion_ratio", [](double kappa, double y, std::uint64_t samples, std::uint64_t seed) {
        LocalTimeConfig ltc;
        ltc.n_samples = samples;
        ltc.seed = seed;
        return estimate_excursion_ratio(make_context(kappa), y, ltc);
    }, py::arg("kappa"), py::arg("y"), py::arg("samples"), py::arg("seed") = 1,
       py::call_guard<py::gil_scoped_release>());

    m.def("fk_crossing", [](int n, double q) {
        FkInstance inst;
        inst.n = n;
        inst.q = q;
        return fk_exact_crossing(inst).probability;
    }, py::arg("n"), py::arg("q"));
    m.def("fpl_hookup", [](int n, double loop_weight, bool dilute, double mu) {
        FplInstance inst;
        inst.n = n;
        inst.loop_weight = loop_weight;
        inst.tileset = dilute ? Tileset::Dilute : Tileset::FullyPacked;
        inst.mu = mu;
        return fpl_enumerate_hookup(inst).probability;
    }, py::arg("n"), py::arg("loop_weight"), py::arg("dilute") = false, py::arg("mu") = 1.0);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_error", &McEstimate::std_error)
        .def_readonly("n", &McEstimate::n)
        .def_readonly("seed", &McEstimate::seed)
        .def("__repr__", [](const McEstimate& e) {
            std::ostringstream s;
            s.precision(6);
            s << "McEstimate(mean=" << e.mean << ", std_error=" << e.std_error << ", n=" << e.n << ")";
            return s.str();
        });

    // same command line as the executable; returns (exit code, stdout, stderr)
    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));
}
