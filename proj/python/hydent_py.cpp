#include "hydent/asymptotics.hpp"
#include "hydent/entropic_exact.hpp"
#include "hydent/error.hpp"
#include "hydent/logspace.hpp"
#include "hydent/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hydent;

namespace {

QuadratureSpec spec_with(double tol) {
    QuadratureSpec s;
    s.rel_tol = tol;
    return s;
}

py::tuple signed_log(const SignedLogReal& v) { return py::make_tuple(v.sign(), v.logmag()); }

py::dict record_dict(const Record& r) {
    py::dict d;
    d["D"] = r.D;
    d["q"] = r.q;
    d["space"] = to_string(r.space);
    d["method"] = to_string(r.method);
    d["value"] = r.value;
    d["radial"] = r.radial;
    d["angular"] = r.angular;
    d["gap"] = r.gap;
    d["err_est"] = r.err_est;
    d["wall_ms"] = r.wall_ms;
    return d;
}

}  // namespace

PYBIND11_MODULE(_hydent, m) {
    m.doc() = "Entropies of D-dimensional hydrogenic states";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<QuantumState>(m, "QuantumState")
        .def_static("parse", &QuantumState::parse, py::arg("text"))
        .def_static("ns", &QuantumState::ns, py::arg("D"), py::arg("n"), py::arg("Z") = 1.0)
        .def_static("circular", &QuantumState::circular, py::arg("D"), py::arg("n"), py::arg("Z") = 1.0)
        .def_static("ground", &QuantumState::ground, py::arg("D"), py::arg("Z") = 1.0)
        .def_static(
            "make",
            [](int D, double Z, int n, int l, const std::vector<std::pair<int, int>>& runs) {
                std::vector<MuRun> mu;
                for (auto [v, c] : runs) mu.push_back({v, c});
                return QuantumState::make(D, Z, n, l, mu);
            },
            py::arg("D"), py::arg("Z"), py::arg("n"), py::arg("l"), py::arg("mu"))
        .def_property_readonly("D", &QuantumState::D)
        .def_property_readonly("Z", &QuantumState::Z)
        .def_property_readonly("n", &QuantumState::n)
        .def_property_readonly("l", &QuantumState::l)
        .def_property_readonly("m", &QuantumState::m)
        .def_property_readonly("mu",
                               [](const QuantumState& s) {
                                   std::vector<std::pair<int, int>> out;
                                   for (const auto& r : s.mu()) out.emplace_back(r.value, r.count);
                                   return out;
                               })
        .def("with_D", &QuantumState::with_D)
        .def("with_Z", &QuantumState::with_Z)
        .def("__str__", &QuantumState::to_string)
        .def("__repr__", [](const QuantumState& s) { return "QuantumState('" + s.to_string() + "')"; });

    py::class_<EntropyResult>(m, "EntropyResult")
        .def_readonly("value", &EntropyResult::value)
        .def_readonly("radial", &EntropyResult::radial)
        .def_readonly("angular", &EntropyResult::angular)
        .def_readonly("q", &EntropyResult::q)
        .def_readonly("err_est", &EntropyResult::err_est)
        .def_readonly("order", &EntropyResult::order)
        .def_readonly("conjecture", &EntropyResult::conjecture)
        .def_readonly("swap_derived", &EntropyResult::swap_derived)
        .def_property_readonly("space", [](const EntropyResult& r) { return to_string(r.space); })
        .def_property_readonly("method", [](const EntropyResult& r) { return to_string(r.method); });

    py::class_<AsymptoticSeries>(m, "AsymptoticSeries")
        .def_readonly("d_log_d", &AsymptoticSeries::d_log_d)
        .def_readonly("d", &AsymptoticSeries::d)
        .def_readonly("log_d", &AsymptoticSeries::log_d)
        .def_readonly("constant", &AsymptoticSeries::constant)
        .def_readonly("remainder", &AsymptoticSeries::remainder)
        .def("value", &AsymptoticSeries::value, py::arg("D"))
        .def("__call__", &AsymptoticSeries::value, py::arg("D"));

    auto eta = [](const std::string& s) {
        if (s == "exact") return EtaPolicy::exact;
        if (s == "leading") return EtaPolicy::leading;
        throw ValidationError("eta must be exact or leading");
    };

    m.def("log_gamma", &log_gamma, py::arg("x"));
    m.def("log_pochhammer", &log_pochhammer, py::arg("x"), py::arg("a"));

    m.def(
        "renyi_entropy",
        [](const QuantumState& s, double q, const std::string& space, double tol) {
            return renyi_entropy(s, q, parse_space(space), spec_with(tol));
        },
        py::arg("state"), py::arg("q"), py::arg("space") = "position", py::arg("tol") = 1e-10);
    m.def(
        "shannon_entropy",
        [](const QuantumState& s, const std::string& space, double tol) {
            return shannon_exact(s, parse_space(space), spec_with(tol));
        },
        py::arg("state"), py::arg("space") = "position", py::arg("tol") = 1e-10);
    m.def(
        "tsallis_and_disequilibrium",
        [](const QuantumState& s, double q, const std::string& space, double tol) {
            const auto r = tsallis_and_disequilibrium(s, q, parse_space(space), spec_with(tol));
            return py::make_tuple(r.tsallis, r.disequilibrium);
        },
        py::arg("state"), py::arg("q"), py::arg("space") = "position", py::arg("tol") = 1e-10);
    m.def(
        "renyi_asymptotic",
        [eta](const QuantumState& s, double q, const std::string& space, const std::string& policy) {
            return renyi_asymptotic(s, q, parse_space(space), eta(policy));
        },
        py::arg("state"), py::arg("q"), py::arg("space") = "position", py::arg("eta") = "exact");
    m.def("angular_renyi_asymptotic", &angular_renyi_asymptotic, py::arg("state"), py::arg("q"));
    m.def(
        "total_series",
        [eta](const QuantumState& s, double q, const std::string& space, const std::string& policy) {
            return parse_space(space) == Space::position ? total_position_renyi_asymptotic(s, q, eta(policy))
                                                         : total_momentum_renyi_asymptotic(s, q, eta(policy));
        },
        py::arg("state"), py::arg("q"), py::arg("space") = "position", py::arg("eta") = "exact");
    m.def(
        "radial_series",
        [eta](int n, int l, int D, double Z, double q, const std::string& space, const std::string& policy) {
            return parse_space(space) == Space::position ? radial_position_renyi_asymptotic(n, l, D, Z, q, eta(policy))
                                                         : radial_momentum_renyi_asymptotic(n, l, D, Z, q, eta(policy));
        },
        py::arg("n"), py::arg("l"), py::arg("D"), py::arg("Z"), py::arg("q"), py::arg("space") = "position",
        py::arg("eta") = "exact");
    m.def(
        "shannon_conjecture",
        [](const QuantumState& s, const std::string& space) { return shannon_conjectures(s, parse_space(space)).total; },
        py::arg("state"), py::arg("space") = "position");
    m.def("conjugate_order", &conjugate_order, py::arg("q"));
    m.def("uncertainty_sum_limit", &uncertainty_sum_limit, py::arg("q"));

    m.def(
        "j1_asymptotic",
        [](double sigma, double lambda, double kappa, int mm, double alpha, int order, bool printed) {
            return signed_log(j1_asymptotic({sigma, lambda, kappa, mm, alpha, order},
                                            printed ? D1Form::printed : D1Form::corrected));
        },
        py::arg("sigma"), py::arg("lambda_"), py::arg("kappa"), py::arg("m"), py::arg("alpha"), py::arg("order") = 0,
        py::arg("printed_d1") = false, "Returns (sign, log magnitude).");
    m.def(
        "j2_asymptotic",
        [](double a, double b, double c, double d, double kappa, int mm, double alpha) {
            return signed_log(j2_asymptotic({a, b, c, d, kappa, mm, alpha}));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("kappa"), py::arg("m"), py::arg("alpha"),
        "Returns (sign, log magnitude).");

    m.def(
        "run_sweep",
        [](const QuantumState& s, const std::vector<int>& D, const std::vector<double>& q, const std::string& space,
           const std::string& method, const std::string& part, int jobs, double tol) {
            SweepConfig c;
            c.state = s;
            c.D = D;
            c.q = q;
            c.space = parse_space(space);
            c.method = parse_method_select(method);
            c.part = parse_part(part);
            c.jobs = jobs;
            c.quadrature.rel_tol = tol;
            std::vector<ComparisonRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_sweep(c);
            }
            py::list out;
            for (const auto& r : flatten(rows)) out.append(record_dict(r));
            return out;
        },
        py::arg("state"), py::arg("D"), py::arg("q"), py::arg("space") = "position", py::arg("method") = "both",
        py::arg("part") = "total", py::arg("jobs") = 1, py::arg("tol") = 1e-10);
    m.def(
        "fit_convergence",
        [](const std::vector<double>& D, const std::vector<double>& gap, const std::string& model) {
            const auto f = fit_convergence(D, gap, model == "power" ? FitModel::power : FitModel::inverse_d);
            py::dict d;
            d["exponent"] = f.exponent;
            d["amplitude"] = f.amplitude;
            d["residual"] = f.residual;
            d["points"] = f.points;
            d["within_expected"] = f.within_expected;
            return d;
        },
        py::arg("D"), py::arg("gap"), py::arg("model") = "inverse-d");
    m.def(
        "check_saturation",
        [](double q, const std::vector<int>& D, const QuantumState& s) {
            const auto rep = check_saturation(q, D, s);
            py::dict d;
            d["q"] = rep.q;
            d["p"] = rep.p;
            d["limit"] = rep.limit;
            py::list pts;
            for (const auto& p : rep.points) {
                py::dict x;
                x["D"] = p.D;
                x["asymptotic"] = p.asymptotic;
                x["exact"] = p.exact ? py::cast(*p.exact) : py::none();
                pts.append(x);
            }
            d["points"] = pts;
            d["exact_monotone"] = rep.exact_monotone;
            d["asymptotic_monotone"] = rep.asymptotic_monotone;
            return d;
        },
        py::arg("q"), py::arg("D"), py::arg("state"));
}
