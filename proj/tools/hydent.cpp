#include "hydent/asymptotics.hpp"
#include "hydent/error.hpp"
#include "hydent/report.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace hydent;

namespace {

struct Options {
    std::string state = "D=3 Z=1 n=1 l=0 mu=ns";
    std::vector<int> D;
    std::string d_range;
    std::vector<double> q{2.0};
    std::optional<double> Z;
    std::string space = "position";
    std::string part = "total";
    std::string method = "both";
    std::string eta = "exact";
    std::string format = "csv";
    std::string out = "-";
    std::string in;
    std::string model = "inverse-d";
    std::vector<double> alpha{50, 100, 200, 400};
    int order = 1;
    double tol = 1e-10;
    int jobs = 1;
    int exact_max_D = kExactSaturationMaxD;
    bool strict = false;
    bool no_timing = false;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Owns the file stream when --out names a file.
struct Sink {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;

    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw ValidationError("cannot open output file '" + path + "'");
        os = file.get();
    }
};

SweepConfig make_config(const Options& o) {
    SweepConfig c;
    c.state = QuantumState::parse(o.state);
    c.D = o.D;
    if (!o.d_range.empty()) {
        int lo = 0, hi = 0;
        double ratio = 2.0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(o.d_range);
        if (!(ss >> lo >> c1 >> hi) || c1 != ':') throw ValidationError("--D-range must be lo:hi[:ratio]");
        if (ss >> c2 && (c2 != ':' || !(ss >> ratio))) throw ValidationError("--D-range must be lo:hi[:ratio]");
        for (int d : geometric_range(lo, hi, ratio)) c.D.push_back(d);
    }
    if (c.D.empty()) c.D.push_back(c.state.D());
    c.q = o.q;
    c.Z = o.Z;
    c.space = parse_space(o.space);
    c.part = parse_part(o.part);
    c.method = parse_method_select(o.method);
    if (o.eta == "exact") c.eta = EtaPolicy::exact;
    else if (o.eta == "leading") c.eta = EtaPolicy::leading;
    else throw ValidationError("--eta must be exact or leading");
    c.quadrature.rel_tol = o.tol;
    c.jobs = o.jobs;
    c.validate();
    return c;
}

void emit(const Options& o, const std::vector<Record>& records) {
    Sink sink(o.out);
    if (o.format == "csv") write_csv(*sink.os, records, !o.no_timing);
    else if (o.format == "json") write_json(*sink.os, records, !o.no_timing);
    else throw ValidationError("--format must be csv or json");
}

int sweep_like(const Options& o) {
    const auto rows = run_sweep(make_config(o));
    emit(o, flatten(rows));
    int status = 0;
    for (const auto& r : rows) {
        if (!r.error.empty()) std::cerr << "D=" << r.D << " q=" << r.q << ": " << r.error << '\n';
        if (o.strict && !r.converged) status = 3;
    }
    return status;
}

int run_fit(const Options& o) {
    std::vector<Record> records;
    if (!o.in.empty()) {
        std::ifstream f(o.in);
        if (!f) throw ValidationError("cannot open '" + o.in + "'");
        records = o.in.ends_with(".json") ? read_json(f) : read_csv(f);
    } else {
        Options both = o;
        both.method = "both";
        records = flatten(run_sweep(make_config(both)));
    }
    FitModel model = FitModel::inverse_d;
    if (o.model == "power") model = FitModel::power;
    else if (o.model != "inverse-d") throw ValidationError("--model must be power or inverse-d");
    std::vector<double> qs;
    for (const auto& r : records)
        if (std::find(qs.begin(), qs.end(), r.q) == qs.end()) qs.push_back(r.q);
    Sink sink(o.out);
    *sink.os << "q,exponent,amplitude,residual,points,within_expected\n";
    for (double q : qs) {
        std::vector<double> D, gap;
        for (const auto& r : records)
            if (r.q == q && r.method == Method::exact) {
                D.push_back(r.D);
                gap.push_back(r.gap);
            }
        const FitReport f = fit_convergence(D, gap, model);
        *sink.os << fmt(q) << ',' << fmt(f.exponent) << ',' << fmt(f.amplitude) << ',' << fmt(f.residual) << ','
                 << f.points << ',' << (f.within_expected ? "true" : "false") << '\n';
    }
    return 0;
}

int run_saturation(const Options& o) {
    const QuantumState state = QuantumState::parse(o.state);
    std::vector<int> Ds = o.D.empty() ? std::vector<int>{50, 100, 200, 1000, 10000} : o.D;
    QuadratureSpec spec;
    spec.rel_tol = o.tol;
    Sink sink(o.out);
    *sink.os << "q,p,D,asymptotic,exact,limit\n";
    for (double q : o.q) {
        const SaturationReport rep = check_saturation(q, Ds, state, spec, o.exact_max_D);
        for (const auto& pt : rep.points)
            *sink.os << fmt(rep.q) << ',' << fmt(rep.p) << ',' << pt.D << ',' << fmt(pt.asymptotic) << ','
                     << (pt.exact ? fmt(*pt.exact) : std::string("nan")) << ',' << fmt(rep.limit) << '\n';
        std::cerr << "q=" << q << " exact approach monotone: " << (rep.exact_monotone ? "yes" : "no")
                  << ", asymptotic approach monotone: " << (rep.asymptotic_monotone ? "yes" : "no") << '\n';
    }
    return 0;
}

int run_theorem_check(const Options& o) {
    QuadratureSpec spec;
    spec.rel_tol = o.tol;
    Sink sink(o.out);
    *sink.os << "functional,params,alpha,rel_error,quad_rel_error\n";
    for (const auto& r : theorem_check(o.alpha, spec)) {
        const double e = (r.functional == "J1" && o.order >= 1) ? r.rel_error1 : r.rel_error0;
        *sink.os << r.functional << ',' << r.params << ',' << fmt(r.alpha) << ',' << fmt(e) << ','
                 << fmt(r.quad_rel_error) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Renyi, Shannon and Tsallis entropies of D-dimensional hydrogenic states"};
    app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
    app.require_subcommand(1);
    Options o;

    app.add_option("--state", o.state, "State as 'D=<int> Z=<float> n=<int> l=<int> mu=<runs|ns|circular>'");
    app.add_option("--D", o.D, "Dimensions")->delimiter(',');
    app.add_option("--D-range", o.d_range, "Geometric dimension range lo:hi[:ratio]");
    app.add_option("--q", o.q, "Entropic orders (1 selects Shannon)")->delimiter(',');
    app.add_option("--Z", o.Z, "Nuclear charge override");
    app.add_option("--space", o.space, "position or momentum");
    app.add_option("--part", o.part, "total, radial or angular");
    app.add_option("--method", o.method, "exact, asymptotic or both");
    app.add_option("--eta", o.eta, "Asymptotic eta policy: exact or leading");
    app.add_option("--order", o.order, "Expansion order reported by theorem-check (0 or 1)")->check(CLI::Range(0, 1));
    app.add_option("--tol", o.tol, "Quadrature relative tolerance");
    app.add_option("--out", o.out, "Output path, '-' for stdout");
    app.add_option("--format", o.format, "csv or json");
    app.add_option("--in", o.in, "Existing CSV or JSON table for fit");
    app.add_option("--model", o.model, "Fit model: power or inverse-d");
    app.add_option("--alpha", o.alpha, "Large parameters for theorem-check")->delimiter(',');
    app.add_option("--exact-max-D", o.exact_max_D, "Largest D evaluated exactly by saturation");
    app.add_option("--jobs", o.jobs, "Concurrent sweep rows")->check(CLI::PositiveNumber);
    app.add_flag("--strict", o.strict, "Exit 3 when any row fails to converge");
    app.add_flag("--no-timing", o.no_timing, "Write wall_ms as 0 for reproducible output");

    auto* entropy = app.add_subcommand("entropy", "Evaluate one state")->fallthrough();
    auto* sweep = app.add_subcommand("sweep", "Exact versus asymptotic over a D and q grid")->fallthrough();
    auto* fit = app.add_subcommand("fit", "Power-law fit of asymptotic gaps")->fallthrough();
    auto* saturation = app.add_subcommand("saturation", "Uncertainty-sum saturation check")->fallthrough();
    auto* theorem = app.add_subcommand("theorem-check", "Laguerre and Gegenbauer functional oracle suites")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*entropy || *sweep) return sweep_like(o);
        if (*fit) return run_fit(o);
        if (*saturation) return run_saturation(o);
        if (*theorem) return run_theorem_check(o);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
