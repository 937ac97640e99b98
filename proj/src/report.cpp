#include "hydent/report.hpp"

#include "hydent/error.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace hydent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_shannon(double q) { return q == 1.0; }

double pick(const EntropyResult& r, Part part) {
    switch (part) {
        case Part::radial: return r.radial;
        case Part::angular: return r.angular;
        case Part::total: break;
    }
    return r.value;
}

EntropyResult failed(Space space, Method method, double q) {
    EntropyResult r;
    r.space = space;
    r.method = method;
    r.q = q;
    r.value = r.radial = r.angular = r.err_est = kNaN;
    return r;
}

EntropyResult evaluate_exact(const QuantumState& s, double q, const SweepConfig& c) {
    EntropyResult r = is_shannon(q) ? shannon_exact(s, c.space, c.quadrature)
                                    : renyi_entropy(s, q, c.space, c.quadrature);
    r.value = pick(r, c.part);
    return r;
}

EntropyResult evaluate_asymptotic(const QuantumState& s, double q, const SweepConfig& c) {
    if (!is_shannon(q)) {
        EntropyResult r = renyi_asymptotic(s, q, c.space, c.eta);
        r.value = pick(r, c.part);
        return r;
    }
    const ShannonConjecture sc = shannon_conjectures(s, c.space);
    EntropyResult r;
    r.space = c.space;
    r.method = Method::asymptotic;
    r.q = 1.0;
    r.order = 0;
    r.conjecture = true;
    r.radial = sc.radial.value(s.D());
    r.angular = sc.angular;
    r.value = c.part == Part::total ? sc.total.value(s.D()) : pick(r, c.part);
    return r;
}

ComparisonRow compute_row(const SweepConfig& c, int D, double q) {
    const auto t0 = std::chrono::steady_clock::now();
    ComparisonRow row;
    row.D = D;
    row.q = q;
    row.space = c.space;
    QuantumState s = c.state.with_D(D);
    if (c.Z) s = s.with_Z(*c.Z);
    auto attempt = [&](Method m) {
        try {
            return m == Method::exact ? evaluate_exact(s, q, c) : evaluate_asymptotic(s, q, c);
        } catch (const ConvergenceError& e) {
            row.converged = false;
            row.error += std::string(row.error.empty() ? "" : "; ") + to_string(m) + ": " + e.what();
        } catch (const std::exception& e) {
            row.error += std::string(row.error.empty() ? "" : "; ") + to_string(m) + ": " + e.what();
        }
        return failed(c.space, m, q);
    };
    if (c.method != MethodSelect::asymptotic) row.exact = attempt(Method::exact);
    if (c.method != MethodSelect::exact) row.asymptotic = attempt(Method::asymptotic);
    row.gap = row.exact && row.asymptotic ? row.asymptotic->value - row.exact->value : kNaN;
    row.gap_times_D = row.gap * D;
    row.err_est = row.exact ? row.exact->err_est : 0.0;
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("bad number '" + text + "'");
    }
    if (used != text.size()) throw ValidationError("bad number '" + text + "'");
    return v;
}

Method parse_method(const std::string& text) {
    if (text == "exact") return Method::exact;
    if (text == "asymptotic") return Method::asymptotic;
    throw ValidationError("unknown method '" + text + "'");
}

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
double num(const nlohmann::json& j) { return j.is_null() ? kNaN : j.get<double>(); }

}  // namespace

MethodSelect parse_method_select(const std::string& text) {
    if (text == "exact") return MethodSelect::exact;
    if (text == "asymptotic") return MethodSelect::asymptotic;
    if (text == "both") return MethodSelect::both;
    throw ValidationError("method must be exact, asymptotic or both, got '" + text + "'");
}

Part parse_part(const std::string& text) {
    if (text == "total") return Part::total;
    if (text == "radial") return Part::radial;
    if (text == "angular") return Part::angular;
    throw ValidationError("part must be total, radial or angular, got '" + text + "'");
}

std::string to_string(Part p) {
    switch (p) {
        case Part::radial: return "radial";
        case Part::angular: return "angular";
        case Part::total: break;
    }
    return "total";
}

void SweepConfig::validate() const {
    if (D.empty()) throw ValidationError("D list is empty");
    if (q.empty()) throw ValidationError("q list is empty");
    for (int d : D)
        if (d < 2) throw ValidationError("D values must be >= 2");
    for (double v : q)
        if (!(v > 0.0)) throw ValidationError("q values must be > 0");
    if (Z && !(*Z > 0.0)) throw ValidationError("Z must be positive");
    if (jobs < 1) throw ValidationError("jobs must be >= 1");
    quadrature.validate();
}

std::vector<int> geometric_range(int lo, int hi, double ratio) {
    if (lo < 2 || hi < lo || !(ratio > 1.0)) throw ValidationError("geometric range needs 2 <= lo <= hi, ratio > 1");
    std::vector<int> out;
    for (double d = lo; d <= hi * (1.0 + 1e-12); d *= ratio) {
        const int v = static_cast<int>(std::lround(d));
        if (out.empty() || out.back() != v) out.push_back(v);
    }
    return out;
}

std::vector<ComparisonRow> run_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<std::pair<int, double>> grid;
    for (int d : config.D)
        for (double q : config.q) grid.emplace_back(d, q);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<ComparisonRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < grid.size();)
            rows[i] = compute_row(config, grid[i].first, grid[i].second);
    };
    const int jobs = std::min<int>(config.jobs, static_cast<int>(grid.size()));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    return rows;
}

std::vector<Record> flatten(const std::vector<ComparisonRow>& rows) {
    std::vector<Record> out;
    for (const auto& row : rows) {
        for (const auto* r : {row.exact ? &*row.exact : nullptr, row.asymptotic ? &*row.asymptotic : nullptr}) {
            if (!r) continue;
            out.push_back({row.D, row.q, row.space, r->method, r->value, r->radial, r->angular, row.gap,
                           r->method == Method::exact ? r->err_est : 0.0, row.wall_ms});
        }
    }
    return out;
}

void write_csv(std::ostream& out, const std::vector<Record>& records, bool timing) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.D << ',' << fmt17(r.q) << ',' << to_string(r.space) << ',' << to_string(r.method) << ','
            << fmt17(r.value) << ',' << fmt17(r.radial) << ',' << fmt17(r.angular) << ',' << fmt17(r.gap) << ','
            << fmt17(r.err_est) << ',' << fmt17(timing ? r.wall_ms : 0.0) << '\n';
    }
}

std::vector<Record> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw ValidationError("CSV header mismatch");
    std::vector<Record> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 10) throw ValidationError("CSV row needs 10 fields: '" + line + "'");
        Record r;
        r.D = static_cast<int>(parse_double(f[0]));
        r.q = parse_double(f[1]);
        r.space = parse_space(f[2]);
        r.method = parse_method(f[3]);
        r.value = parse_double(f[4]);
        r.radial = parse_double(f[5]);
        r.angular = parse_double(f[6]);
        r.gap = parse_double(f[7]);
        r.err_est = parse_double(f[8]);
        r.wall_ms = parse_double(f[9]);
        out.push_back(r);
    }
    return out;
}

void write_json(std::ostream& out, const std::vector<Record>& records, bool timing) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        arr.push_back({{"D", r.D},
                       {"q", num(r.q)},
                       {"space", to_string(r.space)},
                       {"method", to_string(r.method)},
                       {"value", num(r.value)},
                       {"radial", num(r.radial)},
                       {"angular", num(r.angular)},
                       {"gap", num(r.gap)},
                       {"err_est", num(r.err_est)},
                       {"wall_ms", num(timing ? r.wall_ms : 0.0)}});
    }
    out << arr.dump(2) << '\n';
}

std::vector<Record> read_json(std::istream& in) {
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad JSON: ") + e.what());
    }
    std::vector<Record> out;
    for (const auto& j : arr) {
        Record r;
        r.D = j.at("D").get<int>();
        r.q = num(j.at("q"));
        r.space = parse_space(j.at("space").get<std::string>());
        r.method = parse_method(j.at("method").get<std::string>());
        r.value = num(j.at("value"));
        r.radial = num(j.at("radial"));
        r.angular = num(j.at("angular"));
        r.gap = num(j.at("gap"));
        r.err_est = num(j.at("err_est"));
        r.wall_ms = num(j.at("wall_ms"));
        out.push_back(r);
    }
    return out;
}

FitReport fit_convergence(const std::vector<double>& D, const std::vector<double>& gap, FitModel model) {
    if (D.size() != gap.size()) throw ValidationError("D and gap lists differ in length");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < D.size(); ++i) {
        if (D[i] > 0.0 && std::isfinite(gap[i]) && gap[i] != 0.0) {
            x.push_back(std::log(D[i]));
            y.push_back(std::log(std::fabs(gap[i])));
        }
    }
    if (x.size() < 3) throw ValidationError("convergence fit needs at least 3 rows with finite nonzero gaps");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ss += std::pow(y[i] - icpt - slope * x[i], 2);
    FitReport f;
    f.exponent = -slope;
    f.amplitude = std::exp(icpt);
    f.residual = std::sqrt(ss / n);
    f.points = static_cast<int>(x.size());
    if (model == FitModel::inverse_d) f.within_expected = f.exponent >= 0.8 && f.exponent <= 1.2;
    return f;
}

FitReport fit_convergence(const std::vector<ComparisonRow>& rows, FitModel model) {
    std::vector<double> D, gap;
    for (const auto& r : rows) {
        if (!rows.empty() && r.q != rows.front().q) throw ValidationError("convergence fit needs rows with one q");
        D.push_back(r.D);
        gap.push_back(r.gap);
    }
    return fit_convergence(D, gap, model);
}

SaturationReport check_saturation(double q, const std::vector<int>& Ds, const QuantumState& state,
                                  const QuadratureSpec& spec, int exact_max_D) {
    if (!(q > kMomentumMinOrder)) throw DomainError("saturation check requires q > 0.55");
    if (Ds.empty()) throw ValidationError("D list is empty");
    SaturationReport rep;
    rep.q = q;
    rep.p = conjugate_order(q);
    rep.limit = uncertainty_sum_limit(q);
    std::vector<int> sorted = Ds;
    std::sort(sorted.begin(), sorted.end());
    for (int D : sorted) {
        const QuantumState s = state.with_D(D);
        SaturationPoint pt;
        pt.D = D;
        if (is_shannon(q)) {
            pt.asymptotic = (shannon_conjectures(s, Space::position).total.value(D) +
                             shannon_conjectures(s, Space::momentum).total.value(D)) / D;
        } else {
            pt.asymptotic = (total_position_renyi_asymptotic(s, q).value(D) +
                             total_momentum_renyi_asymptotic(s, rep.p).value(D)) / D;
        }
        if (D <= exact_max_D) {
            try {
                const double a = is_shannon(q) ? shannon_exact(s, Space::position, spec).value
                                               : renyi_entropy(s, q, Space::position, spec).value;
                const double b = is_shannon(q) ? shannon_exact(s, Space::momentum, spec).value
                                               : renyi_entropy(s, rep.p, Space::momentum, spec).value;
                pt.exact = (a + b) / D;
            } catch (const std::exception& e) {
                pt.error = e.what();
            }
        }
        rep.points.push_back(pt);
    }
    double last_a = std::numeric_limits<double>::infinity(), last_e = last_a;
    for (const auto& pt : rep.points) {
        const double da = std::fabs(pt.asymptotic - rep.limit);
        if (da > last_a) rep.asymptotic_monotone = false;
        last_a = da;
        if (pt.exact) {
            const double de = std::fabs(*pt.exact - rep.limit);
            if (de > last_e) rep.exact_monotone = false;
            last_e = de;
        }
    }
    return rep;
}

std::vector<TheoremCheckRow> theorem_check(const std::vector<double>& alphas, const QuadratureSpec& spec) {
    std::vector<TheoremCheckRow> out;
    auto rel = [](const SignedLogReal& approx, const SignedLogReal& exact) {
        return std::fabs(std::expm1(static_cast<double>(approx.logmag_ld() - exact.logmag_ld())));
    };
    for (double sigma : {1.0, 2.5})
        for (double lambda : {0.5, 2.0})
            for (double kappa : {2.0, 4.0})
                for (int m : {0, 1, 2})
                    for (double a : alphas) {
                        J1Params p{sigma, lambda, kappa, m, a, 0};
                        const IntegralResult q = j1_quadrature(p, spec);
                        const double e0 = rel(j1_asymptotic(p), q.value);
                        p.order = 1;
                        const double e1 = rel(j1_asymptotic(p), q.value);
                        char buf[96];
                        std::snprintf(buf, sizeof buf, "sigma=%g lambda=%g kappa=%g m=%d", sigma, lambda, kappa, m);
                        out.push_back({"J1", buf, a, e0, e1, q.rel_error});
                    }
    const std::pair<double, double> cds[] = {{1.0, 2.0}, {1.0, 3.0}, {2.0, 1.0}, {1.0, 1.0}};
    for (double aa : {0.0, 1.5})
        for (double bb : {0.0, 1.5})
            for (auto [c, d] : cds)
                for (int m : {0, 1, 2}) {
                    if (c == d && m > 0) continue;
                    for (double a : alphas) {
                        const J2Params p{aa, bb, c, d, 2.0, m, a};
                        const IntegralResult q = j2_quadrature(p, spec);
                        char buf[96];
                        std::snprintf(buf, sizeof buf, "a=%g b=%g c=%g d=%g kappa=2 m=%d", aa, bb, c, d, m);
                        out.push_back({"J2", buf, a, rel(j2_asymptotic(p), q.value), kNaN, q.rel_error});
                    }
                }
    return out;
}

}  // namespace hydent
