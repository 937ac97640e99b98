#include "hydent/quadrature.hpp"

#include "hydent/error.hpp"
#include "hydent/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hydent {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxPanels = 4000;
constexpr int kTailNodes = 32;
constexpr double kTailDrop = 60.0;

// Exponent absorbed into the Jacobi weight, or 0 when plain Legendre suffices.
double weight_exponent(double e) {
    if (!(e > -1.0)) throw DomainError("integrand endpoint exponent must exceed -1");
    if (e >= 8.0 || std::fabs(e - std::round(e)) < 1e-12) return 0.0;
    return e;
}

struct Panel {
    double lo = 0, hi = 0;
    double elo = 0, ehi = 0;
    int level = 0;
    SignedLogReal value;
    double log_err = kNegInf;
};

SignedLogReal apply_rule(const LogIntegrand& f, const Panel& p, const GaussRule& rule, double a, double b,
                         int& evals) {
    const double half = 0.5 * (p.hi - p.lo);
    const double log_half = std::log(half);
    std::vector<SignedLogReal> terms;
    terms.reserve(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        const double x = p.lo + half * (t + 1.0);
        const SignedLogReal fx = f(x);
        ++evals;
        if (fx.is_zero()) continue;
        double lw = rule.weights[i].logmag() + log_half;
        if (a != 0.0) lw -= a * std::log1p(-t);
        if (b != 0.0) lw -= b * std::log1p(t);
        terms.push_back(SignedLogReal::from_log(fx.sign(), fx.logmag_ld() + lw));
    }
    if (terms.empty()) return {};
    return combine(terms, CombineMode::sum);
}

void evaluate(const LogIntegrand& f, Panel& p, const QuadratureSpec& spec, int& evals) {
    const double a = weight_exponent(p.ehi);
    const double b = weight_exponent(p.elo);
    const auto fine = gauss_rule(WeightSpec::jacobi(a, b), spec.nodes);
    const auto coarse = gauss_rule(WeightSpec::jacobi(a, b), spec.nodes / 2);
    p.value = apply_rule(f, p, *fine, a, b, evals);
    const SignedLogReal diff = p.value - apply_rule(f, p, *coarse, a, b, evals);
    p.log_err = diff.is_zero() ? kNegInf : diff.logmag();
}

IntegralResult adapt(const LogIntegrand& f, std::vector<Panel> panels, const QuadratureSpec& spec, double tol,
                     const SignedLogReal& extra, double extra_log_err, int evals) {
    for (auto& p : panels) evaluate(f, p, spec, evals);
    std::vector<bool> frozen(panels.size(), false);
    const double log_tol = std::log(tol);
    for (;;) {
        std::vector<SignedLogReal> vals{extra};
        std::vector<double> abs{extra.is_zero() ? kNegInf : extra.logmag()};
        std::vector<double> errs{extra_log_err};
        for (const auto& p : panels) {
            vals.push_back(p.value);
            abs.push_back(p.value.is_zero() ? kNegInf : p.value.logmag());
            errs.push_back(p.log_err);
        }
        const SignedLogReal sum = combine(vals, CombineMode::sum);
        const double log_err = log_sum_exp(errs);
        const double log_scale = std::max(sum.is_zero() ? kNegInf : sum.logmag(), log_sum_exp(abs) - 18.0);
        const double rel = log_err == kNegInf ? 0.0 : std::exp(log_err - log_scale);
        if (log_err <= log_tol + log_scale) return {sum, rel, evals};

        std::size_t worst = panels.size();
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (frozen[i] || panels[i].log_err == kNegInf) continue;
            if (worst == panels.size() || panels[i].log_err > panels[worst].log_err) worst = i;
        }
        if (worst == panels.size() || static_cast<int>(panels.size()) >= kMaxPanels) {
            std::ostringstream msg;
            msg << "quadrature did not reach relative tolerance " << tol << " (estimate " << rel << ")";
            throw ConvergenceError(msg.str(), sum.is_zero() ? kNegInf : sum.logmag(), rel);
        }
        if (panels[worst].level >= spec.max_levels) {
            frozen[worst] = true;
            continue;
        }
        const Panel parent = panels[worst];
        const double mid = 0.5 * (parent.lo + parent.hi);
        Panel left{parent.lo, mid, parent.elo, 0.0, parent.level + 1, {}, kNegInf};
        Panel right{mid, parent.hi, 0.0, parent.ehi, parent.level + 1, {}, kNegInf};
        evaluate(f, left, spec, evals);
        evaluate(f, right, spec, evals);
        panels[worst] = left;
        panels.push_back(right);
        frozen.push_back(false);
    }
}

std::vector<Panel> build_panels(double lo, double hi, std::vector<Breakpoint> interior, double elo, double ehi) {
    std::sort(interior.begin(), interior.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.at < b.at; });
    std::vector<Breakpoint> pts{{lo, elo}};
    for (const auto& bp : interior) {
        if (!(bp.at > lo && bp.at < hi)) continue;
        if (bp.at - pts.back().at <= 1e-14 * std::max(1.0, std::fabs(bp.at))) {
            pts.back().exponent = std::max(pts.back().exponent, bp.exponent);
            continue;
        }
        pts.push_back(bp);
    }
    if (hi - pts.back().at <= 1e-14 * std::max(1.0, std::fabs(hi)) && pts.size() > 1) pts.pop_back();
    pts.push_back({hi, ehi});
    std::vector<Panel> panels;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        panels.push_back({pts[i].at, pts[i + 1].at, pts[i].exponent, pts[i + 1].exponent, 0, {}, kNegInf});
    return panels;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (nodes < 2) throw ValidationError("quadrature node count must be at least 2");
    if (!(rel_tol > 0.0)) throw ValidationError("quadrature tolerance must be positive");
    if (max_levels < 0) throw ValidationError("max refinement levels must be non-negative");
}

double QuadratureSpec::tolerance_for(int D) const { return D > 500 ? std::max(rel_tol, 1e-8) : rel_tol; }

IntegralResult integrate(const LogIntegrand& f, double lo, double hi, std::vector<Breakpoint> interior,
                         double exponent_lo, double exponent_hi, const QuadratureSpec& spec, double tol) {
    spec.validate();
    if (!(hi > lo)) throw DomainError("integrate: empty interval");
    return adapt(f, build_panels(lo, hi, std::move(interior), exponent_lo, exponent_hi), spec, tol, {}, kNegInf, 0);
}

IntegralResult integrate_half_line(const LogIntegrand& f, double lo, std::vector<Breakpoint> interior,
                                   double exponent_lo, double decay_rate, double scale_hint,
                                   const QuadratureSpec& spec, double tol) {
    spec.validate();
    if (!(decay_rate > 0.0) || !(scale_hint > 0.0)) throw DomainError("integrate_half_line: bad decay or scale");
    double start = lo;
    double peak = kNegInf;
    for (const auto& bp : interior) {
        if (bp.at > start) start = bp.at;
        const SignedLogReal v = f(bp.at);
        if (!v.is_zero()) peak = std::max(peak, v.logmag());
    }
    // march outwards with doubling panels until the integrand is negligible
    std::vector<Breakpoint> pts = interior;
    double x = start, width = scale_hint;
    for (int step = 0; step < 400; ++step) {
        x += width;
        const SignedLogReal v = f(x);
        const double lv = v.is_zero() ? kNegInf : v.logmag();
        pts.push_back({x, 0.0});
        peak = std::max(peak, lv);
        if (lv < peak - kTailDrop && x * decay_rate > 1.0 + exponent_lo) break;
        width *= 1.5;
    }
    const double end = x;
    // remaining tail by Gauss-Laguerre in exp(-decay_rate (x - end))
    int evals = 0;
    auto tail_sum = [&](int count) {
        const auto rule = gauss_rule(WeightSpec::laguerre(0.0, decay_rate), count);
        std::vector<SignedLogReal> terms;
        for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
            const double t = rule->nodes[i];
            const SignedLogReal v = f(end + t);
            ++evals;
            if (v.is_zero()) continue;
            terms.push_back(
                SignedLogReal::from_log(v.sign(), v.logmag_ld() + rule->weights[i].logmag_ld() + decay_rate * t));
        }
        return terms.empty() ? SignedLogReal{} : combine(terms, CombineMode::sum);
    };
    const SignedLogReal tail = tail_sum(kTailNodes);
    const SignedLogReal tail_diff = tail - tail_sum(kTailNodes / 2);
    const double tail_err = std::max(tail_diff.is_zero() ? kNegInf : tail_diff.logmag(),
                                     tail.is_zero() ? kNegInf : tail.logmag() - 10.0);
    return adapt(f, build_panels(lo, end, pts, exponent_lo, 0.0), spec, tol, tail, tail_err, evals);
}

}  // namespace hydent
