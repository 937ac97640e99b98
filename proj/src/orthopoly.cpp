#include "hydent/orthopoly.hpp"

#include "hydent/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <tuple>

namespace hydent {

namespace {

constexpr double kRescale = 1e150;

void check_degree(int m) {
    if (m < 0 || m > kMaxDegree) throw DomainError("polynomial degree must lie in [0, 64]");
}

// Three-term recurrence carried with a running log scale.
template <class Step>
SignedLogReal run_recurrence(int m, double p0, double p1, Step step) {
    if (m == 0) return SignedLogReal::from_double(p0);
    double prev = p0, cur = p1, log_scale = 0.0;
    for (int k = 1; k < m; ++k) {
        const double next = step(k, cur, prev);
        prev = cur;
        cur = next;
        if (std::fabs(cur) > kRescale) {
            prev /= kRescale;
            cur /= kRescale;
            log_scale += std::log(kRescale);
        }
    }
    if (cur == 0.0) return {};
    return SignedLogReal::from_log(cur > 0 ? 1 : -1, std::log(std::fabs(cur)) + log_scale);
}

struct Recurrence {
    std::vector<double> diag;
    std::vector<double> offsq;  // offsq[k] couples k-1 and k, k >= 1
    double log_mu0 = 0.0;
};

Recurrence laguerre_recurrence(double alpha, int n) {
    Recurrence r;
    r.diag.resize(n);
    r.offsq.assign(n, 0.0);
    for (int k = 0; k < n; ++k) r.diag[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) r.offsq[k] = k * (k + alpha);
    r.log_mu0 = log_gamma(alpha + 1.0);
    return r;
}

Recurrence jacobi_recurrence(double a, double b, int n) {
    Recurrence r;
    r.diag.resize(n);
    r.offsq.assign(n, 0.0);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            r.diag[k] = (b - a) / (ab + 2.0);
        } else {
            r.diag[k] = (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        if (k == 1) {
            r.offsq[k] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            const double s = 2.0 * k + ab;
            r.offsq[k] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
    }
    r.log_mu0 = (ab + 1.0) * std::numbers::ln2 + log_beta(a + 1.0, b + 1.0);
    return r;
}

Recurrence gegenbauer_recurrence(double alpha, int n) {
    Recurrence r;
    r.diag.assign(n, 0.0);
    r.offsq.assign(n, 0.0);
    for (int k = 1; k < n; ++k) {
        r.offsq[k] = k == 1 ? 1.0 / (2.0 * (1.0 + alpha))
                            : k * (k + 2.0 * alpha - 1.0) / (4.0 * (k + alpha) * (k + alpha - 1.0));
    }
    return r;
}

// Orthonormal recurrence at x: returns p_n, p_n' and the sum of p_k^2 for k < n.
struct OrthoEval {
    long double pn = 0, dpn = 0, sumsq = 0;
};

OrthoEval ortho_eval(const Recurrence& r, int n, long double x) {
    long double pm1 = 0, p = 1, dpm1 = 0, dp = 0, sumsq = 0;
    for (int k = 0; k < n; ++k) {
        sumsq += p * p;
        const long double bk = k > 0 ? std::sqrt(static_cast<long double>(r.offsq[k])) : 0.0L;
        const long double bk1 =
            k + 1 < n ? std::sqrt(static_cast<long double>(r.offsq[k + 1])) : 1.0L;
        const long double next = ((x - r.diag[k]) * p - bk * pm1) / bk1;
        const long double dnext = (p + (x - r.diag[k]) * dp - bk * dpm1) / bk1;
        pm1 = p;
        p = next;
        dpm1 = dp;
        dp = dnext;
    }
    return {p, dp, sumsq};
}

std::vector<double> jacobi_eigenvalues(const Recurrence& r, int n) {
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
    for (int k = 0; k < n; ++k) diag[k] = r.diag[k];
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(r.offsq[k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(n > 1 ? n - 1 : 0), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw DomainError("Jacobi matrix eigenvalue solver failed");
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    return out;
}

// One Newton step per node, skipped if it would reorder neighbours.
void polish(const Recurrence& r, int n, std::vector<double>& x) {
    std::vector<double> y = x;
    for (int i = 0; i < n; ++i) {
        const OrthoEval e = ortho_eval(r, n, x[i]);
        if (e.dpn == 0) continue;
        const double step = static_cast<double>(e.pn / e.dpn);
        double gap = std::numeric_limits<double>::infinity();
        if (i > 0) gap = std::min(gap, x[i] - x[i - 1]);
        if (i + 1 < n) gap = std::min(gap, x[i + 1] - x[i]);
        if (std::isfinite(step) && std::fabs(step) < 0.25 * gap) y[i] = x[i] - step;
    }
    x = y;
}

std::vector<double> nodes_of(const Recurrence& r, int n) {
    std::vector<double> x = jacobi_eigenvalues(r, n);
    polish(r, n, x);
    return x;
}

GaussRule build_rule(const Recurrence& r, int n) {
    GaussRule rule;
    rule.nodes = nodes_of(r, n);
    rule.weights.reserve(n);
    for (double x : rule.nodes) {
        const OrthoEval e = ortho_eval(r, n, x);
        rule.weights.push_back(SignedLogReal::from_log(1, r.log_mu0 - std::log(e.sumsq)));
    }
    rule.exactness = 2 * n - 1;
    return rule;
}

GaussRule make_rule(const WeightSpec& w, int count) {
    switch (w.kind) {
        case WeightSpec::Kind::laguerre: {
            if (!(w.p1 > -1.0) || !(w.p2 > 0.0)) throw DomainError("Laguerre weight requires alpha > -1, scale > 0");
            GaussRule rule = build_rule(laguerre_recurrence(w.p1, count), count);
            const double shift = -(w.p1 + 1.0) * std::log(w.p2);
            for (int i = 0; i < count; ++i) {
                rule.nodes[i] /= w.p2;
                rule.weights[i] = SignedLogReal::from_log(1, rule.weights[i].logmag_ld() + shift);
            }
            return rule;
        }
        case WeightSpec::Kind::jacobi: {
            if (!(w.p1 > -1.0) || !(w.p2 > -1.0)) throw DomainError("Jacobi weight requires a, b > -1");
            return build_rule(jacobi_recurrence(w.p1, w.p2, count), count);
        }
        case WeightSpec::Kind::legendre: {
            if (!(w.p2 > w.p1)) throw DomainError("Legendre interval must satisfy lo < hi");
            GaussRule rule = *gauss_rule(WeightSpec::jacobi(0.0, 0.0), count);
            const double half = 0.5 * (w.p2 - w.p1);
            for (int i = 0; i < count; ++i) {
                rule.nodes[i] = w.p1 + half * (rule.nodes[i] + 1.0);
                rule.weights[i] = SignedLogReal::from_log(1, rule.weights[i].logmag_ld() + std::log(half));
            }
            return rule;
        }
    }
    throw DomainError("unknown weight kind");
}

struct Slot {
    std::once_flag once;
    std::shared_ptr<const GaussRule> rule;
};

using Key = std::tuple<int, double, double, int>;

}  // namespace

SignedLogReal eval_laguerre(const PolynomialSpec& spec, double x, bool orthonormal) {
    if (spec.family != Family::laguerre) throw DomainError("eval_laguerre: wrong family");
    check_degree(spec.degree);
    if (!(spec.alpha > -1.0)) throw DomainError("eval_laguerre: alpha must exceed -1");
    if (!(x >= 0.0)) throw DomainError("eval_laguerre: x must be non-negative");
    const double a = spec.alpha;
    SignedLogReal v = run_recurrence(spec.degree, 1.0, 1.0 + a - x, [&](int k, double cur, double prev) {
        return ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    });
    if (orthonormal) v *= SignedLogReal::from_log(1, -0.5 * log_laguerre_norm_sq(spec.degree, a));
    return v;
}

SignedLogReal eval_gegenbauer(const PolynomialSpec& spec, double x, bool orthonormal) {
    if (spec.family != Family::gegenbauer) throw DomainError("eval_gegenbauer: wrong family");
    check_degree(spec.degree);
    if (!(spec.alpha > -0.5)) throw DomainError("eval_gegenbauer: alpha must exceed -1/2");
    if (!(std::fabs(x) <= 1.0)) throw DomainError("eval_gegenbauer: |x| must not exceed 1");
    const double a = spec.alpha;
    SignedLogReal v = run_recurrence(spec.degree, 1.0, 2.0 * a * x, [&](int k, double cur, double prev) {
        return (2.0 * (k + a) * x * cur - (k + 2.0 * a - 1.0) * prev) / (k + 1.0);
    });
    if (orthonormal) v *= SignedLogReal::from_log(1, -0.5 * log_gegenbauer_norm_sq(spec.degree, a));
    return v;
}

double log_laguerre_norm_sq(int m, double alpha) {
    return log_pochhammer(m + 1.0, alpha);
}

double log_gegenbauer_norm_sq(int m, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("orthonormal Gegenbauer requires alpha > 0");
    return std::log(std::numbers::pi) + (1.0 - 2.0 * alpha) * std::numbers::ln2 +
           log_pochhammer(2.0 * alpha, m) - log_gamma(m + 1.0) - std::log(m + alpha) +
           log_gamma(2.0 * alpha) - 2.0 * log_gamma(alpha);
}

std::vector<double> roots(const PolynomialSpec& spec) {
    check_degree(spec.degree);
    const int m = spec.degree;
    if (m < 1) throw DomainError("roots: degree must be at least 1");
    if (spec.family == Family::laguerre) {
        if (!(spec.alpha > -1.0)) throw DomainError("roots: Laguerre alpha must exceed -1");
        return nodes_of(laguerre_recurrence(spec.alpha, m), m);
    }
    if (!(spec.alpha > -0.5)) throw DomainError("roots: Gegenbauer alpha must exceed -1/2");
    std::vector<double> x = nodes_of(gegenbauer_recurrence(spec.alpha, m), m);
    // exact symmetry about the origin
    for (int i = 0; i < m / 2; ++i) {
        const double s = 0.5 * (x[m - 1 - i] - x[i]);
        x[i] = -s;
        x[m - 1 - i] = s;
    }
    if (m % 2 == 1) x[m / 2] = 0.0;
    return x;
}

std::shared_ptr<const GaussRule> gauss_rule(const WeightSpec& weight, int count) {
    if (count < 1) throw DomainError("gauss_rule: count must be at least 1");
    static std::shared_mutex mutex;
    static std::map<Key, std::shared_ptr<Slot>> cache;
    const Key key{static_cast<int>(weight.kind), weight.p1, weight.p2, count};
    std::shared_ptr<Slot> slot;
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) slot = it->second;
    }
    if (!slot) {
        std::unique_lock lock(mutex);
        auto& entry = cache[key];
        if (!entry) entry = std::make_shared<Slot>();
        slot = entry;
    }
    std::call_once(slot->once, [&] { slot->rule = std::make_shared<const GaussRule>(make_rule(weight, count)); });
    return slot->rule;
}

}  // namespace hydent
