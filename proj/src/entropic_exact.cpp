#include "hydent/entropic_exact.hpp"

#include "hydent/error.hpp"
#include "hydent/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hydent {

namespace {

const double kLogPi = std::log(std::numbers::pi);

bool is_integer(double v) { return std::fabs(v - std::round(v)) < 1e-12; }

bool use_exact_rule(const QuadratureSpec& spec, int degree, double q) {
    return spec.exact_polynomial_rules && (degree == 0 || is_integer(q));
}

int exact_rule_count(int degree, double q) { return degree == 0 ? 1 : static_cast<int>(std::lround(q)) * degree + 1; }

IntegralResult sum_rule(const GaussRule& rule, const std::function<SignedLogReal(double)>& g) {
    std::vector<SignedLogReal> terms;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) terms.push_back(rule.weights[i] * g(rule.nodes[i]));
    IntegralResult r;
    r.value = combine(terms, CombineMode::sum);
    r.evaluations = static_cast<int>(rule.nodes.size());
    return r;
}

std::vector<Breakpoint> root_breaks(const PolynomialSpec& poly, double exponent, const QuadratureSpec& spec) {
    std::vector<Breakpoint> out;
    if (!spec.split_at_roots || poly.degree < 1) return out;
    for (double r : roots(poly)) out.push_back({r, exponent});
    return out;
}

// Peak hints around a mode with the given width, clipped to (lo, hi).
void add_hints(std::vector<Breakpoint>& out, double mode, double width, double lo, double hi) {
    for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
        const double x = mode + k * width;
        if (x > lo && x < hi) out.push_back({x, 0.0});
    }
}

// Integral of (1-x)^a (1+x)^b |C_k^(beta)(x)|^(2q) over [-1, 1], plain weight factor w in front.
IntegralResult jacobi_gegenbauer_integral(double a, double b, int k, double beta, double q,
                                          const QuadratureSpec& spec, double tol) {
    const PolynomialSpec poly{Family::gegenbauer, k, beta};
    auto poly_pow = [&](double x) {
        const SignedLogReal c = eval_gegenbauer(poly, std::clamp(x, -1.0, 1.0));
        return c.is_zero() ? SignedLogReal{} : SignedLogReal::from_log(1, 2.0 * q * c.logmag_ld());
    };
    if (use_exact_rule(spec, k, q)) {
        const auto rule = gauss_rule(WeightSpec::jacobi(a, b), exact_rule_count(k, q));
        return sum_rule(*rule, poly_pow);
    }
    auto f = [&](double x) -> SignedLogReal {
        if (x <= -1.0 || x >= 1.0) return {};
        const SignedLogReal p = poly_pow(x);
        if (p.is_zero()) return {};
        return SignedLogReal::from_log(1, p.logmag_ld() + a * std::log1p(-x) + b * std::log1p(x));
    };
    std::vector<Breakpoint> bps = root_breaks(poly, 2.0 * q, spec);
    const double mode = a + b > 0 ? (b - a) / (a + b) : 0.0;
    const double width = 2.0 * std::sqrt(std::max(a * b, 1.0)) / std::pow(std::max(a + b, 1.0), 1.5);
    add_hints(bps, mode, std::max(width, 1e-6), -1.0, 1.0);
    return integrate(f, -1.0, 1.0, bps, b, a, spec, tol);
}

double renyi_tol(const QuadratureSpec& spec, int D) { return spec.tolerance_for(D); }

}  // namespace

std::string to_string(Space s) { return s == Space::position ? "position" : "momentum"; }
std::string to_string(Method m) { return m == Method::exact ? "exact" : "asymptotic"; }

Space parse_space(const std::string& text) {
    if (text == "position" || text == "pos" || text == "r") return Space::position;
    if (text == "momentum" || text == "mom" || text == "p") return Space::momentum;
    throw ValidationError("unknown space '" + text + "' (expected position or momentum)");
}

void check_renyi_order(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("Renyi order q must be positive");
    if (std::fabs(q - 1.0) < 1e-4) throw DomainError("Renyi order too close to 1; use the Shannon entropy");
}

IntegralResult laguerre_renyi_norm(int n, int l, int D, double q, const QuadratureSpec& spec) {
    if (!(q > 0.0)) throw DomainError("laguerre_renyi_norm: q must be positive");
    const int m = n - l - 1;
    const double alpha = D + 2.0 * l - 2.0;
    const double s = 2.0 * l * q + D - 1.0;
    if (!(s > -1.0)) throw DomainError("laguerre_renyi_norm: convergence condition 2lq + D - 1 > -1 violated");
    const PolynomialSpec poly{Family::laguerre, m, alpha};
    const double log_norm = q * (log_gamma(n - l) - log_gamma(n + l + D - 2.0));
    auto poly_pow = [&](double x) {
        const SignedLogReal v = eval_laguerre(poly, x);
        return v.is_zero() ? SignedLogReal{} : SignedLogReal::from_log(1, 2.0 * q * v.logmag_ld());
    };
    IntegralResult r;
    if (use_exact_rule(spec, m, q)) {
        r = sum_rule(*gauss_rule(WeightSpec::laguerre(s, q), exact_rule_count(m, q)), poly_pow);
    } else {
        auto f = [&](double x) -> SignedLogReal {
            if (!(x > 0.0)) return {};
            const SignedLogReal p = poly_pow(x);
            if (p.is_zero()) return {};
            return SignedLogReal::from_log(1, p.logmag_ld() + s * std::log(x) - q * x);
        };
        std::vector<Breakpoint> bps = root_breaks(poly, 2.0 * q, spec);
        const double mode = std::max(s, 0.0) / q;
        const double width = std::sqrt(std::max(s, 1.0)) / q;
        add_hints(bps, mode, width, 0.0, std::numeric_limits<double>::infinity());
        r = integrate_half_line(f, 0.0, bps, s, q, width, spec, renyi_tol(spec, D));
    }
    r.value *= SignedLogReal::from_log(1, log_norm);
    return r;
}

IntegralResult angular_factor_exact(const QuantumState& state, double q, const QuadratureSpec& spec) {
    if (!(q > 0.0)) throw DomainError("angular_factor_exact: q must be positive");
    const int D = state.D();
    double logv = std::log(2.0 * std::numbers::pi) + q * harmonic_norm_sq(state).logmag();
    double rel = 0.0;
    int evals = 0;
    auto alpha = [D](int j) { return 0.5 * (D - j - 1); };
    for (const auto& f : angular_factors(state)) {
        if (f.degree() == 0) {
            const double e_first = q * f.lower + alpha(f.j_first) - 0.5;
            const double e_last = q * f.lower + alpha(f.j_last) - 0.5;
            const int count = f.j_last - f.j_first + 1;
            logv += log_gamma(e_last + 1.0) - log_gamma(e_first + 1.5) + 0.5 * count * kLogPi;
        } else {
            const double e = q * f.lower + alpha(f.j_first) - 0.5;
            const double beta = alpha(f.j_first) + f.lower;
            const IntegralResult r = jacobi_gegenbauer_integral(e, e, f.degree(), beta, q, spec, renyi_tol(spec, D));
            logv += r.value.logmag();
            rel += r.rel_error;
            evals += r.evaluations;
        }
    }
    return {SignedLogReal::from_log(1, logv), rel, evals};
}

IntegralResult gegenbauer_renyi_integral(int n, int l, int D, double q, const QuadratureSpec& spec) {
    if (!(q > 0.0)) throw DomainError("gegenbauer_renyi_integral: q must be positive");
    const double a = l * q - 1.0 + 0.5 * D;
    const double b = (l + 1.0) * q - 1.0 + (q - 0.5) * D;
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("momentum Renyi integral diverges for this q");
    return jacobi_gegenbauer_integral(a, b, n - l - 1, l + 0.5 * (D - 1), q, spec, renyi_tol(spec, D));
}

PartValue position_radial_renyi_exact(int n, int l, int D, double Z, double q, const QuadratureSpec& spec) {
    check_renyi_order(q);
    const double eta = n + 0.5 * (D - 3);
    const IntegralResult N = laguerre_renyi_norm(n, l, D, q, spec);
    const double c = D * (1.0 - q);
    const double value = ((c - q) * std::log(eta) - (c + q) * std::numbers::ln2 - c * std::log(Z) + N.value.logmag()) /
                         (1.0 - q);
    return {value, N.rel_error / std::fabs(1.0 - q)};
}

PartValue momentum_radial_renyi_exact(int n, int l, int D, double Z, double q, const QuadratureSpec& spec) {
    check_renyi_order(q);
    const double eta = n + 0.5 * (D - 3);
    const IntegralResult I = gegenbauer_renyi_integral(n, l, D, q, spec);
    const double value =
        -D * std::log(eta / Z) + (q * log_momentum_constant(n, l, D) + I.value.logmag()) / (1.0 - q);
    return {value, I.rel_error / std::fabs(1.0 - q)};
}

PartValue angular_renyi_exact(const QuantumState& state, double q, const QuadratureSpec& spec) {
    check_renyi_order(q);
    const IntegralResult L = angular_factor_exact(state, q, spec);
    return {L.value.logmag() / (1.0 - q), L.rel_error / std::fabs(1.0 - q)};
}

EntropyResult renyi_entropy(const QuantumState& state, double q, Space space, const QuadratureSpec& spec) {
    check_renyi_order(q);
    spec.validate();
    const PartValue radial = space == Space::position
                                 ? position_radial_renyi_exact(state.n(), state.l(), state.D(), state.Z(), q, spec)
                                 : momentum_radial_renyi_exact(state.n(), state.l(), state.D(), state.Z(), q, spec);
    const PartValue angular = angular_renyi_exact(state, q, spec);
    EntropyResult r;
    r.space = space;
    r.method = Method::exact;
    r.q = q;
    r.radial = radial.value;
    r.angular = angular.value;
    r.value = radial.value + angular.value;
    r.err_est = radial.err + angular.err;
    return r;
}

namespace {

PartValue position_radial_shannon(const QuantumState& s, const QuadratureSpec& spec) {
    const DerivedParams d = derive(s);
    const int m = s.n() - s.l() - 1;
    const double alpha = s.D() + 2.0 * s.l() - 2.0;
    const PolynomialSpec poly{Family::laguerre, m, alpha};
    const double log_u0 = -std::log(2.0 * d.eta);
    // integrand u(x) (2l log x - x + log Lhat^2) with u the radial probability in x
    auto f = [&](double x) -> SignedLogReal {
        if (!(x > 0.0)) return {};
        const SignedLogReal L = eval_laguerre(poly, x, true);
        if (L.is_zero()) return {};
        const double logL2 = 2.0 * L.logmag();
        const double g = 2.0 * s.l() * std::log(x) - x + logL2;
        if (g == 0.0) return {};
        const double logu = log_u0 + (alpha + 1.0) * std::log(x) - x + logL2;
        return SignedLogReal::from_log(g > 0 ? 1 : -1, logu + std::log(std::fabs(g)));
    };
    std::vector<Breakpoint> bps = root_breaks(poly, 2.0, spec);
    const double mode = alpha + 1.0;
    const double width = std::sqrt(std::max(mode, 1.0));
    add_hints(bps, mode, width, 0.0, std::numeric_limits<double>::infinity());
    const IntegralResult r =
        integrate_half_line(f, 0.0, bps, alpha + 1.0, 1.0, width, spec, spec.tolerance_for(s.D()));
    const double integral = r.value.to_double();
    const double value = s.D() * std::log(d.lambda) + std::log(2.0 * d.eta) - integral;
    return {value, r.rel_error * std::fabs(integral)};
}

PartValue momentum_radial_shannon(const QuantumState& s, const QuadratureSpec& spec) {
    const DerivedParams d = derive(s);
    const int D = s.D(), l = s.l();
    const int m = s.n() - l - 1;
    const double logA = log_momentum_constant(s.n(), l, D);
    const PolynomialSpec poly{Family::gegenbauer, m, d.L + 1.0};
    const double a = l - 1.0 + 0.5 * D;
    const double b = l + 0.5 * D;
    auto f = [&](double y) -> SignedLogReal {
        if (y <= -1.0 || y >= 1.0) return {};
        const SignedLogReal C = eval_gegenbauer(poly, y);
        if (C.is_zero()) return {};
        const double logC2 = 2.0 * C.logmag();
        const double g = l * std::log1p(-y) + (D + l + 1.0) * std::log1p(y) + logC2;
        if (g == 0.0) return {};
        const double logv = logA + a * std::log1p(-y) + b * std::log1p(y) + logC2;
        return SignedLogReal::from_log(g > 0 ? 1 : -1, logv + std::log(std::fabs(g)));
    };
    std::vector<Breakpoint> bps = root_breaks(poly, 2.0, spec);
    const double mode = (b - a) / (a + b);
    const double width = 2.0 * std::sqrt(std::max(a * b, 1.0)) / std::pow(a + b, 1.5);
    add_hints(bps, mode, width, -1.0, 1.0);
    const IntegralResult r = integrate(f, -1.0, 1.0, bps, b, a, spec, spec.tolerance_for(D));
    const double integral = r.value.to_double();
    const double value = -D * std::log(d.eta / s.Z()) - logA - integral;
    return {value, r.rel_error * std::fabs(integral)};
}

PartValue angular_shannon(const QuantumState& s, const QuadratureSpec& spec) {
    const int D = s.D();
    auto alpha = [D](int j) { return 0.5 * (D - j - 1); };
    double sum = 0.0, err = 0.0;
    for (const auto& f : angular_factors(s)) {
        const int mu = f.lower;
        if (f.degree() == 0) {
            if (mu == 0) continue;
            const double c_first = mu + alpha(f.j_first) - 0.5;
            const double c_last = mu + alpha(f.j_last) - 0.5;
            sum += mu * (digamma(c_last + 1.0) - digamma(c_first + 1.5));
            continue;
        }
        const double beta = alpha(f.j_first) + mu;
        const double c = beta - 0.5;
        const int k = f.degree();
        const PolynomialSpec poly{Family::gegenbauer, k, beta};
        const double logA = -log_gegenbauer_norm_sq(k, beta);
        auto g = [&](double x) -> SignedLogReal {
            if (x <= -1.0 || x >= 1.0) return {};
            const SignedLogReal C = eval_gegenbauer(poly, x);
            if (C.is_zero()) return {};
            const double logC2 = 2.0 * C.logmag();
            const double l1mx2 = std::log1p(-x * x);
            const double h = logC2 + mu * l1mx2;
            if (h == 0.0) return {};
            return SignedLogReal::from_log(h > 0 ? 1 : -1, logA + c * l1mx2 + logC2 + std::log(std::fabs(h)));
        };
        std::vector<Breakpoint> bps = root_breaks(poly, 2.0, spec);
        add_hints(bps, 0.0, 1.0 / std::sqrt(2.0 * c + 1.0), -1.0, 1.0);
        const IntegralResult r = integrate(g, -1.0, 1.0, bps, c, c, spec, spec.tolerance_for(D));
        const double v = r.value.to_double();
        sum += v;
        err += r.rel_error * std::fabs(v);
    }
    return {-harmonic_norm_sq(s).logmag() - sum, err};
}

}  // namespace

EntropyResult shannon_exact(const QuantumState& state, Space space, const QuadratureSpec& spec) {
    spec.validate();
    const PartValue radial =
        space == Space::position ? position_radial_shannon(state, spec) : momentum_radial_shannon(state, spec);
    const PartValue angular = angular_shannon(state, spec);
    EntropyResult r;
    r.space = space;
    r.method = Method::exact;
    r.q = 1.0;
    r.radial = radial.value;
    r.angular = angular.value;
    r.value = radial.value + angular.value;
    r.err_est = radial.err + angular.err;
    return r;
}

IntegralResult entropic_moment_direct(const QuantumState& state, double q, Space space, const QuadratureSpec& spec) {
    if (!(q > 0.0)) throw DomainError("entropic_moment_direct: q must be positive");
    spec.validate();
    const DerivedParams d = derive(state);
    const int D = state.D();
    const double tol = spec.tolerance_for(D);
    IntegralResult radial;
    if (space == Space::position) {
        auto f = [&](double r) -> SignedLogReal {
            if (!(r > 0.0)) return {};
            const SignedLogReal rho = position_radial_density(state, r);
            if (rho.is_zero()) return {};
            return SignedLogReal::from_log(1, q * rho.logmag_ld() + (D - 1.0) * std::log(r));
        };
        const PolynomialSpec poly{Family::laguerre, state.n() - state.l() - 1, D + 2.0 * state.l() - 2.0};
        std::vector<Breakpoint> bps;
        if (spec.split_at_roots && poly.degree > 0)
            for (double x : roots(poly)) bps.push_back({x * d.lambda, 2.0 * q});
        const double s = 2.0 * state.l() * q + D - 1.0;
        const double mode = d.lambda * std::max(s, 0.0) / q;
        const double width = d.lambda * std::sqrt(std::max(s, 1.0)) / q;
        add_hints(bps, mode, width, 0.0, std::numeric_limits<double>::infinity());
        radial = integrate_half_line(f, 0.0, bps, s, q / d.lambda, width, spec, tol);
    } else {
        const double scale = state.Z() / d.eta;
        auto f = [&](double y) -> SignedLogReal {
            if (y <= -1.0 || y >= 1.0) return {};
            const double u = std::sqrt((1.0 - y) / (1.0 + y));
            const double p = scale * u;
            const SignedLogReal M2 = momentum_radial_density(state, p);
            if (M2.is_zero()) return {};
            const double jac = std::log(scale) - std::log(u) - 2.0 * std::log1p(y);
            return SignedLogReal::from_log(1, q * M2.logmag_ld() + (D - 1.0) * std::log(p) + jac);
        };
        const int l = state.l();
        const PolynomialSpec poly{Family::gegenbauer, state.n() - l - 1, d.L + 1.0};
        const double a = l * q - 1.0 + 0.5 * D;
        const double b = (l + 1.0) * q - 1.0 + (q - 0.5) * D;
        if (!(b > -1.0)) throw DomainError("momentum entropic moment diverges for this q");
        std::vector<Breakpoint> bps = root_breaks(poly, 2.0 * q, spec);
        const double width = 2.0 * std::sqrt(std::max(a * b, 1.0)) / std::pow(std::max(a + b, 1.0), 1.5);
        add_hints(bps, (b - a) / (a + b), width, -1.0, 1.0);
        radial = integrate(f, -1.0, 1.0, bps, b, a, spec, tol);
    }
    const IntegralResult ang = angular_factor_exact(state, q, spec);
    return {radial.value * ang.value, radial.rel_error + ang.rel_error, radial.evaluations + ang.evaluations};
}

TsallisResult tsallis_and_disequilibrium(const QuantumState& state, double q, Space space,
                                         const QuadratureSpec& spec) {
    const EntropyResult rq = renyi_entropy(state, q, space, spec);
    const double r2 = q == 2.0 ? rq.value : renyi_entropy(state, 2.0, space, spec).value;
    TsallisResult t;
    t.tsallis = std::expm1((1.0 - q) * rq.value) / (1.0 - q);
    t.disequilibrium = std::exp(-r2);
    return t;
}

}  // namespace hydent
