#include "hydent/asymptotics.hpp"

#include "hydent/error.hpp"
#include "hydent/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hydent {

namespace {

const double kLogPi = std::log(std::numbers::pi);
const double kLog2Pi = std::log(2.0 * std::numbers::pi);

void check_momentum_order(double q) {
    check_renyi_order(q);
    if (q <= kMomentumMinOrder) throw DomainError("momentum asymptotics require q > 0.55");
}

// |q-1|^{2 k q} with 0^0 = 1, in log form.
double log_abs_pow(double q, int k) { return k == 0 ? 0.0 : 2.0 * k * q * std::log(std::fabs(q - 1.0)); }

bool constant_chain(const QuantumState& s) {
    for (const auto& f : angular_factors(s))
        if (f.degree() != 0) return false;
    return true;
}

}  // namespace

double AsymptoticSeries::value(double D) const {
    const double lg = std::log(D);
    return d_log_d * D * lg + d * D + log_d * lg + constant;
}

AsymptoticSeries AsymptoticSeries::operator+(const AsymptoticSeries& rhs) const {
    return {d_log_d + rhs.d_log_d, d + rhs.d, log_d + rhs.log_d, constant + rhs.constant, remainder};
}

double j1_d1(const J1Params& p, D1Form form) {
    const double s = p.sigma, l = p.lambda, k = p.kappa, m = p.m;
    const double num = 1.0 - 12.0 * k * m * s * l + 6.0 * s * s * l * l - 12.0 * s * s * l - 6.0 * s * l * l +
                       12.0 * s * l + 6.0 * k * k * m * m + 12.0 * k * m * s - 12.0 * k * m * m * l -
                       12.0 * k * m * l + 6.0 * k * m * l * l + 6.0 * k * m * m * l * l + l * l + 6.0 * s * s -
                       2.0 * l - 6.0 * s + 6.0 * k * m * m;
    double d1 = num / (12.0 * (l - 1.0) * (l - 1.0));
    if (form == D1Form::corrected) d1 += k * ((12.0 * l - 6.0) * m - 6.0 * m * m) / (12.0 * (l - 1.0) * (l - 1.0));
    return d1;
}

SignedLogReal j1_asymptotic(const J1Params& p, D1Form form) {
    if (!(p.lambda > 0.0) || p.lambda == 1.0) throw DomainError("Laguerre functional requires 0 < lambda != 1");
    if (!(p.kappa > 0.0) || !(p.alpha > 0.0) || p.m < 0) throw DomainError("Laguerre functional parameter out of range");
    const double a = p.alpha, km = p.kappa * p.m;
    const double logv = (a + p.sigma) * std::log(a) - a - (a + p.sigma + km) * std::log(p.lambda) +
                        km * std::log(std::fabs(p.lambda - 1.0)) + 0.5 * std::log(2.0 * std::numbers::pi / a) +
                        km * std::log(a) - p.kappa * log_gamma(p.m + 1.0);
    SignedLogReal v = SignedLogReal::from_log(1, logv);
    if (p.order >= 1) v *= SignedLogReal::from_double(1.0 + j1_d1(p, form) / a);
    return v;
}

SignedLogReal j2_asymptotic(const J2Params& p) {
    if (!(p.c > 0.0) || !(p.d > 0.0) || !(p.kappa > 0.0) || !(p.alpha > 0.0) || p.m < 0)
        throw DomainError("Gegenbauer functional parameter out of range");
    if (p.c > p.d) return j2_asymptotic({p.b, p.a, p.d, p.c, p.kappa, p.m, p.alpha});
    if (p.c == p.d) {
        return SignedLogReal::from_log(1, 0.5 * std::log(std::numbers::pi / (p.alpha * p.c)) +
                                              p.m * std::log(2.0 * p.alpha) - log_gamma(p.m + 1.0));
    }
    const double c = p.c, d = p.d, s = c + d;
    const double phi = -c * std::log(2.0 * c / s) - d * std::log(2.0 * d / s);
    const double log_a1 = std::log(2.0) + 0.5 * std::log(c * d / (s * s * s));
    const double km = p.kappa * p.m;
    const double log_d0 =
        log_a1 + p.a * std::log(2.0 * c / s) + p.b * std::log(2.0 * d / s) + km * std::log((d - c) / s);
    const double logv = -p.alpha * phi + 0.5 * std::log(2.0 * std::numbers::pi / p.alpha) + km * std::numbers::ln2 +
                        p.kappa * log_pochhammer(p.alpha, p.m) - p.kappa * log_gamma(p.m + 1.0) + log_d0;
    return SignedLogReal::from_log(1, logv);
}

IntegralResult j1_quadrature(const J1Params& p, const QuadratureSpec& spec) {
    const double e0 = p.alpha + p.sigma - 1.0;
    if (!(e0 > -1.0) || !(p.lambda > 0.0)) throw DomainError("J1 integral diverges");
    const PolynomialSpec poly{Family::laguerre, p.m, p.alpha};
    auto f = [&](double x) -> SignedLogReal {
        if (!(x > 0.0)) return {};
        const SignedLogReal L = eval_laguerre(poly, x);
        if (L.is_zero()) return {};
        return SignedLogReal::from_log(1, p.kappa * L.logmag_ld() + e0 * std::log(x) - p.lambda * x);
    };
    std::vector<Breakpoint> bps;
    if (p.m > 0)
        for (double r : roots(poly)) bps.push_back({r, p.kappa});
    const double width = std::sqrt(std::max(e0, 1.0)) / p.lambda;
    const double mode = std::max(e0 + p.kappa * p.m, 0.0) / p.lambda;
    for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0})
        if (mode + k * width > 0.0) bps.push_back({mode + k * width, 0.0});
    return integrate_half_line(f, 0.0, bps, e0, p.lambda, width, spec, spec.rel_tol);
}

IntegralResult j2_quadrature(const J2Params& p, const QuadratureSpec& spec) {
    const double ea = p.c * p.alpha + p.a, eb = p.d * p.alpha + p.b;
    if (!(ea > -1.0) || !(eb > -1.0)) throw DomainError("J2 integral diverges");
    const PolynomialSpec poly{Family::gegenbauer, p.m, p.alpha};
    auto f = [&](double x) -> SignedLogReal {
        if (x <= -1.0 || x >= 1.0) return {};
        const SignedLogReal C = eval_gegenbauer(poly, x);
        if (C.is_zero()) return {};
        return SignedLogReal::from_log(1, p.kappa * C.logmag_ld() + ea * std::log1p(-x) + eb * std::log1p(x));
    };
    std::vector<Breakpoint> bps;
    if (p.m > 0)
        for (double r : roots(poly)) bps.push_back({r, p.kappa});
    const double mode = (eb - ea) / (ea + eb);
    const double width = 2.0 * std::sqrt(std::max(ea * eb, 1.0)) / std::pow(std::max(ea + eb, 1.0), 1.5);
    for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
        const double x = mode + k * width;
        if (x > -1.0 && x < 1.0) bps.push_back({x, 0.0});
    }
    return integrate(f, -1.0, 1.0, bps, eb, ea, spec, spec.rel_tol);
}

double log_e_tilde(const QuantumState& s) {
    const int D = s.D();
    double v = 0.0;
    for (const auto& f : angular_factors(s)) {
        const int k = f.degree();
        if (k == 0) continue;
        const double beta = 0.5 * (D - f.j_first - 1) + f.lower;
        v += 2.0 * k * std::log(beta) - log_pochhammer(2.0 * beta, k) - log_pochhammer(beta, k);
    }
    return v;
}

double log_m_tilde(const QuantumState& s, double q) {
    const int am = std::abs(s.m());
    double v = q * (s.l() - am) * std::log(4.0);
    int r = 0;
    for (const auto& f : angular_factors(s)) {
        const int k = f.degree();
        if (k == 0) continue;
        ++r;
        v += log_gamma(q * k + 0.5) - q * log_gamma(k + 1.0);
    }
    return v - 0.5 * r * kLogPi;
}

namespace {

// log of Etilde^q Mtilde Gamma(1+q|m|)/Gamma(1+|m|)^q
double angular_bracket(const QuantumState& s, double q) {
    const int am = std::abs(s.m());
    return q * log_e_tilde(s) + log_m_tilde(s, q) + log_gamma(1.0 + q * am) - q * log_gamma(1.0 + am);
}

}  // namespace

double angular_renyi_asymptotic(const QuantumState& s, double q) {
    check_renyi_order(q);
    const double h = 0.5 * s.D();
    const double l = s.l();
    return (q * log_gamma(h + l) - log_gamma(h + q * l)) / (1.0 - q) + h * kLogPi +
           (angular_bracket(s, q) + (1.0 - q) * std::numbers::ln2) / (1.0 - q);
}

AsymptoticSeries angular_renyi_series(const QuantumState& s, double q) {
    check_renyi_order(q);
    AsymptoticSeries a;
    a.d_log_d = -0.5;
    a.d = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
    a.log_d = 0.5;
    a.constant = (angular_bracket(s, q) + 0.5 * (q - 1.0) * kLogPi) / (1.0 - q);
    return a;
}

AsymptoticSeries radial_position_renyi_asymptotic(int n, int l, int D, double Z, double q, EtaPolicy) {
    check_renyi_order(q);
    if (D < 2 || n < 1 || l < 0 || l >= n || !(Z > 0.0)) throw ValidationError("invalid (n, l, D, Z)");
    const double log_f = 0.5 * (1.0 - q) * kLog2Pi + log_abs_pow(q, n - l - 1) - q * log_gamma(n - l) +
                         (2.0 * n - 3.0) * (1.0 - q) - 2.0 * q * (n - 1) * std::log(q);
    AsymptoticSeries a;
    a.d_log_d = 2.0;
    a.d = std::log(q) / (q - 1.0) - std::log(4.0 * Z) - 1.0;
    a.log_d = (q * (n - l - 0.5) - 0.5) / (1.0 - q);
    a.constant = log_f / (1.0 - q);
    return a;
}

AsymptoticSeries total_position_renyi_asymptotic(const QuantumState& s, double q, EtaPolicy policy) {
    return radial_position_renyi_asymptotic(s.n(), s.l(), s.D(), s.Z(), q, policy) + angular_renyi_series(s, q);
}

AsymptoticSeries radial_momentum_renyi_asymptotic(int n, int l, int D, double Z, double q, EtaPolicy policy) {
    check_momentum_order(q);
    if (D < 2 || n < 1 || l < 0 || l >= n || !(Z > 0.0)) throw ValidationError("invalid (n, l, D, Z)");
    const double log_q0 = 0.5 * (1.0 - q) * kLog2Pi - q * log_gamma(n - l) +
                          (q * (l + 1.0) - 0.5) * std::log(2.0 * q - 1.0) + log_abs_pow(q, n - l - 1) -
                          (q * (2.0 * n - 1.0) - 0.5) * std::log(q);
    AsymptoticSeries a;
    a.d_log_d = -1.0;
    a.d = std::log(2.0 * Z) +
          ((2.0 * q - 1.0) * std::log(2.0 * q - 1.0) - 2.0 * q * std::log(q)) / (2.0 * (1.0 - q));
    a.log_d = (q * (n - l - 0.5) - 0.5) / (1.0 - q);
    a.constant = log_q0 / (1.0 - q);
    if (policy == EtaPolicy::exact) a.constant -= 2.0 * n - 3.0;
    return a;
}

AsymptoticSeries total_momentum_renyi_asymptotic(const QuantumState& s, double q, EtaPolicy policy) {
    return radial_momentum_renyi_asymptotic(s.n(), s.l(), s.D(), s.Z(), q, policy) + angular_renyi_series(s, q);
}

double total_renyi_special(const QuantumState& s, double q, Space space, EtaPolicy policy) {
    if (!constant_chain(s)) throw ValidationError("special displays apply to ns and circular chains only");
    const AsymptoticSeries radial =
        space == Space::position ? radial_position_renyi_asymptotic(s.n(), s.l(), s.D(), s.Z(), q, policy)
                                 : radial_momentum_renyi_asymptotic(s.n(), s.l(), s.D(), s.Z(), q, policy);
    return radial.value(s.D()) + angular_renyi_asymptotic(s, q);
}

double circular_position_constant(int n, double q) {
    return (log_gamma(1.0 + q * (n - 1)) - 2.0 * q * (n - 1) * std::log(q) - q * log_gamma(n)) / (1.0 - q) +
           2.0 * n + 0.5 * std::numbers::ln2 - 3.0;
}

EntropyResult renyi_asymptotic(const QuantumState& s, double q, Space space, EtaPolicy policy) {
    const AsymptoticSeries radial =
        space == Space::position ? radial_position_renyi_asymptotic(s.n(), s.l(), s.D(), s.Z(), q, policy)
                                 : radial_momentum_renyi_asymptotic(s.n(), s.l(), s.D(), s.Z(), q, policy);
    EntropyResult r;
    r.space = space;
    r.method = Method::asymptotic;
    r.q = q;
    r.order = 0;
    r.radial = radial.value(s.D());
    r.angular = angular_renyi_asymptotic(s, q);
    r.value = r.radial + r.angular;
    r.swap_derived = space == Space::momentum && q < 1.0;
    return r;
}

ShannonConjecture shannon_conjectures(const QuantumState& s, Space space) {
    const double Z = s.Z();
    const double pi = std::numbers::pi, e = std::numbers::e;
    const double h = 0.5 * s.D();
    ShannonConjecture c;
    c.angular = -log_gamma(h) + h * std::log(pi);
    if (space == Space::position) {
        c.total = {1.5, std::log(std::sqrt(e * pi) / (std::sqrt(8.0) * Z)), 0.0, 0.0, "o(D)"};
        c.radial = {2.0, -std::log(4.0 * Z), 0.0, 0.0, "o(D)"};
    } else {
        c.total = {-1.5, std::log(Z * std::sqrt(8.0 * e * pi)), 0.0, 0.0, "o(D)"};
        c.radial = {-1.0, std::log(2.0 * Z), 0.0, 0.0, "o(D)"};
    }
    return c;
}

double conjugate_order(double q) {
    if (!(q > 0.5)) throw DomainError("conjugate order requires q > 1/2");
    return q / (2.0 * q - 1.0);
}

double uncertainty_sum_limit(double q) {
    const double p = conjugate_order(q);
    if (q == 1.0) return std::log(std::numbers::pi * std::numbers::e);
    return kLog2Pi + std::log(2.0 * p) / (2.0 * p - 2.0) + std::log(2.0 * q) / (2.0 * q - 2.0);
}

}  // namespace hydent
