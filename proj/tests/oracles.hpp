#pragma once

// Independent reference computations used only by the tests: closed forms via
// std::lgamma and brute-force composite Simpson sums in long double.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline long double simpson(const std::function<long double(long double)>& f, long double lo, long double hi,
                           int panels) {
    if (panels % 2) ++panels;
    const long double h = (hi - lo) / panels;
    long double s = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i) s += f(lo + i * h) * (i % 2 ? 4.0L : 2.0L);
    return s * h / 3.0L;
}

inline double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

inline double log_sphere_area(int D) {
    return std::log(2.0) + 0.5 * D * std::log(std::numbers::pi) - std::lgamma(0.5 * D);
}

// Ground state position Renyi entropy: radial Gamma integral plus the constant harmonic.
inline double ground_position_renyi(int D, double Z, double q) {
    const double lambda = (1.0 + 0.5 * (D - 3)) / (2.0 * Z);
    return D * std::log(lambda) + D * std::log(q) / (q - 1.0) + std::lgamma(D) + log_sphere_area(D);
}

// Ground state momentum Renyi entropy from K^{2q} (Z/eta)^D B(D/2, (D+1)q - D/2) / 2.
inline double ground_momentum_renyi(int D, double Z, double q) {
    const double eta = 1.0 + 0.5 * (D - 3);
    // K^2 fixed by normalisation: K^2 (Z/eta)^D B(D/2, D/2+1)/2 = 1 over the radial measure p^{D-1} dp.
    const double log_k2 = -(D * std::log(Z / eta)) + std::log(2.0) -
                          (std::lgamma(0.5 * D) + std::lgamma(0.5 * D + 1.0) - std::lgamma(D + 1.0));
    const double s = (D + 1.0) * q;
    const double log_b = std::lgamma(0.5 * D) + std::lgamma(s - 0.5 * D) - std::lgamma(s);
    const double log_w = q * log_k2 + D * std::log(Z / eta) + log_b - std::log(2.0);
    return log_w / (1.0 - q) + log_sphere_area(D);
}

}  // namespace oracle
