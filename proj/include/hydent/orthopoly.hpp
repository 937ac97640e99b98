#pragma once

#include "hydent/logspace.hpp"

#include <memory>
#include <vector>

namespace hydent {

enum class Family { laguerre, gegenbauer };

struct PolynomialSpec {
    Family family = Family::laguerre;
    int degree = 0;
    double alpha = 0.0;
};

inline constexpr int kMaxDegree = 64;

// L_m^(alpha)(x); orthonormal scales by sqrt(m!/Gamma(m+alpha+1)).
SignedLogReal eval_laguerre(const PolynomialSpec& spec, double x, bool orthonormal = false);

// C_m^(alpha)(x); orthonormal divides by the root of the weight-(1-x^2)^(alpha-1/2) norm.
SignedLogReal eval_gegenbauer(const PolynomialSpec& spec, double x, bool orthonormal = false);

// log of the squared norms of the standard polynomials under their weights.
double log_laguerre_norm_sq(int m, double alpha);
double log_gegenbauer_norm_sq(int m, double alpha);

// All real roots in ascending order, from the Jacobi matrix plus one Newton step.
std::vector<double> roots(const PolynomialSpec& spec);

struct GaussRule {
    std::vector<double> nodes;
    std::vector<SignedLogReal> weights;
    int exactness = 0;
};

struct WeightSpec {
    enum class Kind { laguerre, jacobi, legendre };
    Kind kind = Kind::legendre;
    double p1 = -1.0;
    double p2 = 1.0;

    // x^alpha e^(-scale x) on [0, inf)
    static WeightSpec laguerre(double alpha, double scale = 1.0) { return {Kind::laguerre, alpha, scale}; }
    // (1-x)^a (1+x)^b on [-1, 1]
    static WeightSpec jacobi(double a, double b) { return {Kind::jacobi, a, b}; }
    // unit weight on [lo, hi]
    static WeightSpec legendre(double lo = -1.0, double hi = 1.0) { return {Kind::legendre, lo, hi}; }
};

// Cached Golub-Welsch rule with exactness 2 count - 1.
std::shared_ptr<const GaussRule> gauss_rule(const WeightSpec& weight, int count);

}  // namespace hydent
