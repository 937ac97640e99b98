#pragma once

#include "hydent/logspace.hpp"

#include <functional>
#include <vector>

namespace hydent {

struct QuadratureSpec {
    int nodes = 64;
    int max_levels = 10;
    double rel_tol = 1e-10;
    bool split_at_roots = true;
    // Closed Gauss rules when the integrand is a weight times a polynomial.
    bool exact_polynomial_rules = false;

    void validate() const;
    // Tolerance relaxed to 1e-8 above D = 500.
    double tolerance_for(int D) const;
};

using LogIntegrand = std::function<SignedLogReal(double)>;

// Interior point where the integrand behaves like |x - at|^exponent.
struct Breakpoint {
    double at = 0.0;
    double exponent = 0.0;
};

struct IntegralResult {
    SignedLogReal value;
    double rel_error = 0.0;
    int evaluations = 0;
};

// Global adaptive Gauss-Jacobi quadrature on [lo, hi]. Endpoint exponents
// describe algebraic behaviour at lo and hi; exponents <= -1 are rejected.
IntegralResult integrate(const LogIntegrand& f, double lo, double hi, std::vector<Breakpoint> interior,
                         double exponent_lo, double exponent_hi, const QuadratureSpec& spec, double tol);

// Same on [lo, inf) for integrands decaying like exp(-decay_rate x).
// scale_hint sets the marching width beyond the last breakpoint.
IntegralResult integrate_half_line(const LogIntegrand& f, double lo, std::vector<Breakpoint> interior,
                                   double exponent_lo, double decay_rate, double scale_hint,
                                   const QuadratureSpec& spec, double tol);

}  // namespace hydent
