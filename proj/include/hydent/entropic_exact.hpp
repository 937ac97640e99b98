#pragma once

#include "hydent/hydrogenic.hpp"
#include "hydent/logspace.hpp"
#include "hydent/quadrature.hpp"

#include <string>

namespace hydent {

enum class Space { position, momentum };
enum class Method { exact, asymptotic };

std::string to_string(Space s);
std::string to_string(Method m);
Space parse_space(const std::string& text);

struct EntropyResult {
    double value = 0.0;
    Space space = Space::position;
    Method method = Method::exact;
    double radial = 0.0;
    double angular = 0.0;
    double q = 1.0;
    double err_est = 0.0;
    int order = -1;
    bool conjecture = false;
    bool swap_derived = false;
};

// Radial part with its absolute error estimate.
struct PartValue {
    double value = 0.0;
    double err = 0.0;
};

// N_{n,l}(D,q): integral of ([orthonormal Laguerre]^2 x^alpha e^-x)^q x^beta over [0, inf).
IntegralResult laguerre_renyi_norm(int n, int l, int D, double q, const QuadratureSpec& spec);

// Lambda_{l,{mu}}: integral of |Y|^(2q) over the sphere.
IntegralResult angular_factor_exact(const QuantumState& state, double q, const QuadratureSpec& spec);

// I_{n,l}(q,D): the Gegenbauer functional behind the momentum radial entropy.
IntegralResult gegenbauer_renyi_integral(int n, int l, int D, double q, const QuadratureSpec& spec);

PartValue position_radial_renyi_exact(int n, int l, int D, double Z, double q, const QuadratureSpec& spec);
PartValue momentum_radial_renyi_exact(int n, int l, int D, double Z, double q, const QuadratureSpec& spec);
PartValue angular_renyi_exact(const QuantumState& state, double q, const QuadratureSpec& spec);

EntropyResult renyi_entropy(const QuantumState& state, double q, Space space, const QuadratureSpec& spec = {});
EntropyResult shannon_exact(const QuantumState& state, Space space, const QuadratureSpec& spec = {});

// W_q of the full density by direct quadrature of the hydrogenic densities times Lambda.
IntegralResult entropic_moment_direct(const QuantumState& state, double q, Space space,
                                      const QuadratureSpec& spec = {});

struct TsallisResult {
    double tsallis = 0.0;
    double disequilibrium = 0.0;
};

TsallisResult tsallis_and_disequilibrium(const QuantumState& state, double q, Space space,
                                         const QuadratureSpec& spec = {});

// Reject q <= 0 and |q - 1| < 1e-4.
void check_renyi_order(double q);

}  // namespace hydent
