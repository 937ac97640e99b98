#pragma once

#include "hydent/entropic_exact.hpp"
#include "hydent/hydrogenic.hpp"
#include "hydent/logspace.hpp"
#include "hydent/quadrature.hpp"

#include <string>

namespace hydent {

// a D log D + b D + c log D + k, with the order of the dropped remainder.
struct AsymptoticSeries {
    double d_log_d = 0.0;
    double d = 0.0;
    double log_d = 0.0;
    double constant = 0.0;
    std::string remainder = "O(1/D)";

    double value(double D) const;
    AsymptoticSeries operator+(const AsymptoticSeries& rhs) const;
};

// exact: eta = n + (D-3)/2 kept in the constants; leading: eta ~ D/2 as printed.
enum class EtaPolicy { exact, leading };

// corrected matches quadrature for every m; printed is the 9-term form as published.
enum class D1Form { corrected, printed };

struct J1Params {
    double sigma = 1.0;
    double lambda = 2.0;
    double kappa = 2.0;
    int m = 0;
    double alpha = 100.0;
    int order = 0;
};

struct J2Params {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double d = 2.0;
    double kappa = 2.0;
    int m = 0;
    double alpha = 100.0;
};

double j1_d1(const J1Params& p, D1Form form = D1Form::corrected);
SignedLogReal j1_asymptotic(const J1Params& p, D1Form form = D1Form::corrected);
SignedLogReal j2_asymptotic(const J2Params& p);

// Quadrature values of the functionals themselves.
IntegralResult j1_quadrature(const J1Params& p, const QuadratureSpec& spec = {});
IntegralResult j2_quadrature(const J2Params& p, const QuadratureSpec& spec = {});

// log Etilde(D,{mu}) and log Mtilde(D,q,{mu}) from the run-length chain.
double log_e_tilde(const QuantumState& state);
double log_m_tilde(const QuantumState& state, double q);

// Gamma-ratio form of the angular Renyi entropy; exact for constant chains.
double angular_renyi_asymptotic(const QuantumState& state, double q);
// Its Stirling expansion with Etilde folded into the constant at the state's D.
AsymptoticSeries angular_renyi_series(const QuantumState& state, double q);

AsymptoticSeries radial_position_renyi_asymptotic(int n, int l, int D, double Z, double q,
                                                  EtaPolicy policy = EtaPolicy::exact);
AsymptoticSeries total_position_renyi_asymptotic(const QuantumState& state, double q,
                                                 EtaPolicy policy = EtaPolicy::exact);
AsymptoticSeries radial_momentum_renyi_asymptotic(int n, int l, int D, double Z, double q,
                                                  EtaPolicy policy = EtaPolicy::exact);
AsymptoticSeries total_momentum_renyi_asymptotic(const QuantumState& state, double q,
                                                 EtaPolicy policy = EtaPolicy::exact);

// ns and circular specialisations: radial series plus the closed Gamma-form angular part.
double total_renyi_special(const QuantumState& state, double q, Space space, EtaPolicy policy = EtaPolicy::exact);

// Fully simplified constant term of the circular-state position series.
double circular_position_constant(int n, double q);

// Asymptotic entropy at the state's D split into radial series and Gamma-form angular part.
EntropyResult renyi_asymptotic(const QuantumState& state, double q, Space space,
                               EtaPolicy policy = EtaPolicy::exact);

struct ShannonConjecture {
    AsymptoticSeries total;
    AsymptoticSeries radial;
    double angular = 0.0;  // -log Gamma(D/2) + (D/2) log pi at the state's D
    bool conjecture = true;
};

ShannonConjecture shannon_conjectures(const QuantumState& state, Space space);

double conjugate_order(double q);
// Per-dimension saturation constant; q = 1 gives the continuous limit log(pi e).
double uncertainty_sum_limit(double q);

// Momentum asymptotics are refused at or below this order.
inline constexpr double kMomentumMinOrder = 0.55;

}  // namespace hydent
