#pragma once

#include "hydent/logspace.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hydent {

// Run of identical hyperquantum numbers in the mu chain.
struct MuRun {
    int value = 0;
    int count = 0;
    bool operator==(const MuRun&) const = default;
};

class QuantumState {
public:
    // Validates the chain: length D-1, mu_1 = l, non-increasing, last entry may be negative.
    static QuantumState make(int D, double Z, int n, int l, std::vector<MuRun> mu);
    static QuantumState ns(int D, int n, double Z = 1.0);
    static QuantumState circular(int D, int n, double Z = 1.0);
    static QuantumState ground(int D, double Z = 1.0) { return ns(D, 1, Z); }

    // "D=<int> Z=<float> n=<int> l=<int> mu=<runs>" with runs like 2x5,1x12,0x2, or ns / circular.
    static QuantumState parse(std::string_view text);

    int D() const { return D_; }
    double Z() const { return Z_; }
    int n() const { return n_; }
    int l() const { return l_; }
    const std::vector<MuRun>& mu() const { return mu_; }
    // mu_{D-1}, the azimuthal number
    int m() const { return mu_.back().value; }

    QuantumState with_D(int D) const;
    QuantumState with_Z(double Z) const;
    std::string to_string() const;

private:
    int D_ = 3;
    double Z_ = 1.0;
    int n_ = 1;
    int l_ = 0;
    std::vector<MuRun> mu_;
};

// Chain from a template: ns, circular, or runs where one count may be * (fills to D-1).
std::vector<MuRun> parse_mu(std::string_view text, int D, int n, int l);

struct DerivedParams {
    int D = 3;
    double eta = 1.0;
    double L = 0.0;
    double lambda = 0.5;
    double energy = -0.5;
    double alpha(int j) const { return 0.5 * (D - j - 1); }
};

DerivedParams derive(const QuantumState& state);

// One factor of the angular product: indices j_first..j_last share mu_j = upper and
// mu_{j+1} = lower (|mu_{D-1}| for the final entry). Runs with upper == lower are grouped.
struct AngularFactor {
    int j_first = 1;
    int j_last = 1;
    int upper = 0;
    int lower = 0;
    int degree() const { return upper - lower; }
};

std::vector<AngularFactor> angular_factors(const QuantumState& state);

// rho_{n,l}(r) without the harmonic factor.
SignedLogReal position_radial_density(const QuantumState& state, double r);
// M^2_{n,l}(p) without the harmonic factor.
SignedLogReal momentum_radial_density(const QuantumState& state, double p);
// N^2_{l,{mu}}
SignedLogReal harmonic_norm_sq(const QuantumState& state);
// log A(n,l;D), the orthonormalising constant of the momentum Gegenbauer factor.
double log_momentum_constant(int n, int l, int D);

}  // namespace hydent
