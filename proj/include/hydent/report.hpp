#pragma once

#include "hydent/asymptotics.hpp"
#include "hydent/entropic_exact.hpp"
#include "hydent/hydrogenic.hpp"
#include "hydent/quadrature.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hydent {

enum class MethodSelect { exact, asymptotic, both };
// Which piece of the entropy a sweep reports.
enum class Part { total, radial, angular };

MethodSelect parse_method_select(const std::string& text);
Part parse_part(const std::string& text);
std::string to_string(Part p);

struct SweepConfig {
    QuantumState state = QuantumState::ground(3);  // D is replaced per row
    std::vector<int> D;
    std::vector<double> q;
    std::optional<double> Z;
    Space space = Space::position;
    Part part = Part::total;
    MethodSelect method = MethodSelect::both;
    EtaPolicy eta = EtaPolicy::exact;
    QuadratureSpec quadrature;
    int jobs = 1;

    void validate() const;
};

// Geometric D range lo, lo*ratio, ... up to hi inclusive.
std::vector<int> geometric_range(int lo, int hi, double ratio);

struct ComparisonRow {
    int D = 0;
    double q = 0.0;
    Space space = Space::position;
    std::optional<EntropyResult> exact;
    std::optional<EntropyResult> asymptotic;
    double gap = 0.0;  // asymptotic - exact, NaN unless both present
    double gap_times_D = 0.0;
    double err_est = 0.0;
    double wall_ms = 0.0;
    std::string error;  // per-row failure, empty on success
    bool converged = true;
};

std::vector<ComparisonRow> run_sweep(const SweepConfig& config);

// One output line: a single method evaluated at a single (D, q).
struct Record {
    int D = 0;
    double q = 0.0;
    Space space = Space::position;
    Method method = Method::exact;
    double value = 0.0;
    double radial = 0.0;
    double angular = 0.0;
    double gap = 0.0;
    double err_est = 0.0;
    double wall_ms = 0.0;

    bool operator==(const Record&) const = default;
};

std::vector<Record> flatten(const std::vector<ComparisonRow>& rows);

inline constexpr const char* kCsvHeader = "D,q,space,method,value,radial,angular,gap,err_est,wall_ms";

// Doubles are rendered with 17 significant digits; timing can be zeroed for reproducible files.
void write_csv(std::ostream& out, const std::vector<Record>& records, bool timing = true);
void write_json(std::ostream& out, const std::vector<Record>& records, bool timing = true);
std::vector<Record> read_csv(std::istream& in);
std::vector<Record> read_json(std::istream& in);

enum class FitModel { power, inverse_d };

struct FitReport {
    double exponent = 0.0;   // gap ~ amplitude * D^-exponent
    double amplitude = 0.0;
    double residual = 0.0;   // RMS of log residuals
    int points = 0;
    bool within_expected = true;  // inverse_d: exponent in [0.8, 1.2]
};

FitReport fit_convergence(const std::vector<double>& D, const std::vector<double>& gap, FitModel model);
FitReport fit_convergence(const std::vector<ComparisonRow>& rows, FitModel model);

struct SaturationPoint {
    int D = 0;
    double asymptotic = 0.0;             // (R_q pos + R_p mom)/D from the series
    std::optional<double> exact;         // same from the exact engines
    std::string error;
};

struct SaturationReport {
    double q = 0.0;
    double p = 0.0;
    double limit = 0.0;
    std::vector<SaturationPoint> points;
    bool exact_monotone = true;   // |exact - limit| non-increasing in D
    bool asymptotic_monotone = true;
};

inline constexpr int kExactSaturationMaxD = 200;

// q = 1 uses the Shannon engines and conjectures.
SaturationReport check_saturation(double q, const std::vector<int>& D, const QuantumState& state,
                                  const QuadratureSpec& spec = {}, int exact_max_D = kExactSaturationMaxD);

struct TheoremCheckRow {
    std::string functional;  // J1 or J2
    std::string params;
    double alpha = 0.0;
    double rel_error0 = 0.0;  // order-0 expansion
    double rel_error1 = 0.0;  // order-1 expansion (J1 only, NaN otherwise)
    double quad_rel_error = 0.0;
};

std::vector<TheoremCheckRow> theorem_check(const std::vector<double>& alphas, const QuadratureSpec& spec = {});

}  // namespace hydent
