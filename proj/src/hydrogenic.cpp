#include "hydent/hydrogenic.hpp"

#include "hydent/error.hpp"
#include "hydent/orthopoly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <sstream>

namespace hydent {

namespace {

std::vector<MuRun> normalize_runs(const std::vector<MuRun>& runs) {
    std::vector<MuRun> out;
    for (const auto& r : runs) {
        if (r.count == 0) continue;
        if (!out.empty() && out.back().value == r.value)
            out.back().count += r.count;
        else
            out.push_back(r);
    }
    return out;
}

int to_int(std::string_view s, const char* what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError(std::string("cannot parse integer for ") + what + ": '" + std::string(s) + "'");
    return v;
}

double to_double(std::string_view s, const char* what) {
    std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size())
        throw ValidationError(std::string("cannot parse number for ") + what + ": '" + tmp + "'");
    return v;
}

}  // namespace

QuantumState QuantumState::make(int D, double Z, int n, int l, std::vector<MuRun> mu) {
    if (D < 2) throw ValidationError("D must be at least 2");
    if (!(Z > 0.0) || !std::isfinite(Z)) throw ValidationError("Z must be positive");
    if (n < 1) throw ValidationError("n must be at least 1");
    if (l < 0 || l > n - 1) throw ValidationError("l must satisfy 0 <= l <= n-1");
    for (const auto& r : mu)
        if (r.count < 0) throw ValidationError("mu run counts must be non-negative");
    mu = normalize_runs(mu);
    long total = 0;
    for (const auto& r : mu) total += r.count;
    if (total != D - 1) {
        std::ostringstream msg;
        msg << "mu chain has " << total << " entries, expected D-1 = " << D - 1;
        throw ValidationError(msg.str());
    }
    const bool single = D == 2;
    if (single ? std::abs(mu.front().value) != l : mu.front().value != l)
        throw ValidationError("mu_1 must equal l");
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const bool last_entry = i + 1 == mu.size() && mu[i].count == 1;
        if (mu[i].value < 0 && !last_entry && !single)
            throw ValidationError("only mu_{D-1} may be negative");
        if (i > 0) {
            const int prev = mu[i - 1].value;
            const int cur = last_entry ? std::abs(mu[i].value) : mu[i].value;
            if (cur > prev) throw ValidationError("mu chain must be non-increasing (|mu_{D-1}| <= mu_{D-2})");
        }
    }
    QuantumState s;
    s.D_ = D;
    s.Z_ = Z;
    s.n_ = n;
    s.l_ = l;
    s.mu_ = std::move(mu);
    return s;
}

QuantumState QuantumState::ns(int D, int n, double Z) { return make(D, Z, n, 0, {{0, D - 1}}); }

QuantumState QuantumState::circular(int D, int n, double Z) { return make(D, Z, n, n - 1, {{n - 1, D - 1}}); }

QuantumState QuantumState::with_D(int D) const {
    std::vector<MuRun> mu = mu_;
    const int delta = D - D_;
    // grow or shrink the longest run so the chain keeps its shape
    std::size_t longest = 0;
    for (std::size_t i = 1; i < mu.size(); ++i)
        if (mu[i].count > mu[longest].count) longest = i;
    mu[longest].count += delta;
    if (mu[longest].count < 0) throw ValidationError("cannot rescale mu chain to the requested D");
    return make(D, Z_, n_, l_, mu);
}

QuantumState QuantumState::with_Z(double Z) const { return make(D_, Z, n_, l_, mu_); }

std::string QuantumState::to_string() const {
    std::ostringstream out;
    out.precision(17);
    out << "D=" << D_ << " Z=" << Z_ << " n=" << n_ << " l=" << l_ << " mu=";
    for (std::size_t i = 0; i < mu_.size(); ++i) out << (i ? "," : "") << mu_[i].value << "x" << mu_[i].count;
    return out.str();
}

std::vector<MuRun> parse_mu(std::string_view text, int D, int n, int l) {
    if (text == "ns") return {{0, D - 1}};
    if (text == "circular") return {{n - 1, D - 1}};
    (void)l;
    std::vector<MuRun> runs;
    int fill = -1, used = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view item = text.substr(pos, comma - pos);
        const std::size_t x = item.find('x');
        if (item.empty() || x == std::string_view::npos)
            throw ValidationError("mu run must look like <value>x<count>: '" + std::string(item) + "'");
        const int value = to_int(item.substr(0, x), "mu value");
        const std::string_view cnt = item.substr(x + 1);
        if (cnt == "*") {
            if (fill >= 0) throw ValidationError("only one mu run may use * as its count");
            fill = static_cast<int>(runs.size());
            runs.push_back({value, 0});
        } else {
            runs.push_back({value, to_int(cnt, "mu count")});
            used += runs.back().count;
        }
        pos = comma + 1;
    }
    if (fill >= 0) {
        if (used > D - 1) throw ValidationError("mu runs exceed D-1 entries");
        runs[fill].count = D - 1 - used;
    }
    return runs;
}

QuantumState QuantumState::parse(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ValidationError("state token must be key=value: '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto need = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ValidationError(std::string("state is missing ") + key);
        return it->second;
    };
    const int D = to_int(need("D"), "D");
    const int n = to_int(need("n"), "n");
    const double Z = kv.count("Z") ? to_double(kv["Z"], "Z") : 1.0;
    const std::string mu = kv.count("mu") ? kv["mu"] : "ns";
    int l = 0;
    if (kv.count("l"))
        l = to_int(kv["l"], "l");
    else if (mu == "circular")
        l = n - 1;
    if (D < 2) throw ValidationError("D must be at least 2");
    return make(D, Z, n, l, parse_mu(mu, D, n, l));
}

DerivedParams derive(const QuantumState& s) {
    DerivedParams d;
    d.D = s.D();
    d.eta = s.n() + 0.5 * (s.D() - 3);
    d.L = s.l() + 0.5 * (s.D() - 3);
    d.lambda = d.eta / (2.0 * s.Z());
    d.energy = -s.Z() * s.Z() / (2.0 * d.eta * d.eta);
    return d;
}

std::vector<AngularFactor> angular_factors(const QuantumState& s) {
    const int D = s.D();
    std::vector<AngularFactor> out;
    if (D < 3) return out;
    std::vector<MuRun> runs = s.mu();
    if (runs.back().value < 0) runs.back().value = -runs.back().value;
    runs = normalize_runs(runs);
    int start = 1;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const int end = start + runs[i].count - 1;
        if (end > start) out.push_back({start, end - 1, runs[i].value, runs[i].value});
        if (i + 1 < runs.size()) out.push_back({end, end, runs[i].value, runs[i + 1].value});
        start = end + 1;
    }
    return out;
}

SignedLogReal position_radial_density(const QuantumState& s, double r) {
    if (!(r > 0.0)) throw DomainError("position density requires r > 0");
    const DerivedParams d = derive(s);
    const double x = r / d.lambda;
    const PolynomialSpec spec{Family::laguerre, s.n() - s.l() - 1, s.D() + 2.0 * s.l() - 2.0};
    const SignedLogReal poly = eval_laguerre(spec, x, true);
    if (poly.is_zero()) return {};
    const double logv = -s.D() * std::log(d.lambda) - std::log(2.0 * d.eta) + 2.0 * s.l() * std::log(x) - x +
                        2.0 * poly.logmag();
    return SignedLogReal::from_log(1, logv);
}

double log_momentum_constant(int n, int l, int D) {
    return -log_gegenbauer_norm_sq(n - l - 1, l + 0.5 * (D - 1));
}

SignedLogReal momentum_radial_density(const QuantumState& s, double p) {
    if (!(p > 0.0)) throw DomainError("momentum density requires p > 0");
    const DerivedParams d = derive(s);
    const double u = d.eta * p / s.Z();
    const double u2 = u * u;
    const double y = (1.0 - u2) / (1.0 + u2);
    const double beta = d.L + 1.0;
    const PolynomialSpec spec{Family::gegenbauer, s.n() - s.l() - 1, beta};
    const SignedLogReal poly = eval_gegenbauer(spec, std::clamp(y, -1.0, 1.0));
    if (poly.is_zero()) return {};
    const double power = 2.0 * d.L + 4.0;
    const double logv = s.D() * std::log(d.eta / s.Z()) + log_momentum_constant(s.n(), s.l(), s.D()) +
                        power * std::numbers::ln2 + 2.0 * s.l() * std::log(u) - power * std::log1p(u2) +
                        2.0 * poly.logmag();
    return SignedLogReal::from_log(1, logv);
}

SignedLogReal harmonic_norm_sq(const QuantumState& s) {
    const int D = s.D();
    const double log_pi = std::log(std::numbers::pi);
    double logv = -std::log(2.0 * std::numbers::pi);
    auto alpha = [D](int j) { return 0.5 * (D - j - 1); };
    for (const auto& f : angular_factors(s)) {
        if (f.degree() == 0) {
            const double b_first = alpha(f.j_first) + f.lower;
            const double b_last = alpha(f.j_last) + f.lower;
            const int count = f.j_last - f.j_first + 1;
            logv += log_gamma(b_first + 1.0) - log_gamma(b_last + 0.5) - 0.5 * count * log_pi;
        } else {
            logv -= log_gegenbauer_norm_sq(f.degree(), alpha(f.j_first) + f.lower);
        }
    }
    return SignedLogReal::from_log(1, logv);
}

}  // namespace hydent
