#include "hydent/logspace.hpp"

#include "hydent/error.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hydent {

namespace {

using quiet_policy = boost::math::policies::policy<
    boost::math::policies::overflow_error<boost::math::policies::ignore_error>,
    boost::math::policies::underflow_error<boost::math::policies::ignore_error>>;

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

}  // namespace

SignedLogReal SignedLogReal::from_log(int sign, long double logmag) {
    SignedLogReal r;
    if (sign == 0 || logmag == kNegInf) return r;
    if (std::isnan(logmag)) throw DomainError("SignedLogReal: NaN log-magnitude");
    r.sign_ = sign > 0 ? 1 : -1;
    r.logmag_ = logmag;
    return r;
}

SignedLogReal SignedLogReal::from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("SignedLogReal: non-finite value");
    if (x == 0.0) return {};
    return from_log(x > 0 ? 1 : -1, std::log(std::fabs(static_cast<long double>(x))));
}

double SignedLogReal::to_double() const {
    if (sign_ == 0) return 0.0;
    return static_cast<double>(sign_ * std::exp(logmag_));
}

SignedLogReal SignedLogReal::operator-() const {
    SignedLogReal r = *this;
    r.sign_ = -r.sign_;
    return r;
}

SignedLogReal SignedLogReal::abs() const {
    SignedLogReal r = *this;
    if (r.sign_ != 0) r.sign_ = 1;
    return r;
}

SignedLogReal& SignedLogReal::operator*=(const SignedLogReal& rhs) {
    if (sign_ == 0 || rhs.sign_ == 0) return *this = SignedLogReal{};
    sign_ *= rhs.sign_;
    logmag_ += rhs.logmag_;
    return *this;
}

SignedLogReal& SignedLogReal::operator/=(const SignedLogReal& rhs) {
    if (rhs.sign_ == 0) throw DomainError("SignedLogReal: division by zero");
    if (sign_ == 0) return *this;
    sign_ *= rhs.sign_;
    logmag_ -= rhs.logmag_;
    return *this;
}

SignedLogReal& SignedLogReal::operator+=(const SignedLogReal& rhs) {
    const SignedLogReal terms[2] = {*this, rhs};
    return *this = combine(terms, CombineMode::sum);
}

SignedLogReal& SignedLogReal::operator-=(const SignedLogReal& rhs) { return *this += -rhs; }

SignedLogReal SignedLogReal::pow(double e) const {
    if (sign_ < 0) {
        if (e != std::floor(e)) throw DomainError("SignedLogReal: non-integer power of a negative value");
        return from_log(std::fmod(e, 2.0) == 0.0 ? 1 : -1, logmag_ * e);
    }
    if (sign_ == 0) {
        if (e > 0) return {};
        if (e == 0) return from_log(1, 0.0L);
        throw DomainError("SignedLogReal: negative power of zero");
    }
    return from_log(1, logmag_ * e);
}

SignedLogReal combine(std::span<const SignedLogReal> terms, CombineMode mode) {
    if (terms.empty()) throw DomainError("combine: empty term list");
    if (mode == CombineMode::product) {
        SignedLogReal r = SignedLogReal::from_log(1, 0.0L);
        for (const auto& t : terms) r *= t;
        return r;
    }
    long double top = kNegInf;
    for (const auto& t : terms)
        if (t.sign() != 0) top = std::max(top, t.logmag_ld());
    if (top == kNegInf) return {};
    long double s = 0.0L;
    for (const auto& t : terms)
        if (t.sign() != 0) s += t.sign() * std::exp(t.logmag_ld() - top);
    if (s == 0.0L) return {};
    return SignedLogReal::from_log(s > 0 ? 1 : -1, top + std::log(std::fabs(s)));
}

double log_sum_exp(std::span<const double> xs) {
    double top = -std::numeric_limits<double>::infinity();
    for (double x : xs) top = std::max(top, x);
    if (!std::isfinite(top)) return top;
    long double s = 0.0L;
    for (double x : xs) s += std::exp(static_cast<long double>(x - top));
    return top + static_cast<double>(std::log(s));
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive and finite");
    return boost::math::lgamma(x);
}

double log_pochhammer(double x, double a) {
    if (!(x > 0.0) || !(a >= 0.0) || !std::isfinite(a))
        throw DomainError("log_pochhammer: requires x > 0 and a >= 0");
    if (a == 0.0) return 0.0;
    if (a == std::floor(a) && a <= 32.0) {
        long double s = 0.0L;
        for (int k = 0; k < static_cast<int>(a); ++k) s += std::log(static_cast<long double>(x) + k);
        return static_cast<double>(s);
    }
    const double r = boost::math::tgamma_delta_ratio(x, a, quiet_policy());
    if (std::isnormal(r)) return -std::log(r);
    return log_gamma(x + a) - log_gamma(x);
}

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("log_beta: arguments must be positive");
    if (a > b) std::swap(a, b);
    return log_gamma(a) - log_pochhammer(b, a);
}

double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("digamma: argument must be positive and finite");
    return boost::math::digamma(x);
}

}  // namespace hydent
