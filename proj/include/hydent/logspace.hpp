#pragma once

#include <span>
#include <vector>

namespace hydent {

// Real number kept as sign and natural log of magnitude.
class SignedLogReal {
public:
    SignedLogReal() = default;

    static SignedLogReal zero() { return {}; }
    static SignedLogReal from_log(int sign, long double logmag);
    static SignedLogReal from_double(double x);

    int sign() const { return sign_; }
    double logmag() const { return static_cast<double>(logmag_); }
    long double logmag_ld() const { return logmag_; }
    bool is_zero() const { return sign_ == 0; }

    double to_double() const;

    SignedLogReal operator-() const;
    SignedLogReal abs() const;
    SignedLogReal& operator*=(const SignedLogReal& rhs);
    SignedLogReal& operator/=(const SignedLogReal& rhs);
    SignedLogReal& operator+=(const SignedLogReal& rhs);
    SignedLogReal& operator-=(const SignedLogReal& rhs);
    SignedLogReal pow(double e) const;

    friend SignedLogReal operator*(SignedLogReal a, const SignedLogReal& b) { return a *= b; }
    friend SignedLogReal operator/(SignedLogReal a, const SignedLogReal& b) { return a /= b; }
    friend SignedLogReal operator+(SignedLogReal a, const SignedLogReal& b) { return a += b; }
    friend SignedLogReal operator-(SignedLogReal a, const SignedLogReal& b) { return a -= b; }

private:
    int sign_ = 0;
    long double logmag_ = 0.0L;
};

enum class CombineMode { product, sum };

// Product adds log magnitudes; sum uses a single max shift.
SignedLogReal combine(std::span<const SignedLogReal> terms, CombineMode mode);

// log(sum exp(x_i)) with a single max shift; -inf for an empty list.
double log_sum_exp(std::span<const double> xs);

double log_gamma(double x);
double log_pochhammer(double x, double a);
double log_beta(double a, double b);
double digamma(double x);

}  // namespace hydent
