#include "hydent/error.hpp"
#include "hydent/quadrature.hpp"

#include "doctest.h"

#include <cmath>

using namespace hydent;

namespace {

SignedLogReal lift(double v) { return SignedLogReal::from_double(v); }

}  // namespace

TEST_CASE("endpoint singularity handled by the Jacobi weight") {
    QuadratureSpec spec;
    auto f = [](double x) { return x > 0 ? SignedLogReal::from_log(1, -0.5 * std::log(x)) : SignedLogReal{}; };
    const auto r = integrate(f, 0.0, 1.0, {}, -0.5, 0.0, spec, 1e-12);
    CHECK(r.value.to_double() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("interior cusp split at a breakpoint") {
    QuadratureSpec spec;
    auto f = [](double x) { return lift(std::pow(std::fabs(x - 0.3), 0.7)); };
    const auto r = integrate(f, 0.0, 1.0, {{0.3, 0.7}}, 0.0, 0.0, spec, 1e-12);
    const double exact = (std::pow(0.3, 1.7) + std::pow(0.7, 1.7)) / 1.7;
    CHECK(r.value.to_double() == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("half line with exponential decay") {
    QuadratureSpec spec;
    auto f = [](double x) {
        return x > 0 ? SignedLogReal::from_log(1, 2.5 * std::log(x) - x) : SignedLogReal{};
    };
    const auto r = integrate_half_line(f, 0.0, {}, 2.5, 1.0, 3.0, spec, 1e-12);
    CHECK(r.value.to_double() == doctest::Approx(std::tgamma(3.5)).epsilon(1e-11));
}

TEST_CASE("huge magnitudes stay in the log domain") {
    QuadratureSpec spec;
    // integral of x^1000 e^{-x} is Gamma(1001)
    auto f = [](double x) {
        return x > 0 ? SignedLogReal::from_log(1, 1000.0 * std::log(x) - x) : SignedLogReal{};
    };
    const auto r = integrate_half_line(f, 0.0, {{1000.0, 0.0}}, 1000.0, 1.0, 32.0, spec, 1e-12);
    CHECK(r.value.logmag() == doctest::Approx(std::lgamma(1001.0)).epsilon(1e-13));
}

TEST_CASE("signed integrand with cancellation") {
    QuadratureSpec spec;
    auto f = [](double x) { return lift(std::cos(x)); };
    const auto r = integrate(f, 0.0, 3.0, {}, 0.0, 0.0, spec, 1e-12);
    CHECK(r.value.to_double() == doctest::Approx(std::sin(3.0)).epsilon(1e-12));
}

TEST_CASE("spec validation and domain") {
    QuadratureSpec bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = {};
    bad.nodes = 1;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    QuadratureSpec spec;
    CHECK(spec.tolerance_for(100) == 1e-10);
    CHECK(spec.tolerance_for(1000) == 1e-8);
    auto f = [](double) { return lift(1.0); };
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, {}, -1.0, 0.0, spec, 1e-10), DomainError);
}

TEST_CASE("non-convergence raises with the best estimate") {
    QuadratureSpec spec;
    spec.max_levels = 1;
    spec.nodes = 4;
    auto f = [](double x) { return lift(std::sin(200.0 * x)); };
    try {
        integrate(f, 0.0, 1.0, {}, 0.0, 0.0, spec, 1e-14);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.rel_error() > 1e-14);
    }
}
