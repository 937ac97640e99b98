#include "hydent/asymptotics.hpp"
#include "hydent/error.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace hydent;

namespace {

double rel_err(const SignedLogReal& approx, double log_exact) {
    return std::fabs(std::expm1(static_cast<double>(approx.logmag_ld()) - log_exact));
}

double j1_m0_log(double sigma, double lambda, double alpha) {
    return std::lgamma(alpha + sigma) - (alpha + sigma) * std::log(lambda);
}

double j2_m0_log(double a, double b, double c, double d, double alpha) {
    const double x = c * alpha + a + 1, y = d * alpha + b + 1;
    return (x + y - 1) * std::log(2.0) + std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

}  // namespace

TEST_CASE("J1 m=0 against the Gamma integral") {
    for (double lambda : {0.5, 2.0})
        for (double alpha : {50.0, 100.0, 200.0, 400.0}) {
            J1Params p{1.0, lambda, 2.0, 0, alpha, 0};
            const double ex = j1_m0_log(1.0, lambda, alpha);
            CHECK(rel_err(j1_asymptotic(p), ex) <= 1.0 / (10 * alpha));
            p.order = 1;
            CHECK(rel_err(j1_asymptotic(p), ex) <= 5.0 / (alpha * alpha));
        }
    J1Params p{1.0, 2.0, 2.0, 0, 100.0, 0};
    const double ratio = std::exp(j1_m0_log(1.0, 2.0, 100.0) - j1_asymptotic(p).logmag());
    CHECK(ratio == doctest::Approx(1.0 + 1.0 / 1200).epsilon(1e-5));
    p.order = 1;
    CHECK(rel_err(j1_asymptotic(p), j1_m0_log(1.0, 2.0, 100.0)) < 3e-4);
}

TEST_CASE("D1 coefficient") {
    for (double lambda : {0.3, 2.0, 7.0}) {
        J1Params p{1.0, lambda, 3.0, 0, 10.0, 1};
        CHECK(j1_d1(p, D1Form::printed) == doctest::Approx(1.0 / 12).epsilon(1e-14));
        CHECK(j1_d1(p, D1Form::corrected) == doctest::Approx(1.0 / 12).epsilon(1e-14));
    }
    // The forms differ only through m.
    J1Params p{2.5, 2.0, 2.0, 2, 100.0, 1};
    CHECK(j1_d1(p, D1Form::corrected) - j1_d1(p, D1Form::printed) ==
          doctest::Approx(2.0 * (18.0 * 2 - 6.0 * 4) / 12.0));
}

TEST_CASE("corrected D1 tracks quadrature for m > 0") {
    for (int m : {1, 2})
        for (double lambda : {0.5, 2.0}) {
            J1Params p{2.5, lambda, 2.0, m, 200.0, 1};
            const double ex = static_cast<double>(j1_quadrature(p).value.logmag_ld());
            const double e200 = rel_err(j1_asymptotic(p), ex);
            p.alpha = 400.0;
            const double ex4 = static_cast<double>(j1_quadrature(p).value.logmag_ld());
            const double e400 = rel_err(j1_asymptotic(p), ex4);
            CAPTURE(m);
            CAPTURE(lambda);
            CHECK(e200 / e400 > 3.0);
            CHECK(e200 / e400 < 5.0);
        }
}

TEST_CASE("J1 quadrature agrees with the Gamma integral") {
    const J1Params p{2.5, 0.5, 4.0, 0, 333.0, 0};
    CHECK(static_cast<double>(j1_quadrature(p).value.logmag_ld()) ==
          doctest::Approx(j1_m0_log(2.5, 0.5, 333.0)).epsilon(1e-13));
    CHECK_THROWS_AS(j1_asymptotic({1.0, 1.0, 2.0, 0, 10.0, 0}), DomainError);
}

TEST_CASE("J2 m=0 Beta oracle with O(1/alpha) defect") {
    for (double a : {0.0, 1.5})
        for (double b : {0.0, 1.5})
            for (auto [c, d] : {std::pair{1.0, 2.0}, std::pair{1.0, 3.0}}) {
                const double e100 = rel_err(j2_asymptotic({a, b, c, d, 2.0, 0, 100.0}), j2_m0_log(a, b, c, d, 100.0));
                const double e200 = rel_err(j2_asymptotic({a, b, c, d, 2.0, 0, 200.0}), j2_m0_log(a, b, c, d, 200.0));
                CHECK(e200 / e100 == doctest::Approx(0.5).epsilon(0.3));
            }
    // (32/27)^alpha sqrt(2 pi/alpha) 2 sqrt(2/27) at a=b=0, c=1, d=2
    const double alpha = 200.0;
    const double printed = alpha * std::log(32.0 / 27) + 0.5 * std::log(2 * M_PI / alpha) + std::log(2 * std::sqrt(2.0 / 27));
    CHECK(j2_asymptotic({0, 0, 1, 2, 2.0, 0, alpha}).logmag() == doctest::Approx(printed).epsilon(1e-14));
}

TEST_CASE("J2 equal exponents against Wallis") {
    double last = 1.0;
    for (double alpha : {100.0, 200.0, 400.0}) {
        const double wallis = 0.5 * std::log(M_PI) + std::lgamma(alpha + 1) - std::lgamma(alpha + 1.5);
        const double e = rel_err(j2_asymptotic({0, 0, 1, 1, 2.0, 0, alpha}), wallis);
        CHECK(e < last);
        CHECK(e < 1.0 / alpha);
        last = e;
    }
}

TEST_CASE("J2 swap rule") {
    const J2Params p{0.5, 1.25, 3.0, 1.0, 2.5, 2, 150.0};
    const J2Params s{1.25, 0.5, 1.0, 3.0, 2.5, 2, 150.0};
    CHECK(j2_asymptotic(p).logmag() == j2_asymptotic(s).logmag());
    CHECK(static_cast<double>(j2_quadrature(p).value.logmag_ld()) ==
          doctest::Approx(static_cast<double>(j2_quadrature(s).value.logmag_ld())).epsilon(1e-12));
}

TEST_CASE("angular asymptotics") {
    for (int D : {3, 40, 1000})
        for (double q : {0.5, 2.0, 3.0})
            CHECK(angular_renyi_asymptotic(QuantumState::ground(D), q) ==
                  doctest::Approx(oracle::log_sphere_area(D)).epsilon(1e-13));
    // D=40, l=0, q=2 matches the exact angular part.
    const auto g = QuantumState::ground(40);
    CHECK(angular_renyi_asymptotic(g, 2.0) ==
          doctest::Approx(angular_renyi_exact(g, 2.0, {}).value).epsilon(1e-13));
    // Constant chains: Etilde = Mtilde = 1.
    for (int n : {2, 3, 5}) {
        const auto c = QuantumState::circular(30, n);
        CHECK(log_e_tilde(c) == 0.0);
        CHECK(log_m_tilde(c, 2.0) == 0.0);
        for (double q : {0.5, 2.0})
            CHECK(angular_renyi_asymptotic(c, q) == doctest::Approx(angular_renyi_exact(c, q, {}).value).epsilon(1e-12));
    }
}

TEST_CASE("angular series is the Stirling form of the Gamma ratio") {
    const auto c = QuantumState::circular(1000, 3);
    double last = INFINITY;
    for (int D : {1000, 4000, 16000}) {
        const auto s = c.with_D(D);
        const double diff = std::fabs(angular_renyi_series(s, 2.0).value(D) - angular_renyi_asymptotic(s, 2.0));
        CHECK(diff < last);
        last = diff;
    }
    CHECK(last < 1e-3);
}

TEST_CASE("degree-one angular factors are reproduced exactly") {
    // C_1 is a monomial, so the monomial replacement loses nothing for unit steps in the chain.
    const auto base = QuantumState::parse("D=60 Z=1 n=3 l=2 mu=2x1,1x1,0x*");
    for (int D : {60, 240, 960})
        for (double q : {0.6, 2.5}) {
            const auto s = base.with_D(D);
            const double ex = angular_renyi_exact(s, q, {}).value;
            CHECK(angular_renyi_asymptotic(s, q) == doctest::Approx(ex).epsilon(1e-12));
        }
}

TEST_CASE("radial position series") {
    const auto s = radial_position_renyi_asymptotic(1, 0, 100, 1.0, 2.0);
    const double expect = 200 * std::log(100.0) + 100 * std::log(2 / (4 * M_E)) - 0.5 * std::log(100.0) +
                          0.5 * std::log(2 * M_PI) - 1;
    CHECK(s.value(100) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(s.value(100) == doctest::Approx(749.3357).epsilon(1e-7));
    const double exact = oracle::ground_position_renyi(100, 1.0, 2.0) - oracle::log_sphere_area(100);
    CHECK(exact == doctest::Approx(749.3315).epsilon(1e-7));
    for (int n : {1, 4, 7})
        for (double q : {0.5, 2.0, 3.0}) {
            CHECK(radial_position_renyi_asymptotic(n, n - 1, 50, 1.0, q).log_d == doctest::Approx(-0.5));
            if (n == 1) CHECK(radial_position_renyi_asymptotic(1, 0, 50, 1.0, q).constant == doctest::Approx(0.5 * std::log(2 * M_PI) - 1));
        }
}

TEST_CASE("total position series") {
    const auto g = QuantumState::ground(400);
    for (double q : {0.5, 1.5, 2.0, 3.0}) {
        for (int n = 1; n <= 4; ++n) {
            const auto c = QuantumState::circular(400, n);
            const auto t = total_position_renyi_asymptotic(c, q);
            CHECK(t.log_d == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(t.constant == doctest::Approx(circular_position_constant(n, q)).epsilon(1e-12));
        }
        const auto t = total_position_renyi_asymptotic(g, q);
        CHECK(t.d_log_d == 1.5);
        CHECK(t.d == doctest::Approx(std::log(std::pow(q, 1 / (q - 1)) * std::sqrt(M_PI / (8 * M_E)))).epsilon(1e-14));
    }
    const auto s = QuantumState::ns(400, 2);
    const double whole = total_position_renyi_asymptotic(s, 2.0).value(400);
    const double parts = radial_position_renyi_asymptotic(2, 0, 400, 1.0, 2.0).value(400) + angular_renyi_series(s, 2.0).value(400);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-15));
}

TEST_CASE("ground state position gap decays like 1/D") {
    double last = 0;
    for (int D : {100, 200, 400, 800}) {
        const double gap = renyi_asymptotic(QuantumState::ground(D), 2.0, Space::position).value -
                           oracle::ground_position_renyi(D, 1.0, 2.0);
        if (last != 0) CHECK(std::fabs(gap / last - 0.5) <= 0.2);
        last = gap;
    }
}

TEST_CASE("radial momentum series") {
    for (double q : {0.6, 2.0, 3.0}) {
        const auto s = radial_momentum_renyi_asymptotic(1, 0, 100, 1.0, q, EtaPolicy::leading);
        const double q0 = 0.5 * (1 - q) * std::log(2 * M_PI) + (q - 0.5) * std::log(2 - 1 / q);
        CHECK(s.constant == doctest::Approx(q0 / (1 - q)).epsilon(1e-13));
        CHECK(s.d_log_d == -1.0);
    }
    double last = INFINITY;
    for (int D : {100, 200, 400}) {
        const double exact = oracle::ground_momentum_renyi(D, 1.0, 2.0) - oracle::log_sphere_area(D);
        const double gap = std::fabs(radial_momentum_renyi_asymptotic(1, 0, D, 1.0, 2.0).value(D) - exact);
        CHECK(gap < 0.6 * last);
        last = gap;
    }
    CHECK_THROWS_AS(radial_momentum_renyi_asymptotic(1, 0, 100, 1.0, 0.55), DomainError);
    CHECK(renyi_asymptotic(QuantumState::ground(50), 0.8, Space::momentum).swap_derived);
    CHECK_FALSE(renyi_asymptotic(QuantumState::ground(50), 2.0, Space::momentum).swap_derived);
}

TEST_CASE("total momentum series") {
    for (double q : {0.75, 2.0}) {
        const auto a = total_momentum_renyi_asymptotic(QuantumState::ns(300, 1), q);
        const auto b = total_momentum_renyi_asymptotic(QuantumState::circular(300, 1), q);
        CHECK(a.constant == b.constant);
        CHECK(a.d == b.d);
        CHECK(total_momentum_renyi_asymptotic(QuantumState::circular(300, 4), q).log_d == doctest::Approx(0.0).epsilon(1e-14));
        const double d = std::log(std::sqrt(8 * M_E * M_PI) *
                                  std::pow(std::pow(2 * q - 1, 2 * q - 1) / std::pow(q, 2 * q), 1 / (2 - 2 * q)));
        CHECK(a.d == doctest::Approx(d).epsilon(1e-13));
        CHECK(a.d_log_d == -1.5);
    }
    double last = INFINITY;
    for (int D : {200, 400, 800}) {
        const double gap = std::fabs(renyi_asymptotic(QuantumState::ground(D), 2.0, Space::momentum).value -
                                     oracle::ground_momentum_renyi(D, 1.0, 2.0));
        CHECK(gap < last);
        last = gap;
    }
}

TEST_CASE("specialised displays agree with the generic series") {
    for (Space sp : {Space::position, Space::momentum})
        for (int n : {1, 2, 3}) {
            for (const auto& st : {QuantumState::ns(1000, n), QuantumState::circular(1000, n)}) {
                const double g3 = std::fabs(total_renyi_special(st, 2.0, sp) -
                                            (sp == Space::position ? total_position_renyi_asymptotic(st, 2.0)
                                                                   : total_momentum_renyi_asymptotic(st, 2.0)).value(1000));
                const auto s4 = st.with_D(10000);
                const double g4 = std::fabs(total_renyi_special(s4, 2.0, sp) -
                                            (sp == Space::position ? total_position_renyi_asymptotic(s4, 2.0)
                                                                   : total_momentum_renyi_asymptotic(s4, 2.0)).value(10000));
                CHECK(g4 <= g3);
            }
        }
    CHECK_THROWS_AS(total_renyi_special(QuantumState::parse("D=20 Z=1 n=3 l=2 mu=2x1,1x*"), 2.0, Space::position),
                    ValidationError);
}

TEST_CASE("saturation on the conjugacy curve") {
    const double D = 1e4;
    for (double q : {1.25, 2.0, 3.0}) {
        const double p = conjugate_order(q);
        const auto g = QuantumState::ground(10000);
        const double sum = total_position_renyi_asymptotic(g, q).value(D) + total_momentum_renyi_asymptotic(g, p).value(D);
        CHECK(std::fabs(sum / D - uncertainty_sum_limit(q)) <= 10 * std::log(D) / D);
        CHECK(total_position_renyi_asymptotic(g, q).d_log_d + total_momentum_renyi_asymptotic(g, p).d_log_d == 0.0);
    }
}

TEST_CASE("conjugate orders and saturation constants") {
    CHECK(conjugate_order(1.0) == 1.0);
    CHECK(conjugate_order(2.0) == doctest::Approx(2.0 / 3));
    CHECK(conjugate_order(0.75) == doctest::Approx(1.5));
    CHECK_THROWS_AS(conjugate_order(0.5), DomainError);
    CHECK(uncertainty_sum_limit(2.0) == doctest::Approx(std::log(4 * M_PI * std::pow(0.75, 1.5))).epsilon(1e-15));
    const double r = std::log(2 * M_PI) + std::log(4.0 / 3) / (4.0 / 3 - 2) + std::log(4.0) / 2;
    CHECK(uncertainty_sum_limit(2.0) == doctest::Approx(r).epsilon(1e-15));
    // The q = 1 value is the continuous limit of the Renyi form.
    for (double q : {1 - 1e-4, 1 + 1e-4})
        CHECK(std::fabs(uncertainty_sum_limit(q) - uncertainty_sum_limit(1.0)) < 1e-6);
}

TEST_CASE("Shannon conjectures") {
    const auto g = QuantumState::ground(3);
    const auto pos = shannon_conjectures(g, Space::position);
    const auto mom = shannon_conjectures(g, Space::momentum);
    CHECK(pos.conjecture);
    CHECK(pos.total.d_log_d == 1.5);
    CHECK(pos.total.d_log_d + mom.total.d_log_d == 0.0);
    CHECK(pos.total.d + mom.total.d == doctest::Approx(std::log(M_PI * M_E)).epsilon(1e-15));
    CHECK(pos.angular == doctest::Approx(-std::lgamma(1.5) + 1.5 * std::log(M_PI)).epsilon(1e-15));
    const double exact = shannon_exact(g, Space::position, {}).value;
    MESSAGE("D=3 ground-state position conjecture " << pos.total.value(3) << " vs exact " << exact);
    CHECK(std::isfinite(pos.total.value(3)));
}

TEST_CASE("eta policy changes only the momentum constant") {
    const auto a = radial_position_renyi_asymptotic(3, 1, 100, 1.0, 2.0, EtaPolicy::exact);
    const auto b = radial_position_renyi_asymptotic(3, 1, 100, 1.0, 2.0, EtaPolicy::leading);
    CHECK(a.constant == b.constant);
    const auto c = radial_momentum_renyi_asymptotic(3, 1, 100, 1.0, 2.0, EtaPolicy::exact);
    const auto d = radial_momentum_renyi_asymptotic(3, 1, 100, 1.0, 2.0, EtaPolicy::leading);
    CHECK(d.constant - c.constant == doctest::Approx(3.0));
}
