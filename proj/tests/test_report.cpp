#include "hydent/error.hpp"
#include "hydent/report.hpp"

#include "doctest.h"

#include <cmath>
#include <sstream>

using namespace hydent;

namespace {

SweepConfig ground_sweep() {
    SweepConfig c;
    c.state = QuantumState::ground(3);
    c.D = {400, 100, 200};
    c.q = {2.0};
    return c;
}

std::vector<Record> untimed(std::vector<Record> r) {
    for (auto& x : r) x.wall_ms = 0.0;
    return r;
}

}  // namespace

TEST_CASE("ground-state sweep halves its gap") {
    const auto rows = run_sweep(ground_sweep());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].D == 100);
    CHECK(rows[2].D == 400);
    for (const auto& r : rows) CHECK(r.error.empty());
    CHECK(rows[1].gap / rows[0].gap == doctest::Approx(0.5).epsilon(0.05));
    CHECK(rows[2].gap / rows[1].gap == doctest::Approx(0.5).epsilon(0.05));
    CHECK(rows[0].gap_times_D == doctest::Approx(rows[0].gap * 100));
}

TEST_CASE("angular-only sweep for l=0 has zero gap") {
    SweepConfig c = ground_sweep();
    c.part = Part::angular;
    c.q = {0.5, 2.0, 3.0};
    c.D = {10, 100, 1000};
    for (const auto& r : run_sweep(c)) CHECK(std::fabs(r.gap) <= 1e-12 * std::fabs(r.exact->value));
}

TEST_CASE("sweep validation") {
    SweepConfig c = ground_sweep();
    c.q.clear();
    CHECK_THROWS_AS(run_sweep(c), ValidationError);
    c = ground_sweep();
    c.D = {1};
    CHECK_THROWS_AS(run_sweep(c), ValidationError);
    c = ground_sweep();
    c.q = {-1.0};
    CHECK_THROWS_AS(run_sweep(c), ValidationError);
}

TEST_CASE("row failures are recorded without aborting") {
    SweepConfig c = ground_sweep();
    c.space = Space::momentum;
    c.q = {0.52, 2.0};
    const auto rows = run_sweep(c);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        if (r.q == 0.52) {
            CHECK_FALSE(r.error.empty());
            CHECK(std::isfinite(r.exact->value));
            CHECK(std::isnan(r.asymptotic->value));
            CHECK(std::isnan(r.gap));
        } else {
            CHECK(r.error.empty());
        }
    }
}

TEST_CASE("sweep output is independent of the thread count") {
    SweepConfig c;
    c.state = QuantumState::parse("D=10 Z=1.5 n=3 l=1 mu=1x*");
    c.D = {10, 40, 20, 80};
    c.q = {3.0, 0.7, 2.0, 1.0};
    c.space = Space::momentum;
    const auto one = untimed(flatten(run_sweep(c)));
    c.jobs = 4;
    const auto four = untimed(flatten(run_sweep(c)));
    CHECK(one == four);
}

TEST_CASE("CSV and JSON round trip bit-exactly") {
    SweepConfig c = ground_sweep();
    c.q = {1.0 / 3.0 + 1.0, 2.0};
    const auto rec = flatten(run_sweep(c));
    std::stringstream csv, json;
    write_csv(csv, rec);
    write_json(json, rec);
    CHECK(csv.str().rfind(kCsvHeader, 0) == 0);
    CHECK(read_csv(csv) == rec);
    CHECK(read_json(json) == rec);
}

TEST_CASE("missing values survive the round trip as NaN") {
    Record r;
    r.D = 5;
    r.q = 0.52;
    r.value = r.gap = std::nan("");
    std::stringstream csv, json;
    write_csv(csv, {r});
    write_json(json, {r});
    for (const auto& back : {read_csv(csv), read_json(json)}) {
        REQUIRE(back.size() == 1);
        CHECK(std::isnan(back[0].value));
        CHECK(std::isnan(back[0].gap));
        CHECK(back[0].q == 0.52);
    }
    std::stringstream bad("D,q\n1,2\n");
    CHECK_THROWS_AS(read_csv(bad), ValidationError);
}

TEST_CASE("convergence fits") {
    const std::vector<double> D{100, 200, 400, 800};
    std::vector<double> g1, g2;
    for (double d : D) {
        g1.push_back(7.0 / d);
        g2.push_back(3.0 / (d * d));
    }
    const auto f1 = fit_convergence(D, g1, FitModel::inverse_d);
    CHECK(f1.exponent == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f1.amplitude == doctest::Approx(7.0).epsilon(1e-6));
    CHECK(f1.within_expected);
    const auto f2 = fit_convergence(D, g2, FitModel::inverse_d);
    CHECK(f2.exponent == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_FALSE(f2.within_expected);
    CHECK_THROWS_AS(fit_convergence({100, 200}, {1, 2}, FitModel::power), ValidationError);
    const auto fg = fit_convergence(run_sweep(ground_sweep()), FitModel::inverse_d);
    CHECK(fg.within_expected);
}

TEST_CASE("saturation report") {
    const auto rep = check_saturation(2.0, {50, 100, 200, 10000}, QuantumState::ground(3));
    CHECK(rep.p == doctest::Approx(2.0 / 3));
    REQUIRE(rep.points.size() == 4);
    CHECK(rep.points[3].exact == std::nullopt);
    CHECK(rep.points[0].exact.has_value());
    CHECK(std::fabs(rep.points[3].asymptotic - rep.limit) <= 10 * std::log(1e4) / 1e4);
    CHECK(rep.exact_monotone);
    CHECK(rep.asymptotic_monotone);
    const auto sh = check_saturation(1.0, {50, 100}, QuantumState::ground(3));
    CHECK(sh.limit == doctest::Approx(std::log(M_PI * M_E)));
    CHECK(sh.points[0].exact.has_value());
    CHECK_THROWS_AS(check_saturation(0.5, {50}, QuantumState::ground(3)), DomainError);
}

TEST_CASE("geometric ranges") {
    CHECK(geometric_range(100, 800, 2.0) == std::vector<int>{100, 200, 400, 800});
    CHECK_THROWS_AS(geometric_range(100, 50, 2.0), ValidationError);
}

TEST_CASE("theorem check table") {
    const auto rows = theorem_check({100.0});
    CHECK(rows.size() > 20);
    for (const auto& r : rows) CHECK(r.quad_rel_error < 1e-8);
}
