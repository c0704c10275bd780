#include <doctest.h>

#include <cmath>

#include "schwarzsl/integrate.hpp"

using namespace schwarzsl;

namespace {

OdeSystem scalar(std::function<Complex(double, Complex)> f) {
    return {1, [f](double x, std::span<const Complex> y, Complex, std::span<Complex> d) { d[0] = f(x, y[0]); }};
}

Complex run_to(const OdeSystem& sys, double x0, double x1, Complex y0, Tolerances tol = {}) {
    const Complex init[1] = {y0};
    const Trajectory t = integrate(sys, x0, x1, init, {}, tol);
    REQUIRE(t.stop_reason == StopReason::ReachedEnd);
    CHECK(t.x_end() == doctest::Approx(x1));
    return t.y_end()[0];
}

}  // namespace

TEST_CASE("complex exponential rotates to -1 after pi") {
    const Complex y = run_to(scalar([](double, Complex y) { return kI * y; }), 0.0, kPi, 1.0);
    CHECK(std::abs(y - Complex{-1.0, 0.0}) < 1e-9);
}

TEST_CASE("logistic-type decay y' = -y^2") {
    const Complex y = run_to(scalar([](double, Complex y) { return -y * y; }), 0.0, 1.0, 1.0);
    CHECK(std::abs(y - 0.5) < 1e-10);
}

TEST_CASE("Riccati F' = -F^2 - 1 gives -tan") {
    const auto sys = scalar([](double, Complex F) { return -F * F - 1.0; });
    CHECK(std::abs(run_to(sys, 0.0, 1.0, 0.0) + std::tan(1.0)) < 1e-9);
    // and backwards
    CHECK(std::abs(run_to(sys, 1.0, 0.0, -std::tan(1.0))) < 1e-9);
}

TEST_CASE("real pole stops the integration, a complex offset passes it") {
    const auto sys = scalar([](double, Complex y) { return 1.0 + y * y; });
    const Complex real0[1] = {0.0};
    const Trajectory hit = integrate(sys, 0.0, 2.0, real0, {}, {});
    CHECK(hit.stop_reason == StopReason::StepFailure);
    CHECK(hit.x_end() < kPi / 2);
    CHECK(is_finite(hit.y_end()[0]));

    const Complex y0{0.0, 0.1};
    const Complex y = run_to(sys, 0.0, 2.0, y0);
    const Complex exact = std::tan(2.0 + std::atan(y0));
    CHECK(std::abs(y - exact) < 1e-8 * std::abs(exact));
}

TEST_CASE("events stop at the first accepted step satisfying the predicate") {
    const auto sys = scalar([](double, Complex y) { return -y; });
    const Complex y0[1] = {1.0};
    const Trajectory t =
        integrate(sys, 0.0, 50.0, y0, {}, {}, [](double, std::span<const Complex> y) { return std::abs(y[0]) < 1e-3; });
    CHECK(t.stop_reason == StopReason::EventFired);
    CHECK(std::abs(t.y_end()[0]) < 1e-3);
    CHECK(t.x_end() < 50.0);
}

TEST_CASE("terminal-only recording keeps first and last rows") {
    const auto sys = scalar([](double, Complex y) { return kI * y; });
    const Complex y0[1] = {1.0};
    const Trajectory full = integrate(sys, 0.0, 10.0, y0, {}, {}, {}, Recording::Full);
    const Trajectory term = integrate(sys, 0.0, 10.0, y0, {}, {}, {}, Recording::TerminalOnly);
    CHECK(full.size() > 10);
    REQUIRE(term.size() == 2);
    CHECK(term.x(0) == 0.0);
    CHECK(term.y_end()[0] == full.y_end()[0]);
    CHECK(term.steps_taken == full.steps_taken);
}

TEST_CASE("argument checking") {
    const auto sys = scalar([](double, Complex y) { return y; });
    const Complex two[2] = {1.0, 2.0};
    CHECK_THROWS_AS(integrate(sys, 0.0, 1.0, two, {}, {}), Error);
    const Complex one[1] = {1.0};
    Tolerances bad;
    bad.rel = -1.0;
    CHECK_THROWS_AS(integrate(sys, 0.0, 1.0, one, {}, bad), Error);
    const auto nan_rhs = scalar([](double, Complex) { return Complex{std::nan(""), 0.0}; });
    try {
        integrate(nan_rhs, 0.0, 1.0, one, {}, {});
        FAIL("expected NonFiniteRhs");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFiniteRhs);
    }
}

TEST_CASE("bidirectional integration from an interior point") {
    const auto sys = scalar([](double, Complex y) { return y; });
    const Complex one[1] = {1.0};
    const auto [lo, hi] = integrate_bidirectional(sys, 0.0, {-1.0, 2.0}, one, {}, {});
    CHECK(lo.x_end() == doctest::Approx(-1.0));
    CHECK(hi.x_end() == doctest::Approx(2.0));
    CHECK(std::abs(lo.y_end()[0] - std::exp(-1.0)) < 1e-9);
    CHECK(std::abs(hi.y_end()[0] - std::exp(2.0)) < 1e-8);
    CHECK_THROWS_AS(integrate_bidirectional(sys, 3.0, {-1.0, 2.0}, one, {}, {}), Error);
}

TEST_CASE("step budget exhaustion is a StepFailure, not an exception") {
    const auto sys = scalar([](double, Complex y) { return kI * 100.0 * y; });
    const Complex one[1] = {1.0};
    Tolerances tol;
    tol.max_steps = 10;
    const Trajectory t = integrate(sys, 0.0, 100.0, one, {}, tol);
    CHECK(t.stop_reason == StopReason::StepFailure);
}
