#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "schwarzsl/types.hpp"

namespace schwarzsl {

/// First-order complex system y' = rhs(x, y; lambda). The right-hand side
/// writes into `dydx`, which always has `dimension` entries.
struct OdeSystem {
    std::size_t dimension = 0;
    std::function<void(double x, std::span<const Complex> y, Complex lambda, std::span<Complex> dydx)> rhs;
};

struct Tolerances {
    double rel = 1e-10;
    double abs = 1e-12;
    long max_steps = 200000;
    double min_step = 1e-12;
};

enum class StopReason { ReachedEnd, EventFired, StepFailure };

std::string_view to_string(StopReason reason);

/// Event predicate, evaluated at accepted step endpoints.
using EventFn = std::function<bool(double x, std::span<const Complex> y)>;

enum class Recording { Full, TerminalOnly };

/// Accepted steps of one integration. States are stored row-major; with
/// Recording::TerminalOnly only the initial and terminal rows are kept.
class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(std::size_t dimension) : dim_(dimension) {}

    std::size_t dimension() const { return dim_; }
    std::size_t size() const { return xs_.size(); }
    bool empty() const { return xs_.empty(); }

    std::span<const double> xs() const { return xs_; }
    double x(std::size_t i) const { return xs_[i]; }
    std::span<const Complex> state(std::size_t i) const { return {ys_.data() + i * dim_, dim_}; }

    double x_end() const { return xs_.back(); }
    std::span<const Complex> y_end() const { return state(size() - 1); }

    StopReason stop_reason = StopReason::ReachedEnd;
    long steps_taken = 0;
    long steps_rejected = 0;

    void push(double x, std::span<const Complex> y);
    void replace_last(double x, std::span<const Complex> y);

private:
    std::size_t dim_ = 0;
    std::vector<double> xs_;
    std::vector<Complex> ys_;
};

/// Adaptive Dormand-Prince 5(4) integration from x0 to x1 (either direction)
/// with PI step-size control. Real and imaginary parts are error-controlled
/// as independent components: |err| <= abs + rel * |y|.
///
/// Stops early with EventFired when `event` returns true at an accepted step,
/// or StepFailure when the step underflows `min_step` or `max_steps` is
/// exhausted; the last accepted state is always finite.
Trajectory integrate(const OdeSystem& sys, double x0, double x1, std::span<const Complex> y0, Complex lambda,
                     const Tolerances& tol, const EventFn& event = {}, Recording recording = Recording::Full);

/// Launches two integrations from the same state at `start`, one toward each
/// cut. Returns (toward lower cut, toward upper cut).
std::pair<Trajectory, Trajectory> integrate_bidirectional(const OdeSystem& sys, double start,
                                                          std::pair<double, double> cuts,
                                                          std::span<const Complex> y0, Complex lambda,
                                                          const Tolerances& tol, const EventFn& event = {},
                                                          Recording recording = Recording::Full);

}  // namespace schwarzsl
