#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace schwarzsl {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorKind {
    InvalidArgument,
    ZeroCoefficient,
    ZeroGauge,
    ZeroDerivative,
    DimensionMismatch,
    NonFiniteRhs,
    DegenerateLaunch,
    DegenerateBoundary,
    NotAsymptotic,
    InsufficientSamples,
    SingularSurface,
    LimitNotConverged,
    NoConvergence,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace schwarzsl
