#pragma once

#include <cmath>
#include <complex>

#include "epsplane/errors.hpp"

namespace epsplane {

// ============================================================================
// Complex permittivity
// ============================================================================

/// Relative complex permittivity eps = real - j*loss (e^{+j w t} convention).
/// The loss term is stored as a nonnegative magnitude; the minus sign is
/// applied where the complex value is formed.
struct ComplexPermittivity {
    double real = 1.0;
    double loss = 0.0;

    [[nodiscard]] constexpr bool operator==(const ComplexPermittivity&) const = default;

    /// Full complex value real - j*loss.
    [[nodiscard]] std::complex<double> value() const noexcept { return {real, -loss}; }

    /// True for values a passive bulk material can take (real >= 1, loss >= 0, finite).
    [[nodiscard]] bool is_physical() const noexcept {
        return std::isfinite(real) && std::isfinite(loss) && real >= 1.0 && loss >= 0.0;
    }
};

/// Reference permittivity of dry human skin at 30 GHz.
inline constexpr ComplexPermittivity dry_skin{20.0, 16.0};

/// Loss tangent eps''/eps'. Throws DomainError when real <= 0.
[[nodiscard]] inline double loss_tangent(const ComplexPermittivity& eps) {
    if (!(eps.real > 0.0))
        throw DomainError("loss tangent undefined for eps' <= 0");
    return eps.loss / eps.real;
}

/// Complex refractive index n = sqrt(real - j*loss), principal branch.
/// Re(n) >= 0 and Im(n) <= 0, so exp(-j k0 n z) decays into the medium.
[[nodiscard]] inline std::complex<double> refractive_index(const ComplexPermittivity& eps) {
    return std::sqrt(eps.value());
}

} // namespace epsplane
