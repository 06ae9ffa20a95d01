#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "epsplane/errors.hpp"
#include "epsplane/permittivity.hpp"

namespace epsplane {

// ============================================================================
// Constants
// ============================================================================

/// Speed of light in vacuum, m/s.
inline constexpr double speed_of_light = 2.99792458e8;

/// Center frequency of the screening band, GHz.
inline constexpr double default_frequency_ghz = 30.0;

// ============================================================================
// Half-space reflection
// ============================================================================

/// Normal-incidence Fresnel reflection coefficient of an air/material
/// interface, Gamma = (1 - n) / (1 + n). |Gamma| < 1 for any passive medium.
[[nodiscard]] inline std::complex<double> halfspace_reflection(const ComplexPermittivity& eps) {
    const std::complex<double> n = refractive_index(eps);
    return (1.0 - n) / (1.0 + n);
}

/// Reflection coefficient of the interface between two media,
/// Gamma = (n_from - n_to) / (n_from + n_to), wave incident from `from`.
[[nodiscard]] inline std::complex<double> interface_reflection(const ComplexPermittivity& from,
                                                               const ComplexPermittivity& to) {
    const std::complex<double> n1 = refractive_index(from);
    const std::complex<double> n2 = refractive_index(to);
    return (n1 - n2) / (n1 + n2);
}

/// Power reflectivity |Gamma|^2 of an air/material interface.
[[nodiscard]] inline double halfspace_reflectivity_power(const ComplexPermittivity& eps) {
    return std::norm(halfspace_reflection(eps));
}

// ============================================================================
// Attenuation
// ============================================================================

/// One-way power decay inside a medium, dB per millimeter.
/// alpha = (2 pi f / c) |Im n| Np/m, converted with 20 log10(e) dB per Np.
[[nodiscard]] inline double attenuation_db_per_mm(const ComplexPermittivity& eps,
                                                  double frequency_ghz = default_frequency_ghz) {
    if (!(frequency_ghz > 0.0) || !std::isfinite(frequency_ghz))
        throw DomainError("frequency must be positive and finite");
    const double k0 = 2.0 * std::numbers::pi * frequency_ghz * 1e9 / speed_of_light;
    const double alpha_np_per_m = k0 * std::abs(refractive_index(eps).imag());
    return 20.0 * std::log10(std::exp(1.0)) * alpha_np_per_m * 1e-3;
}

// ============================================================================
// Slab on a backing half-space
// ============================================================================

/// Dielectric slab worn flat against a backing half-space, illuminated at
/// normal incidence from the air side.
struct SlabScene {
    ComplexPermittivity slab;
    double thickness_mm = 0.0;
    ComplexPermittivity backing = dry_skin;
    double frequency_ghz = default_frequency_ghz;
};

/// Knobs for the visibility decision in slab_response.
struct EchoConfig {
    /// Back echo counts as visible when within this many dB of the bare-skin return.
    double visibility_margin_db = 15.0;
    /// Reference half-space for the bare-skin return and the relative ratio.
    ComplexPermittivity skin_reference = dry_skin;
};

/// Single-bounce power budget of a SlabScene.
struct EchoSummary {
    double front_reflectivity_power = 0.0;
    double back_echo_power = 0.0;
    double two_way_loss_db = 0.0;
    bool back_surface_visible = false;
    double skin_relative_ratio = 0.0;
};

/// Front reflectivity normalized to the bare reference return.
/// Throws DomainError when the reference reflects nothing (eps = 1).
[[nodiscard]] inline double skin_relative_ratio(double front_reflectivity_power,
                                                const ComplexPermittivity& reference = dry_skin) {
    if (!(front_reflectivity_power >= 0.0) || !std::isfinite(front_reflectivity_power))
        throw DomainError("front reflectivity power must be finite and nonnegative");
    const double ref_power = halfspace_reflectivity_power(reference);
    if (ref_power == 0.0)
        throw DomainError("reference medium reflects nothing, ratio undefined");
    return front_reflectivity_power / ref_power;
}

/// Single-bounce, incoherent two-interface response of a slab on a backing.
/// The back echo crosses the front interface twice and the slab twice; the
/// visibility test compares it against the bare reference return minus the
/// configured margin.
[[nodiscard]] inline EchoSummary slab_response(const SlabScene& scene, const EchoConfig& config = {}) {
    if (!scene.slab.is_physical() || !scene.backing.is_physical())
        throw DomainError("slab and backing permittivities must be physical");
    if (!(scene.thickness_mm > 0.0) || !std::isfinite(scene.thickness_mm))
        throw DomainError("slab thickness must be positive and finite");
    if (!(scene.frequency_ghz > 0.0) || !std::isfinite(scene.frequency_ghz))
        throw DomainError("frequency must be positive and finite");

    EchoSummary echo;
    echo.front_reflectivity_power = halfspace_reflectivity_power(scene.slab);
    echo.two_way_loss_db =
        2.0 * scene.thickness_mm * attenuation_db_per_mm(scene.slab, scene.frequency_ghz);

    const double back_interface_power = std::norm(interface_reflection(scene.slab, scene.backing));
    const double front_transmission = 1.0 - echo.front_reflectivity_power;
    echo.back_echo_power = back_interface_power * front_transmission * front_transmission *
                           std::pow(10.0, -echo.two_way_loss_db / 10.0);

    const double reference_power = halfspace_reflectivity_power(config.skin_reference);
    const double visibility_floor =
        std::pow(10.0, -config.visibility_margin_db / 10.0) * reference_power;
    echo.back_surface_visible = echo.back_echo_power >= visibility_floor;
    echo.skin_relative_ratio = skin_relative_ratio(echo.front_reflectivity_power, config.skin_reference);
    return echo;
}

} // namespace epsplane
