#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epsplane/em_model.hpp"
#include "epsplane/errors.hpp"
#include "epsplane/permittivity.hpp"

namespace epsplane {

// ============================================================================
// Reflectivity locus inversion
// ============================================================================

/// Solver knobs for solve_locus.
struct LocusSolverConfig {
    /// Upper end of the eps' search interval.
    double real_max = 1e4;
    /// Residual bound, relative to the reference reflectivity power.
    double residual_rel_tol = 1e-9;
    /// Bisection iteration cap per grid value.
    int max_iterations = 200;
};

/// Curve of permittivities whose front reflectivity matches a target ratio.
/// points[i].loss == loss_grid[i]; both run in strictly increasing loss.
struct LocusCurve {
    double target_ratio = 0.0;
    std::vector<ComplexPermittivity> points;
    std::vector<double> loss_grid;
    /// Requested grid values with no solution on the principal branch.
    std::vector<double> skipped_losses;
    /// Grid values where a second root with lower eps' exists and was not
    /// included (see branch note at solve_locus).
    std::vector<double> ambiguous_losses;
};

/// Two-sided ratio-tolerance band around a nominal curve. A side is absent
/// when its shifted ratio admits no curve at all.
struct LocusBand {
    std::optional<LocusCurve> lower;
    std::optional<LocusCurve> upper;
};

namespace detail {

/// Location of the reflectivity minimum along a fixed-loss slice.
/// d|Gamma|^2/deps' changes sign where |eps| = 2 eps' - 1, i.e. at
/// eps' = (2 + sqrt(1 + 3 loss^2)) / 3; |Gamma|^2 falls on [1, eps'_min] and
/// rises beyond it, so it is monotone only for loss = 0.
[[nodiscard]] inline double reflectivity_min_real(double loss) noexcept {
    return (2.0 + std::sqrt(1.0 + 3.0 * loss * loss)) / 3.0;
}

} // namespace detail

/// Log-spaced loss grid, 201 points from exactly 1e-4 to exactly 100,
/// covering every builtin material's loss with margin.
[[nodiscard]] inline std::vector<double> default_loss_grid() {
    constexpr double lo = 1e-4;
    constexpr double hi = 100.0;
    constexpr int segments = 200;
    std::vector<double> grid;
    grid.reserve(segments + 1);
    grid.push_back(lo);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    for (int i = 1; i < segments; ++i)
        grid.push_back(std::exp(log_lo + i * (log_hi - log_lo) / segments));
    grid.push_back(hi);
    return grid;
}

/// Invert |Gamma(eps' - j loss)|^2 = target_ratio * |Gamma(reference)|^2 for
/// eps' at every grid loss value.
///
/// Each fixed-loss slice is unimodal with its minimum at
/// eps' = (2 + sqrt(1 + 3 loss^2)) / 3, so the solver bisects the rising
/// branch [eps'_min, real_max], which is the branch that continues the
/// lossless solution and holds the self-root of every physical material in
/// the builtin set. When the falling branch [1, eps'_min] also crosses the
/// target, the grid value is noted in ambiguous_losses; when no branch
/// crosses it, in skipped_losses. Throws NoSolutionError when every grid
/// value is skipped.
[[nodiscard]] inline LocusCurve solve_locus(double target_ratio, std::span<const double> loss_grid,
                                            const ComplexPermittivity& reference = dry_skin,
                                            const LocusSolverConfig& config = {}) {
    if (!(target_ratio >= 0.0) || !std::isfinite(target_ratio))
        throw DomainError("target ratio must be finite and nonnegative");
    if (!reference.is_physical())
        throw DomainError("reference permittivity must be physical");
    if (loss_grid.empty())
        throw InvalidGridError("loss grid is empty");
    for (std::size_t i = 0; i < loss_grid.size(); ++i) {
        if (!std::isfinite(loss_grid[i]) || loss_grid[i] < 0.0)
            throw InvalidGridError("loss grid values must be finite and nonnegative");
        if (i > 0 && loss_grid[i] <= loss_grid[i - 1])
            throw InvalidGridError("loss grid must be strictly increasing");
    }
    if (!(config.real_max > 1.0))
        throw DomainError("search interval must extend beyond eps' = 1");

    const double reference_power = halfspace_reflectivity_power(reference);
    if (reference_power == 0.0)
        throw DomainError("reference medium reflects nothing, ratio undefined");
    const double target_power = target_ratio * reference_power;
    const double tol = config.residual_rel_tol * reference_power;

    const auto residual = [&](double real, double loss) {
        return halfspace_reflectivity_power({real, loss}) - target_power;
    };

    LocusCurve curve;
    curve.target_ratio = target_ratio;

    for (const double loss : loss_grid) {
        double lo = std::min(detail::reflectivity_min_real(loss), config.real_max);
        double hi = config.real_max;
        double f_lo = residual(lo, loss);
        const double f_hi = residual(hi, loss);

        const bool falling_branch_crosses = lo > 1.0 && residual(1.0, loss) >= 0.0 && f_lo <= 0.0;
        if (f_lo > tol || f_hi < -tol) {
            curve.skipped_losses.push_back(loss);
            if (falling_branch_crosses)
                curve.ambiguous_losses.push_back(loss);
            continue;
        }

        double root = lo;
        double f_root = f_lo;
        for (int it = 0; it < config.max_iterations && std::abs(f_root) > tol; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi)
                break;
            const double f_mid = residual(mid, loss);
            if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
            root = mid;
            f_root = f_mid;
        }

        curve.points.push_back({root, loss});
        curve.loss_grid.push_back(loss);
        if (falling_branch_crosses)
            curve.ambiguous_losses.push_back(loss);
    }

    if (curve.points.empty())
        throw NoSolutionError("target ratio " + std::to_string(target_ratio) +
                              " is unreachable at every requested grid loss");
    return curve;
}

/// Curves at target_ratio * (1 -+ ratio_tolerance), re-solved over the
/// nominal curve's full requested grid. A side that admits no curve is
/// reported as an absent optional.
[[nodiscard]] inline LocusBand uncertainty_band(const LocusCurve& curve, double ratio_tolerance,
                                                const ComplexPermittivity& reference = dry_skin,
                                                const LocusSolverConfig& config = {}) {
    if (!(ratio_tolerance >= 0.0) || !std::isfinite(ratio_tolerance))
        throw DomainError("ratio tolerance must be finite and nonnegative");
    if (curve.loss_grid.empty() && curve.skipped_losses.empty())
        throw EmptyCurveError("band requested for a curve with no grid");

    std::vector<double> grid;
    grid.reserve(curve.loss_grid.size() + curve.skipped_losses.size());
    std::merge(curve.loss_grid.begin(), curve.loss_grid.end(), curve.skipped_losses.begin(),
               curve.skipped_losses.end(), std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const auto solve_side = [&](double ratio) -> std::optional<LocusCurve> {
        try {
            return solve_locus(ratio, grid, reference, config);
        } catch (const NoSolutionError&) {
            return std::nullopt;
        }
    };

    LocusBand band;
    band.lower = solve_side(curve.target_ratio * (1.0 - ratio_tolerance));
    band.upper = solve_side(curve.target_ratio * (1.0 + ratio_tolerance));
    return band;
}

} // namespace epsplane
