#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "epsplane/csv.hpp"
#include "epsplane/errors.hpp"
#include "epsplane/geometry.hpp"
#include "epsplane/locus_solver.hpp"
#include "epsplane/permittivity.hpp"
#include "epsplane/regions.hpp"

namespace epsplane {

// ============================================================================
// Verdicts
// ============================================================================

/// Screening outcome. Hazard hits dominate; PatDown is the conservative
/// fallback for anything the regions cannot vouch for.
enum class Outcome { safe, threat, pat_down };

[[nodiscard]] inline std::string outcome_name(Outcome o) {
    switch (o) {
    case Outcome::safe:
        return "safe";
    case Outcome::threat:
        return "threat";
    case Outcome::pat_down:
    default:
        return "pat-down";
    }
}

/// Outcome plus the regions that produced it and a human-readable trail.
struct Verdict {
    Outcome outcome = Outcome::pat_down;
    std::vector<std::string> touched_regions;
    std::string rationale;
};

// ============================================================================
// Evidence
// ============================================================================

/// Fully resolved permittivity point.
struct PointEvidence {
    ComplexPermittivity value;
};

/// Visible back surface: real part known, loss only bounded by the band.
struct LosslessBandEvidence {
    double real = 1.0;
    LossInterval band;
};

/// Hidden back surface: every permittivity consistent with the front return.
struct LocusEvidence {
    LocusCurve curve;
};

using PermittivityEvidence = std::variant<PointEvidence, LosslessBandEvidence, LocusEvidence>;

namespace detail {

inline void append_notes(std::string& rationale, const std::vector<const Region*>& hazards) {
    for (const Region* r : hazards) {
        if (!r->note.empty())
            rationale += "; " + r->note;
    }
}

[[nodiscard]] inline std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty())
            out += ", ";
        out += n;
    }
    return out;
}

} // namespace detail

// ============================================================================
// Classification
// ============================================================================

/// Locate one point against the region set. Hazard wins over Safe; a point
/// outside every region is a PatDown.
[[nodiscard]] inline Verdict classify_point(const ComplexPermittivity& eps, const RegionSet& rs) {
    if (!eps.is_physical())
        throw DomainError("permittivity must be physical");

    std::vector<std::string> touched;
    std::vector<const Region*> hazard_hits;
    bool safe_hit = false;
    for (const auto& region : rs.regions) {
        if (!region.contains(eps))
            continue;
        touched.push_back(region.name);
        if (region.semantics == RegionKind::hazard)
            hazard_hits.push_back(&region);
        else
            safe_hit = true;
    }

    Verdict v;
    v.touched_regions = std::move(touched);
    const std::string where =
        "point (" + format_double(eps.real) + ", " + format_double(eps.loss) + ")";
    if (!hazard_hits.empty()) {
        v.outcome = Outcome::threat;
        v.rationale = where + " inside hazard region " + detail::join(v.touched_regions);
        detail::append_notes(v.rationale, hazard_hits);
    } else if (safe_hit) {
        v.outcome = Outcome::safe;
        v.rationale = where + " inside safe region " + detail::join(v.touched_regions);
    } else {
        v.outcome = Outcome::pat_down;
        v.rationale = where + " outside every configured region";
    }
    return v;
}

/// Locate the vertical segment {real} x band: a back-surface-visible object
/// whose loss cannot be measured. Threat when the segment meets any hazard
/// box; Safe when the safe boxes cover the whole band at that real part;
/// PatDown otherwise.
[[nodiscard]] inline Verdict classify_lossless_band(double real, const RegionSet& rs,
                                                    const LossInterval& band = {}) {
    if (!std::isfinite(real) || real < 1.0)
        throw DomainError("real part must be finite and >= 1");
    if (!std::isfinite(band.lo) || !std::isfinite(band.hi) || band.lo < 0.0 || band.lo > band.hi)
        throw DomainError("loss band must satisfy 0 <= lo <= hi");

    std::vector<std::string> touched;
    std::vector<const Region*> hazard_hits;
    std::vector<std::pair<double, double>> safe_cover;
    for (const auto& region : rs.regions) {
        const bool spans_real = real >= region.real_min && real <= region.real_max;
        const bool overlaps_band = spans_real && band.hi >= region.loss_min &&
                                   band.lo <= region.loss_max;
        if (overlaps_band)
            touched.push_back(region.name);
        if (region.semantics == RegionKind::hazard) {
            if (overlaps_band)
                hazard_hits.push_back(&region);
        } else if (spans_real) {
            safe_cover.emplace_back(region.loss_min, region.loss_max);
        }
    }

    Verdict v;
    v.touched_regions = std::move(touched);
    const std::string where = "lossless band at eps' = " + format_double(real);
    if (!hazard_hits.empty()) {
        v.outcome = Outcome::threat;
        v.rationale = where + " crosses hazard region " + detail::join(v.touched_regions);
        detail::append_notes(v.rationale, hazard_hits);
    } else if (intervals_cover(std::move(safe_cover), band.lo, band.hi)) {
        v.outcome = Outcome::safe;
        v.rationale = where + " lies entirely inside the safe regions";
    } else {
        v.outcome = Outcome::pat_down;
        v.rationale = where + " is not covered by the configured regions";
    }
    return v;
}

/// Locate a locus curve. Threat when any sample or any segment between
/// consecutive samples meets a hazard box; Safe when every sample sits inside
/// the union of safe boxes; PatDown otherwise.
[[nodiscard]] inline Verdict classify_locus(const LocusCurve& curve, const RegionSet& rs) {
    if (curve.points.empty())
        throw EmptyCurveError("locus curve has no points");

    std::vector<std::string> touched;
    std::vector<const Region*> hazard_hits;
    const auto touch = [&](const Region& region) {
        if (std::find(touched.begin(), touched.end(), region.name) == touched.end())
            touched.push_back(region.name);
    };

    for (const auto& region : rs.regions) {
        const Rect rect = region.rect();
        bool hit = false;
        for (std::size_t i = 0; i < curve.points.size() && !hit; ++i) {
            const auto& p = curve.points[i];
            if (rect.contains(p.real, p.loss)) {
                hit = true;
            } else if (i + 1 < curve.points.size()) {
                const auto& q = curve.points[i + 1];
                hit = segment_intersects_rect(p.real, p.loss, q.real, q.loss, rect);
            }
        }
        if (!hit)
            continue;
        touch(region);
        if (region.semantics == RegionKind::hazard)
            hazard_hits.push_back(&region);
    }

    bool all_samples_safe = true;
    for (const auto& p : curve.points) {
        bool inside_safe = false;
        for (const auto& region : rs.regions) {
            if (region.semantics == RegionKind::safe && region.contains(p)) {
                inside_safe = true;
                break;
            }
        }
        if (!inside_safe) {
            all_samples_safe = false;
            break;
        }
    }

    Verdict v;
    v.touched_regions = std::move(touched);
    const std::string where = "reflectivity locus (ratio " + format_double(curve.target_ratio) +
                              ", " + std::to_string(curve.points.size()) + " samples)";
    if (!hazard_hits.empty()) {
        v.outcome = Outcome::threat;
        v.rationale = where + " reaches hazard region " + detail::join(v.touched_regions);
        detail::append_notes(v.rationale, hazard_hits);
    } else if (all_samples_safe) {
        v.outcome = Outcome::safe;
        v.rationale = where + " stays inside the safe regions";
    } else {
        v.outcome = Outcome::pat_down;
        v.rationale = where + " leaves the configured regions, unable to clear";
    }
    return v;
}

/// Dispatch any evidence form to its rule.
[[nodiscard]] inline Verdict classify_evidence(const PermittivityEvidence& evidence,
                                               const RegionSet& rs) {
    return std::visit(
        [&](const auto& e) -> Verdict {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, PointEvidence>)
                return classify_point(e.value, rs);
            else if constexpr (std::is_same_v<T, LosslessBandEvidence>)
                return classify_lossless_band(e.real, rs, e.band);
            else
                return classify_locus(e.curve, rs);
        },
        evidence);
}

// ============================================================================
// Observation pipeline
// ============================================================================

/// What the radar image processing actually yields for one object.
struct Observation {
    bool back_surface_visible = false;
    /// Real part predicted by the characterization algorithm (visible case).
    std::optional<double> predicted_real;
    /// Front reflectivity relative to bare skin (hidden case).
    std::optional<double> skin_relative_ratio;
};

/// Knobs for turning an observation into evidence.
struct ObservationConfig {
    std::vector<double> loss_grid = default_loss_grid();
    ComplexPermittivity reference = dry_skin;
    LossInterval lossless_band;
    LocusSolverConfig solver;
};

/// Verdict plus the evidence it was based on. Evidence is absent when the
/// reflectivity could not be inverted.
struct ObservationResult {
    Verdict verdict;
    std::optional<PermittivityEvidence> evidence;
};

/// Turn one observation into evidence and classify it. A visible back
/// surface yields lossless-band evidence from the predicted real part; a
/// hidden one yields a locus from the reflectivity ratio. An unsolvable
/// ratio is a PatDown, not an error.
[[nodiscard]] inline ObservationResult classify_observation(const Observation& obs,
                                                            const RegionSet& rs,
                                                            const ObservationConfig& config = {}) {
    ObservationResult result;
    if (obs.back_surface_visible) {
        if (!obs.predicted_real)
            throw MissingInputError("visible back surface requires predicted_real");
        LosslessBandEvidence evidence{*obs.predicted_real, config.lossless_band};
        result.verdict = classify_lossless_band(evidence.real, rs, evidence.band);
        result.evidence = evidence;
        return result;
    }

    if (!obs.skin_relative_ratio)
        throw MissingInputError("hidden back surface requires skin_relative_ratio");
    try {
        LocusEvidence evidence{
            solve_locus(*obs.skin_relative_ratio, config.loss_grid, config.reference, config.solver)};
        result.verdict = classify_locus(evidence.curve, rs);
        result.evidence = std::move(evidence);
    } catch (const NoSolutionError& e) {
        result.verdict.outcome = Outcome::pat_down;
        result.verdict.rationale = std::string("unresolvable reflectivity: ") + e.what();
    }
    return result;
}

} // namespace epsplane
