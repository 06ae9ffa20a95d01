#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "epsplane/errors.hpp"
#include "epsplane/geometry.hpp"
#include "epsplane/permittivity.hpp"

namespace epsplane {

// ============================================================================
// Decision regions on the permittivity plane
// ============================================================================

/// What landing inside a region means for the verdict.
enum class RegionKind { hazard, safe };

/// Closed axis-aligned box in linear (eps', eps'') coordinates.
struct Region {
    std::string name;
    RegionKind semantics = RegionKind::hazard;
    double real_min = 1.0;
    double real_max = 1.0;
    double loss_min = 0.0;
    double loss_max = 0.0;
    /// Free-text caveat echoed into verdict rationales for hits.
    std::string note;

    [[nodiscard]] bool operator==(const Region&) const = default;

    [[nodiscard]] Rect rect() const noexcept { return {real_min, real_max, loss_min, loss_max}; }

    [[nodiscard]] bool contains(const ComplexPermittivity& eps) const noexcept {
        return rect().contains(eps.real, eps.loss);
    }
};

/// Named collection of regions, evaluated in order.
struct RegionSet {
    std::string name;
    std::vector<Region> regions;

    [[nodiscard]] bool operator==(const RegionSet&) const = default;
};

/// Loss interval assumed for objects whose back surface is visible.
struct LossInterval {
    double lo = 0.0005;
    double hi = 0.055;
};

/// Screening boxes tuned for the 30 GHz material set: a low-loss hazard box
/// around the solid explosives, a safe box for common clothing and packaging,
/// and a high-loss hazard box for water-based liquids.
[[nodiscard]] inline RegionSet default_regions() {
    RegionSet rs;
    rs.name = "builtin-default";
    rs.regions = {
        {"lower-hazard", RegionKind::hazard, 2.2, 3.7, 0.0005, 0.055,
         "box also holds benign threat surrogates (sugar, salt, baking soda); "
         "route to secondary inspection"},
        {"safe", RegionKind::safe, 1.3, 3.2, 0.06, 0.5, ""},
        {"upper-hazard", RegionKind::hazard, 3.8, 60.0, 0.8, 60.0,
         "peroxides and similar water-based materials"},
    };
    return rs;
}

// ============================================================================
// Validation
// ============================================================================

/// One structural problem in a region set.
struct RegionIssue {
    std::string location;
    std::string message;
};

/// Collect every structural problem; empty result means the set is usable.
[[nodiscard]] inline std::vector<RegionIssue> validate_region_set(const RegionSet& rs) {
    std::vector<RegionIssue> issues;
    bool any_hazard = false;
    std::size_t index = 0;
    for (const auto& r : rs.regions) {
        const std::string where =
            "region " + std::to_string(index) + (r.name.empty() ? "" : " '" + r.name + "'");
        if (r.name.empty())
            issues.push_back({where, "name must be nonempty"});
        if (!std::isfinite(r.real_min) || !std::isfinite(r.real_max) ||
            !std::isfinite(r.loss_min) || !std::isfinite(r.loss_max))
            issues.push_back({where, "bounds must be finite"});
        else {
            if (!(r.real_min >= 1.0))
                issues.push_back({where, "real_min must be >= 1"});
            if (!(r.real_min < r.real_max))
                issues.push_back({where, "real_min must be < real_max"});
            if (!(r.loss_min >= 0.0))
                issues.push_back({where, "loss_min must be >= 0"});
            if (!(r.loss_min < r.loss_max))
                issues.push_back({where, "loss_min must be < loss_max"});
        }
        any_hazard = any_hazard || r.semantics == RegionKind::hazard;
        ++index;
    }
    if (!any_hazard)
        issues.push_back({"region set '" + rs.name + "'",
                          "needs at least one hazard region for threat screening"});
    return issues;
}

// ============================================================================
// JSON configuration file
// ============================================================================

namespace detail {

[[nodiscard]] inline std::string region_kind_name(RegionKind kind) {
    return kind == RegionKind::hazard ? "hazard" : "safe";
}

[[nodiscard]] inline RegionKind parse_region_kind(const std::string& s) {
    if (s == "hazard")
        return RegionKind::hazard;
    if (s == "safe")
        return RegionKind::safe;
    throw ConfigError("semantics must be 'hazard' or 'safe', got '" + s + "'");
}

} // namespace detail

/// Parse a region set from its JSON text. Throws ConfigError on schema
/// violations; structural bounds problems are reported through
/// validate_region_set instead.
[[nodiscard]] inline RegionSet parse_region_set(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("region file is not valid JSON: ") + e.what());
    }
    try {
        RegionSet rs;
        rs.name = j.at("name").get<std::string>();
        for (const auto& jr : j.at("regions")) {
            Region r;
            r.name = jr.at("name").get<std::string>();
            r.semantics = detail::parse_region_kind(jr.at("semantics").get<std::string>());
            r.real_min = jr.at("real_min").get<double>();
            r.real_max = jr.at("real_max").get<double>();
            r.loss_min = jr.at("loss_min").get<double>();
            r.loss_max = jr.at("loss_max").get<double>();
            if (jr.contains("note"))
                r.note = jr.at("note").get<std::string>();
            rs.regions.push_back(std::move(r));
        }
        return rs;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("region file schema: ") + e.what());
    }
}

/// Load a region set from a JSON file and refuse structurally broken sets.
[[nodiscard]] inline RegionSet load_region_set(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    RegionSet rs = parse_region_set(buffer.str());
    const auto issues = validate_region_set(rs);
    if (!issues.empty())
        throw ConfigError(issues.front().location + ": " + issues.front().message);
    return rs;
}

/// Serialize to the JSON schema parse_region_set accepts, stable field order.
[[nodiscard]] inline std::string serialize_region_set(const RegionSet& rs) {
    nlohmann::ordered_json j;
    j["name"] = rs.name;
    j["regions"] = nlohmann::ordered_json::array();
    for (const auto& r : rs.regions) {
        nlohmann::ordered_json jr;
        jr["name"] = r.name;
        jr["semantics"] = detail::region_kind_name(r.semantics);
        jr["real_min"] = r.real_min;
        jr["real_max"] = r.real_max;
        jr["loss_min"] = r.loss_min;
        jr["loss_max"] = r.loss_max;
        if (!r.note.empty())
            jr["note"] = r.note;
        j["regions"].push_back(std::move(jr));
    }
    return j.dump(2) + "\n";
}

} // namespace epsplane
