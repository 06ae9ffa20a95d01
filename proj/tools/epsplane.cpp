// epsplane: screen body-worn dielectric objects by where their complex
// permittivity lands on the 30 GHz permittivity plane.
//
// Exit codes: 0 safe or plain success, 1 validation findings or internal
// error, 2 usage or input error, 3 threat, 4 pat-down.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epsplane/epsplane.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_findings = 1;
constexpr int exit_usage = 2;
constexpr int exit_threat = 3;
constexpr int exit_pat_down = 4;

constexpr const char* builtin_tag = "builtin";

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    [[nodiscard]] double ms() const {
        const auto d = std::chrono::steady_clock::now() - start;
        return std::chrono::duration<double, std::milli>(d).count();
    }
};

int verdict_exit_code(epsplane::Outcome outcome) {
    switch (outcome) {
    case epsplane::Outcome::safe:
        return exit_ok;
    case epsplane::Outcome::threat:
        return exit_threat;
    case epsplane::Outcome::pat_down:
    default:
        return exit_pat_down;
    }
}

epsplane::MaterialDatabase resolve_db(const std::string& spec) {
    if (spec == builtin_tag)
        return epsplane::builtin_database();
    return epsplane::load_database(spec);
}

epsplane::RegionSet resolve_regions(const std::string& spec) {
    if (spec == builtin_tag)
        return epsplane::default_regions();
    return epsplane::load_region_set(spec);
}

std::size_t display_width(const std::string& s) {
    std::size_t w = 0;
    for (const unsigned char c : s) {
        if ((c & 0xC0) != 0x80)
            ++w;
    }
    return w;
}

void pad_to(std::string& line, std::size_t written, std::size_t column) {
    while (written < column) {
        line.push_back(' ');
        ++written;
    }
}

bool parse_pair(const std::string& text, double& a, double& b) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        return false;
    const auto first = epsplane::parse_double(text.substr(0, comma));
    const auto second = epsplane::parse_double(text.substr(comma + 1));
    if (!first || !second)
        return false;
    a = *first;
    b = *second;
    return true;
}

std::vector<double> make_loss_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw epsplane::DomainError("grid needs 0 < min < max and at least 2 points");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    grid.push_back(lo);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    for (int i = 1; i + 1 < points; ++i)
        grid.push_back(std::exp(log_lo + i * (log_hi - log_lo) / (points - 1)));
    grid.push_back(hi);
    return grid;
}

ordered_json verdict_json(const epsplane::Verdict& v) {
    ordered_json j;
    j["outcome"] = epsplane::outcome_name(v.outcome);
    j["touched_regions"] = v.touched_regions;
    j["rationale"] = v.rationale;
    return j;
}

ordered_json evidence_json(const epsplane::PermittivityEvidence& evidence) {
    ordered_json j;
    if (const auto* p = std::get_if<epsplane::PointEvidence>(&evidence)) {
        j["kind"] = "point";
        j["real"] = p->value.real;
        j["loss"] = p->value.loss;
    } else if (const auto* b = std::get_if<epsplane::LosslessBandEvidence>(&evidence)) {
        j["kind"] = "lossless-band";
        j["real"] = b->real;
        j["band"] = {b->band.lo, b->band.hi};
    } else if (const auto* l = std::get_if<epsplane::LocusEvidence>(&evidence)) {
        j["kind"] = "locus";
        j["target_ratio"] = l->curve.target_ratio;
        auto points = ordered_json::array();
        for (const auto& pt : l->curve.points)
            points.push_back({pt.real, pt.loss});
        j["points"] = std::move(points);
        j["skipped_losses"] = l->curve.skipped_losses;
        j["ambiguous_losses"] = l->curve.ambiguous_losses;
    }
    return j;
}

void print_verdict(const epsplane::Verdict& v) {
    std::cout << "verdict: " << epsplane::outcome_name(v.outcome) << "\n";
    std::cout << "rationale: " << v.rationale << "\n";
    if (!v.touched_regions.empty()) {
        std::cout << "touched regions:";
        for (const auto& name : v.touched_regions)
            std::cout << ' ' << name;
        std::cout << "\n";
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw epsplane::IoError("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw epsplane::IoError("short write to '" + path + "'");
}

// ----------------------------------------------------------------------------
// list
// ----------------------------------------------------------------------------

int cmd_list(const std::string& db_spec, const std::string& category,
             const std::string& out_path) {
    const epsplane::MaterialDatabase full = resolve_db(db_spec);
    epsplane::MaterialDatabase db;
    db.frequency_ghz = full.frequency_ghz;
    for (const auto& r : full.records) {
        if (category.empty() || epsplane::normalize_name(r.category) ==
                                    epsplane::normalize_name(category))
            db.records.push_back(r);
    }

    std::size_t name_col = 4;
    for (const auto& r : db.records)
        name_col = std::max(name_col, display_width(r.name));
    name_col += 2;

    std::string header = "name";
    pad_to(header, 4, name_col);
    std::cout << header << "eps_real  eps_imag  loss_tan    source  category\n";
    for (const auto& r : db.records) {
        std::string line = r.name;
        pad_to(line, display_width(r.name), name_col);
        char tail[128];
        std::snprintf(tail, sizeof(tail), "%-8s  %-8s  %-10.4g  %-6s  %s",
                      epsplane::format_double(r.permittivity.real).c_str(),
                      epsplane::format_double(r.permittivity.loss).c_str(),
                      epsplane::loss_tangent(r.permittivity), r.source.c_str(),
                      r.category.c_str());
        std::cout << line << tail << "\n";
    }
    std::cout << db.records.size() << " materials at " << epsplane::format_double(db.frequency_ghz)
              << " GHz\n";

    if (!out_path.empty())
        epsplane::save_database_csv(db, out_path);
    return exit_ok;
}

// ----------------------------------------------------------------------------
// classify
// ----------------------------------------------------------------------------

struct ClassifyArgs {
    std::string point_text;
    std::optional<double> real;
    std::optional<double> ratio;
    std::string regions_spec = builtin_tag;
    std::string report_path = "run-report.json";
    bool no_report = false;
    bool timings = false;
    double grid_min = 1e-4;
    double grid_max = 100.0;
    int grid_points = 201;
    double band_lo = 0.0005;
    double band_hi = 0.055;
};

int cmd_classify(const ClassifyArgs& args) {
    const int evidence_flags = (args.point_text.empty() ? 0 : 1) + (args.real ? 1 : 0) +
                               (args.ratio ? 1 : 0);
    if (evidence_flags != 1) {
        std::cerr << "classify: exactly one of --point, --real, --ratio is required\n";
        return exit_usage;
    }

    Timer total;
    ordered_json report;
    report["schema"] = "epsplane-report/1";
    report["command"] = "classify";

    Timer load_timer;
    const epsplane::RegionSet rs = resolve_regions(args.regions_spec);
    const double load_ms = load_timer.ms();

    epsplane::ObservationConfig config;
    config.loss_grid = make_loss_grid(args.grid_min, args.grid_max, args.grid_points);
    config.lossless_band = {args.band_lo, args.band_hi};

    ordered_json inputs;
    epsplane::Verdict verdict;
    std::optional<epsplane::PermittivityEvidence> evidence_used;

    Timer solve_timer;
    if (!args.point_text.empty()) {
        double real = 0.0;
        double loss = 0.0;
        if (!parse_pair(args.point_text, real, loss)) {
            std::cerr << "classify: --point expects RE,IM\n";
            return exit_usage;
        }
        inputs["evidence"] = {{"kind", "point"}, {"real", real}, {"loss", loss}};
        epsplane::PermittivityEvidence e = epsplane::PointEvidence{{real, loss}};
        verdict = epsplane::classify_evidence(e, rs);
        evidence_used = std::move(e);
    } else if (args.real) {
        inputs["evidence"] = {{"kind", "lossless-band"},
                              {"real", *args.real},
                              {"band", {config.lossless_band.lo, config.lossless_band.hi}}};
        epsplane::Observation obs;
        obs.back_surface_visible = true;
        obs.predicted_real = *args.real;
        auto result = epsplane::classify_observation(obs, rs, config);
        verdict = std::move(result.verdict);
        evidence_used = std::move(result.evidence);
    } else {
        inputs["evidence"] = {{"kind", "ratio"}, {"ratio", *args.ratio}};
        epsplane::Observation obs;
        obs.back_surface_visible = false;
        obs.skin_relative_ratio = *args.ratio;
        auto result = epsplane::classify_observation(obs, rs, config);
        verdict = std::move(result.verdict);
        evidence_used = std::move(result.evidence);
    }
    const double solve_ms = solve_timer.ms();

    inputs["region_set"] = args.regions_spec == builtin_tag ? rs.name : args.regions_spec;
    inputs["solver"] = {{"grid_min", args.grid_min},
                        {"grid_max", args.grid_max},
                        {"grid_points", args.grid_points},
                        {"reference", {config.reference.real, config.reference.loss}},
                        {"real_max", config.solver.real_max},
                        {"residual_rel_tol", config.solver.residual_rel_tol}};
    report["inputs"] = std::move(inputs);
    report["verdict"] = verdict_json(verdict);
    report["evidence_used"] = evidence_used ? evidence_json(*evidence_used) : ordered_json(nullptr);
    report["artifacts"] = args.no_report ? ordered_json::array()
                                         : ordered_json::array({args.report_path});
    if (args.timings)
        report["timings_ms"] = {{"load", load_ms}, {"solve", solve_ms}, {"total", total.ms()}};

    if (!args.no_report)
        write_text_file(args.report_path, report.dump(2) + "\n");

    print_verdict(verdict);
    return verdict_exit_code(verdict.outcome);
}

// ----------------------------------------------------------------------------
// plot
// ----------------------------------------------------------------------------

int cmd_plot(const std::string& db_spec, const std::string& regions_spec,
             const std::string& out_path, const std::string& overlay_path) {
    const epsplane::MaterialDatabase db = resolve_db(db_spec);
    const epsplane::RegionSet rs = resolve_regions(regions_spec);

    std::optional<epsplane::LocusCurve> overlay;
    if (!overlay_path.empty()) {
        std::ifstream in(overlay_path);
        if (!in)
            throw epsplane::IoError("cannot open '" + overlay_path + "'");
        ordered_json report;
        try {
            report = ordered_json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw epsplane::ConfigError("overlay report is not valid JSON: " +
                                        std::string(e.what()));
        }
        if (!report.contains("evidence_used") || !report["evidence_used"].is_object() ||
            report["evidence_used"].value("kind", "") != "locus")
            throw epsplane::ConfigError("overlay report carries no locus evidence");
        epsplane::LocusCurve curve;
        curve.target_ratio = report["evidence_used"].value("target_ratio", 0.0);
        for (const auto& pt : report["evidence_used"].at("points")) {
            epsplane::ComplexPermittivity p{pt.at(0).get<double>(), pt.at(1).get<double>()};
            curve.points.push_back(p);
            curve.loss_grid.push_back(p.loss);
        }
        overlay = std::move(curve);
    }

    const std::string svg =
        epsplane::render_plane_svg(db, rs, overlay ? &*overlay : nullptr);
    write_text_file(out_path, svg);
    std::cout << "wrote " << out_path << " (" << db.records.size() << " materials, "
              << rs.regions.size() << " regions" << (overlay ? ", locus overlay" : "") << ")\n";
    return exit_ok;
}

// ----------------------------------------------------------------------------
// batch
// ----------------------------------------------------------------------------

int cmd_batch(const std::string& db_spec, const std::string& regions_spec, double thickness_mm,
              double visibility_margin_db, const std::string& out_path) {
    const epsplane::MaterialDatabase db = resolve_db(db_spec);
    const epsplane::RegionSet rs = resolve_regions(regions_spec);

    std::string csv = "name,eps_real,eps_imag,back_visible,evidence,verdict,error\n";
    std::size_t safe = 0;
    std::size_t threat = 0;
    std::size_t pat_down = 0;
    std::size_t failed = 0;

    epsplane::EchoConfig echo_config;
    echo_config.visibility_margin_db = visibility_margin_db;

    for (const auto& m : db.records) {
        std::string back_visible;
        std::string evidence;
        std::string verdict;
        std::string error;
        try {
            epsplane::SlabScene scene;
            scene.slab = m.permittivity;
            scene.thickness_mm = thickness_mm;
            scene.frequency_ghz = db.frequency_ghz;
            const epsplane::EchoSummary echo = epsplane::slab_response(scene, echo_config);

            epsplane::Observation obs;
            obs.back_surface_visible = echo.back_surface_visible;
            if (echo.back_surface_visible)
                obs.predicted_real = m.permittivity.real;
            else
                obs.skin_relative_ratio = echo.skin_relative_ratio;

            const auto result = epsplane::classify_observation(obs, rs);
            back_visible = echo.back_surface_visible ? "true" : "false";
            evidence = !result.evidence                ? "none"
                       : echo.back_surface_visible    ? "lossless-band"
                                                       : "locus";
            verdict = epsplane::outcome_name(result.verdict.outcome);
            switch (result.verdict.outcome) {
            case epsplane::Outcome::safe:
                ++safe;
                break;
            case epsplane::Outcome::threat:
                ++threat;
                break;
            case epsplane::Outcome::pat_down:
                ++pat_down;
                break;
            }
        } catch (const epsplane::Error& e) {
            error = e.what();
            ++failed;
        }
        csv += epsplane::csv_quote(m.name) + "," +
               epsplane::format_double(m.permittivity.real) + "," +
               epsplane::format_double(m.permittivity.loss) + "," + back_visible + "," +
               evidence + "," + verdict + "," + epsplane::csv_quote(error) + "\n";
    }

    write_text_file(out_path, csv);
    std::cout << "batch: " << db.records.size() << " materials at "
              << epsplane::format_double(thickness_mm) << " mm: " << threat << " threat, " << safe
              << " safe, " << pat_down << " pat-down, " << failed << " errors\n";
    return exit_ok;
}

// ----------------------------------------------------------------------------
// validate
// ----------------------------------------------------------------------------

int cmd_validate(const std::string& db_spec, const std::string& regions_spec) {
    int findings = 0;

    if (db_spec == builtin_tag) {
        std::cout << "db: builtin, " << epsplane::builtin_database().records.size()
                  << " records, ok\n";
    } else {
        const epsplane::ScanResult scan = epsplane::scan_database_csv(db_spec);
        for (const auto& d : scan.diagnostics) {
            std::cout << "db: row " << d.row << ": " << d.message << "\n";
            ++findings;
        }
        if (scan.diagnostics.empty())
            std::cout << "db: " << db_spec << ", " << scan.db.records.size()
                      << " records, ok\n";
    }

    std::optional<epsplane::RegionSet> rs;
    if (regions_spec == builtin_tag) {
        rs = epsplane::default_regions();
    } else {
        std::ifstream in(regions_spec);
        if (!in)
            throw epsplane::IoError("cannot open '" + regions_spec + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        try {
            rs = epsplane::parse_region_set(buffer.str());
        } catch (const epsplane::ConfigError& e) {
            std::cout << "regions: " << e.what() << "\n";
            ++findings;
        }
    }
    if (rs) {
        const auto issues = epsplane::validate_region_set(*rs);
        for (const auto& issue : issues) {
            std::cout << "regions: " << issue.location << ": " << issue.message << "\n";
            ++findings;
        }
        if (issues.empty())
            std::cout << "regions: " << rs->name << ", " << rs->regions.size()
                      << " regions, ok\n";
    }

    return findings == 0 ? exit_ok : exit_findings;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Permittivity-plane screening of body-worn dielectric objects (30 GHz)"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 safe/success, 1 findings or internal error, 2 usage or input "
               "error, 3 threat, 4 pat-down.");

    std::string db_spec = builtin_tag;
    std::string regions_spec = builtin_tag;
    std::string category;
    std::string out_path;
    std::string overlay_path;
    double thickness_mm = 0.0;
    double visibility_margin_db = 15.0;
    ClassifyArgs classify_args;

    auto* list = app.add_subcommand("list", "Print the material database");
    list->add_option("--db", db_spec, "Material CSV path, or 'builtin'");
    list->add_option("--category", category, "Only records with this category");
    list->add_option("--out", out_path, "Also write the selection as CSV");

    auto* classify = app.add_subcommand("classify", "Classify one object");
    classify->add_option("--point", classify_args.point_text,
                         "Fully resolved permittivity RE,IM");
    classify->add_option("--real", classify_args.real,
                         "Predicted real part, back surface visible");
    classify->add_option("--ratio", classify_args.ratio,
                         "Front reflectivity relative to skin, back surface hidden");
    classify->add_option("--regions", classify_args.regions_spec,
                         "Region JSON path, or 'builtin'");
    classify->add_option("--report", classify_args.report_path, "Run report path");
    classify->add_flag("--no-report", classify_args.no_report, "Skip the run report");
    classify->add_flag("--timings", classify_args.timings,
                       "Include wall-clock timings in the report (not byte-stable)");
    classify->add_option("--grid-min", classify_args.grid_min, "Smallest locus grid loss");
    classify->add_option("--grid-max", classify_args.grid_max, "Largest locus grid loss");
    classify->add_option("--grid-points", classify_args.grid_points, "Locus grid size");
    classify->add_option("--band-lo", classify_args.band_lo, "Lossless band lower edge");
    classify->add_option("--band-hi", classify_args.band_hi, "Lossless band upper edge");

    auto* plot = app.add_subcommand("plot", "Render the permittivity plane as SVG");
    plot->add_option("--db", db_spec, "Material CSV path, or 'builtin'");
    plot->add_option("--regions", regions_spec, "Region JSON path, or 'builtin'");
    plot->add_option("--out", out_path, "Output SVG path")->required();
    plot->add_option("--overlay", overlay_path, "Run report whose locus to overlay");

    auto* batch = app.add_subcommand("batch", "Classify every material as a worn slab");
    batch->add_option("--db", db_spec, "Material CSV path, or 'builtin'");
    batch->add_option("--regions", regions_spec, "Region JSON path, or 'builtin'");
    batch->add_option("--thickness", thickness_mm, "Slab thickness in mm")->required();
    batch->add_option("--visibility-margin", visibility_margin_db,
                      "Back-echo visibility margin in dB");
    batch->add_option("--out", out_path, "Output CSV path")->required();

    auto* validate = app.add_subcommand("validate", "Check a database and region set");
    validate->add_option("--db", db_spec, "Material CSV path, or 'builtin'");
    validate->add_option("--regions", regions_spec, "Region JSON path, or 'builtin'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (list->parsed())
            return cmd_list(db_spec, category, out_path);
        if (classify->parsed())
            return cmd_classify(classify_args);
        if (plot->parsed())
            return cmd_plot(db_spec, regions_spec, out_path, overlay_path);
        if (batch->parsed()) {
            if (!(thickness_mm > 0.0) || !std::isfinite(thickness_mm)) {
                std::cerr << "batch: --thickness must be a positive number of millimeters\n";
                return exit_usage;
            }
            return cmd_batch(db_spec, regions_spec, thickness_mm, visibility_margin_db, out_path);
        }
        if (validate->parsed())
            return cmd_validate(db_spec, regions_spec);
    } catch (const epsplane::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const epsplane::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const epsplane::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_findings;
    }
    return exit_usage;
}
