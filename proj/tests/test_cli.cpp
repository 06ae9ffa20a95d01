#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include "epsplane/material_db.hpp"
#include "test_support.hpp"

using testsupport::run_cli;
using testsupport::scratch_dir;
using testsupport::slurp;
using testsupport::spit;

TEST_CASE("list prints the builtin table", "[cli]") {
    const auto r = run_cli("list");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("TNT") != std::string::npos);
    CHECK(r.out.find("Glass, High Purity Fused Silica") != std::string::npos);
    CHECK(r.out.find("28 materials at 30 GHz") != std::string::npos);
}

TEST_CASE("list filters by category", "[cli]") {
    const auto r = run_cli("list --category Explosive");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("TNT") != std::string::npos);
    CHECK(r.out.find("RDX") != std::string::npos);
    CHECK(r.out.find("PETN") != std::string::npos);
    CHECK(r.out.find("C4") != std::string::npos);
    CHECK(r.out.find("Water") == std::string::npos);
    CHECK(r.out.find("4 materials") != std::string::npos);
}

TEST_CASE("list can export the selection", "[cli]") {
    const auto dir = scratch_dir("cli-list");
    const auto out = dir / "all.csv";
    const auto r = run_cli("list --out " + out.string());
    REQUIRE(r.exit_code == 0);
    const auto db = epsplane::load_database(out);
    CHECK(db.records == epsplane::builtin_database().records);
}

TEST_CASE("classify a point as threat", "[cli]") {
    const auto dir = scratch_dir("cli-classify");
    const auto report = dir / "tnt.json";
    const auto r = run_cli("classify --point 2.84,0.005 --report " + report.string());
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("verdict: threat") != std::string::npos);
    CHECK(r.out.find("lower-hazard") != std::string::npos);

    const auto doc = nlohmann::json::parse(slurp(report));
    CHECK(doc.at("schema") == "epsplane-report/1");
    CHECK(doc.at("inputs").at("evidence").at("kind") == "point");
    CHECK(doc.at("verdict").at("outcome") == "threat");
    CHECK(doc.at("evidence_used").at("kind") == "point");
}

TEST_CASE("classify verdict drives the exit code", "[cli]") {
    CHECK(run_cli("classify --point 2.5,0.2 --no-report").exit_code == 0);
    CHECK(run_cli("classify --point 1.0,0.0 --no-report").exit_code == 4);
    CHECK(run_cli("classify --real 10 --no-report").exit_code == 4);
}

TEST_CASE("classify a visible surrogate routes to inspection", "[cli]") {
    const auto dir = scratch_dir("cli-classify");
    const auto report = dir / "salt.json";
    const auto r = run_cli("classify --real 3.05 --report " + report.string());
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("surrogates") != std::string::npos);

    const auto doc = nlohmann::json::parse(slurp(report));
    CHECK(doc.at("inputs").at("evidence").at("kind") == "lossless-band");
    CHECK(doc.at("evidence_used").at("kind") == "lossless-band");
    const std::string rationale = doc.at("verdict").at("rationale");
    CHECK(rationale.find("secondary inspection") != std::string::npos);
}

TEST_CASE("classify a hidden object from its reflectivity ratio", "[cli]") {
    const auto dir = scratch_dir("cli-classify");
    const auto report = dir / "water.json";
    const auto r = run_cli("classify --ratio 1.1775 --report " + report.string());
    CHECK(r.exit_code == 3);

    const auto doc = nlohmann::json::parse(slurp(report));
    CHECK(doc.at("evidence_used").at("kind") == "locus");
    CHECK(doc.at("evidence_used").at("target_ratio") == 1.1775);
    CHECK(doc.at("evidence_used").at("points").is_array());
    CHECK_FALSE(doc.at("evidence_used").at("points").empty());
    CHECK(doc.at("evidence_used").contains("skipped_losses"));
    CHECK(doc.at("evidence_used").contains("ambiguous_losses"));
}

TEST_CASE("an uninvertible ratio is a pat-down with evidence null", "[cli]") {
    const auto dir = scratch_dir("cli-classify");
    const auto report = dir / "zero.json";
    const auto r = run_cli("classify --ratio 0.0 --report " + report.string());
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("unresolvable reflectivity") != std::string::npos);

    const auto doc = nlohmann::json::parse(slurp(report));
    CHECK(doc.at("evidence_used").is_null());
}

TEST_CASE("classify rejects ambiguous or missing evidence flags", "[cli]") {
    CHECK(run_cli("classify --point 2,0.1 --real 2 --no-report").exit_code == 2);
    CHECK(run_cli("classify --no-report").exit_code == 2);
    CHECK(run_cli("classify --point nonsense --no-report").exit_code == 2);
    CHECK(run_cli("classify --point 2,0.1 --regions /nonexistent.json --no-report").exit_code ==
          2);
    CHECK(run_cli("classify --point 2,0.1 --grid-min 5 --grid-max 1 --no-report").exit_code == 2);
}

TEST_CASE("classify reports are byte-stable unless timings are requested", "[cli]") {
    const auto dir = scratch_dir("cli-classify");
    const auto path = dir / "stable.json";
    REQUIRE(run_cli("classify --ratio 0.3047 --report " + path.string()).exit_code == 3);
    const auto first = slurp(path);
    REQUIRE(run_cli("classify --ratio 0.3047 --report " + path.string()).exit_code == 3);
    CHECK(slurp(path) == first);
    CHECK(first.find("timings_ms") == std::string::npos);

    const auto timed = dir / "timed.json";
    REQUIRE(run_cli("classify --ratio 0.3047 --timings --report " + timed.string()).exit_code ==
            3);
    CHECK(slurp(timed).find("timings_ms") != std::string::npos);
}

TEST_CASE("validate accepts the builtin configuration", "[cli]") {
    const auto r = run_cli("validate");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("db: builtin, 28 records, ok") != std::string::npos);
    CHECK(r.out.find("regions: builtin-default, 3 regions, ok") != std::string::npos);
}

TEST_CASE("validate lists every finding and fails", "[cli]") {
    const auto dir = scratch_dir("cli-validate");
    const auto db = dir / "bad.csv";
    spit(db,
         "name,eps_real,eps_imag,source,category\n"
         "Good,2.0,0.1,[1],\n"
         "Bad,zero,0.1,[1],\n"
         "Good,2.0,0.1,[1],\n");
    const auto regions = dir / "bad.json";
    spit(regions, R"({"name":"x","regions":[{"name":"r","semantics":"safe",)"
                  R"("real_min":1,"real_max":2,"loss_min":0,"loss_max":1}]})");

    const auto r = run_cli("validate --db " + db.string() + " --regions " + regions.string());
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("db: row 3") != std::string::npos);
    CHECK(r.out.find("db: row 4") != std::string::npos);
    CHECK(r.out.find("hazard") != std::string::npos);
}

TEST_CASE("batch sweeps the whole database", "[cli]") {
    const auto dir = scratch_dir("cli-batch");
    const auto out = dir / "batch10.csv";
    const auto r = run_cli("batch --thickness 10 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("batch: 28 materials at 10 mm: 19 threat, 0 safe, 9 pat-down, 0 errors") !=
          std::string::npos);

    const auto csv = slurp(out);
    CHECK(testsupport::count_occurrences(csv, "\n") == 29);
    CHECK(csv.find("TNT,2.84,0.005,true,lossless-band,threat,") != std::string::npos);
    CHECK(csv.find("Water,20,30,false,locus,threat,") != std::string::npos);
    CHECK(csv.find("Petroleum Jelly,2.15,0.0007,true,lossless-band,pat-down,") !=
          std::string::npos);
}

TEST_CASE("batch validates its thickness", "[cli]") {
    const auto dir = scratch_dir("cli-batch");
    const auto out = dir / "never.csv";
    CHECK(run_cli("batch --thickness 0 --out " + out.string()).exit_code == 2);
    CHECK(run_cli("batch --thickness -3 --out " + out.string()).exit_code == 2);
    CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("plot writes a deterministic svg", "[cli]") {
    const auto dir = scratch_dir("cli-plot");
    const auto a = dir / "a.svg";
    const auto b = dir / "b.svg";
    REQUIRE(run_cli("plot --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("plot --out " + b.string()).exit_code == 0);
    const auto svg = slurp(a);
    CHECK(svg == slurp(b));
    CHECK(testsupport::count_occurrences(svg, "class=\"material\"") == 28);
    CHECK(testsupport::count_occurrences(svg, "<rect class=\"region ") == 3);
}

TEST_CASE("plot overlays a locus from a run report", "[cli]") {
    const auto dir = scratch_dir("cli-plot");
    const auto report = dir / "locus.json";
    REQUIRE(run_cli("classify --ratio 0.3047 --report " + report.string()).exit_code == 3);
    const auto out = dir / "overlay.svg";
    const auto r = run_cli("plot --overlay " + report.string() + " --out " + out.string());
    REQUIRE(r.exit_code == 0);
    CHECK(slurp(out).find("class=\"locus\"") != std::string::npos);

    const auto pointy = dir / "point.json";
    REQUIRE(run_cli("classify --point 2.84,0.005 --report " + pointy.string()).exit_code == 3);
    const auto bad = dir / "never.svg";
    const auto rr = run_cli("plot --overlay " + pointy.string() + " --out " + bad.string());
    CHECK(rr.exit_code == 2);
    CHECK(rr.err.find("no locus evidence") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(bad));
}

TEST_CASE("a broken database stops file-writing commands cleanly", "[cli]") {
    const auto dir = scratch_dir("cli-errors");
    const auto db = dir / "empty.csv";
    spit(db, "name,eps_real,eps_imag,source,category\n");
    const auto out = dir / "never.svg";
    const auto r = run_cli("plot --db " + db.string() + " --out " + out.string());
    CHECK(r.exit_code == 2);
    CHECK_FALSE(std::filesystem::exists(out));
}
