#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "epsplane/material_db.hpp"

using epsplane::builtin_database;
using epsplane::Diagnostic;
using epsplane::find_material;
using epsplane::scan_database_csv;

TEST_CASE("builtin database shape", "[material_db]") {
    const auto db = builtin_database();
    CHECK(db.records.size() == 28);
    CHECK(db.frequency_ghz == 30.0);

    const auto tnt = find_material(db, "TNT");
    REQUIRE(tnt.has_value());
    CHECK(tnt->permittivity.real == 2.84);
    CHECK(tnt->permittivity.loss == 0.005);
    CHECK(tnt->category == "explosive");

    const auto silica = find_material(db, "Glass, High Purity Fused Silica");
    REQUIRE(silica.has_value());
    CHECK(silica->permittivity.real == 3.75);

    CHECK(find_material(db, "Sand 1.9 gr/cm³").has_value());
    CHECK(find_material(db, "Sand 1.8 gr/cm³").has_value());
    CHECK(find_material(db, "Sand 1.8 gr/cm³")->permittivity.real == 5.9);

    const auto skin = find_material(db, "Dry Skin");
    REQUIRE(skin.has_value());
    CHECK(skin->permittivity == epsplane::dry_skin);
    CHECK(skin->category == "reference");
}

TEST_CASE("lookup is case and whitespace insensitive", "[material_db]") {
    const auto db = builtin_database();
    CHECK(find_material(db, "tnt").has_value());
    CHECK(find_material(db, "  WATER ").has_value());
    CHECK(find_material(db, "plexiGLASS").has_value());
    CHECK_FALSE(find_material(db, "unobtainium").has_value());
    CHECK_FALSE(find_material(db, "").has_value());
}

TEST_CASE("csv round trip preserves every record", "[material_db]") {
    const auto db = builtin_database();
    const auto text = epsplane::serialize_database_csv(db);
    std::istringstream in(text);
    const auto rescanned = scan_database_csv(in);
    CHECK(rescanned.diagnostics.empty());
    CHECK(rescanned.db.records == db.records);
}

TEST_CASE("shipped csv matches the builtin table", "[material_db]") {
    const auto shipped = epsplane::load_database(std::string(EPSPLANE_DATA_DIR) + "/materials.csv");
    CHECK(shipped.records == builtin_database().records);
}

TEST_CASE("scan tolerates quoting, BOM and CRLF", "[material_db]") {
    std::istringstream in(
        "\xEF\xBB\xBFname,eps_real,eps_imag,source,category\r\n"
        "\"Glass, fused\",3.75,3.5e-3,[11],\r\n"
        "Plain,2.0,0.1,[1],benign\r\n");
    const auto result = scan_database_csv(in);
    CHECK(result.diagnostics.empty());
    REQUIRE(result.db.records.size() == 2);
    CHECK(result.db.records[0].name == "Glass, fused");
    CHECK(result.db.records[0].permittivity.loss == 0.0035);
    CHECK(result.db.records[0].category.empty());
}

TEST_CASE("scan reports malformed rows without stopping", "[material_db]") {
    std::istringstream in(
        "name,eps_real,eps_imag,source,category\n"
        "Good,2.0,0.1,[1],benign\n"
        "Bad,not-a-number,0.1,[1],benign\n"
        "Short,2.0\n"
        "Also Good,3.0,0.2,[2],benign\n");
    const auto result = scan_database_csv(in);
    CHECK(result.db.records.size() == 2);
    REQUIRE(result.diagnostics.size() == 2);
    CHECK(result.diagnostics[0].code == Diagnostic::Code::malformed_row);
    CHECK(result.diagnostics[0].row == 3);
    CHECK(result.diagnostics[1].row == 4);
}

TEST_CASE("scan flags duplicates and non-physical values", "[material_db]") {
    std::istringstream in(
        "name,eps_real,eps_imag,source,category\n"
        "Water,20.0,30.0,[16],water-based\n"
        "Thin Air,0.5,0.0,[1],\n"
        "Gain Medium,2.0,-0.1,[1],\n"
        "WATER,21.0,31.0,[16],\n");
    const auto result = scan_database_csv(in);
    REQUIRE(result.db.records.size() == 1);
    REQUIRE(result.diagnostics.size() == 3);
    CHECK(result.diagnostics[0].code == Diagnostic::Code::non_physical_value);
    CHECK(result.diagnostics[1].code == Diagnostic::Code::non_physical_value);
    CHECK(result.diagnostics[2].code == Diagnostic::Code::duplicate_name);
    CHECK(result.diagnostics[2].row == 5);
    CHECK(result.diagnostics[2].message.find("row 2") != std::string::npos);
}

TEST_CASE("scan rejects empty and headerless files", "[material_db]") {
    std::istringstream empty("name,eps_real,eps_imag,source,category\n");
    const auto r1 = scan_database_csv(empty);
    REQUIRE(r1.diagnostics.size() == 1);
    CHECK(r1.diagnostics[0].code == Diagnostic::Code::empty_file);

    std::istringstream bad_header("material,er,ei\nTNT,2.84,0.005\n");
    const auto r2 = scan_database_csv(bad_header);
    REQUIRE_FALSE(r2.diagnostics.empty());
    CHECK(r2.diagnostics[0].code == Diagnostic::Code::malformed_row);
    CHECK(r2.diagnostics[0].row == 1);
}

TEST_CASE("load throws the first diagnostic", "[material_db]") {
    const auto dir = std::filesystem::temp_directory_path() / "epsplane_db_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "dup.csv";
    {
        std::ofstream out(path);
        out << "name,eps_real,eps_imag,source,category\n"
            << "A,2.0,0.1,[1],\n"
            << "a,2.0,0.1,[1],\n";
    }
    CHECK_THROWS_AS(epsplane::load_database(path), epsplane::DuplicateNameError);
    CHECK_THROWS_AS(epsplane::load_database(dir / "missing.csv"), epsplane::IoError);
}
