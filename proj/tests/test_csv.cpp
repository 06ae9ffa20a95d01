#include <catch2/catch_amalgamated.hpp>

#include "epsplane/csv.hpp"

using epsplane::csv_quote;
using epsplane::format_double;
using epsplane::parse_double;
using epsplane::split_csv_record;

TEST_CASE("record splitting", "[csv]") {
    auto fields = split_csv_record("a,b,c");
    REQUIRE(fields.has_value());
    CHECK(*fields == std::vector<std::string>{"a", "b", "c"});

    fields = split_csv_record("\"Glass, High Purity Fused Silica\",3.75,0.0035");
    REQUIRE(fields.has_value());
    CHECK(fields->at(0) == "Glass, High Purity Fused Silica");

    fields = split_csv_record("say \"\"hi\"\",x");
    REQUIRE(fields.has_value());

    fields = split_csv_record("\"quoted \"\"inner\"\"\",x");
    REQUIRE(fields.has_value());
    CHECK(fields->at(0) == "quoted \"inner\"");

    fields = split_csv_record("a,,c");
    REQUIRE(fields.has_value());
    CHECK(fields->at(1).empty());

    CHECK_FALSE(split_csv_record("\"unterminated,a").has_value());
}

TEST_CASE("quoting round trips through splitting", "[csv]") {
    const std::string values[] = {"plain", "with, comma", "with \"quote\"", "", "trailing "};
    std::string record;
    for (const auto& v : values) {
        if (!record.empty()) record += ',';
        record += csv_quote(v);
    }
    const auto fields = split_csv_record(record);
    REQUIRE(fields.has_value());
    REQUIRE(fields->size() == std::size(values));
    for (std::size_t i = 0; i < std::size(values); ++i) CHECK(fields->at(i) == values[i]);
}

TEST_CASE("strict double parsing", "[csv]") {
    CHECK(parse_double("2.84") == 2.84);
    CHECK(parse_double(" 3.5e-3 ") == 0.0035);
    CHECK(parse_double("-1") == -1.0);
    CHECK_FALSE(parse_double("").has_value());
    CHECK_FALSE(parse_double("1.2.3").has_value());
    CHECK_FALSE(parse_double("12 monkeys").has_value());
    CHECK_FALSE(parse_double("0x10").has_value());
}

TEST_CASE("double formatting round trips and avoids exponents in range", "[csv]") {
    CHECK(format_double(0.0007) == "0.0007");
    CHECK(format_double(2.84) == "2.84");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-3.05) == "-3.05");
    CHECK(format_double(1e-7).find('e') != std::string::npos);

    for (double v : {0.0007, 2.84, 0.471780579130391, 1e-7, 123456.789, 1e16}) {
        const auto parsed = parse_double(format_double(v));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == v);
    }
}
