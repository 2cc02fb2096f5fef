#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "quadprop/io.hpp"

using namespace quadprop;

TEST_CASE("format_double round-trips exactly and deterministically") {
    for (double v : {0.0, 1.0, -1.5, 0.1, 1e-300, -3.14159265358979, 2.2250738585072014e-308,
                     12345.6789, 1.0 / 3.0}) {
        const std::string s = format_double(v);
        CHECK(parse_double(s) == v);
        CHECK(format_double(v) == s);
    }
}

TEST_CASE("parse_double rejects garbage") {
    CHECK_THROWS_AS(parse_double("1.5x"), ConfigError);
    CHECK_THROWS_AS(parse_double(""), ConfigError);
    CHECK_THROWS_AS(parse_double("nope"), ConfigError);
}

TEST_CASE("csv writer/reader round-trip is byte identical") {
    CsvWriter w({"t", "x"});
    w.add_row({0.0, 1.0 / 3.0});
    w.add_row({0.5, -2.25});
    const std::string once = w.str();
    CHECK(once == w.str());

    const std::string path = "test_io_roundtrip.csv";
    w.write(path);
    CsvTable tab = read_csv(path);
    REQUIRE(tab.header.size() == 2);
    CHECK(tab.header[1] == "x");
    REQUIRE(tab.rows.size() == 2);
    CHECK(tab.rows[0][1] == 1.0 / 3.0);
    CHECK(tab.column("t") == 0);
    CHECK_THROWS_AS(tab.column("missing"), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("csv writer rejects width mismatch") {
    CsvWriter w({"a", "b"});
    CHECK_THROWS_AS(w.add_row({1.0}), ValidationError);
}

TEST_CASE("key=value config parsing") {
    const auto kv = KeyValueFile::parse_string(
        "# comment line\n"
        "preset = sho\n"
        "hbar=1.5\n"
        "  interval = [0, 2.5] \n"
        "levels = 0, 1, 2\n"
        "count = 7\n");
    CHECK(kv.get_string("preset") == "sho");
    CHECK(kv.get_double("hbar") == 1.5);
    CHECK(kv.get_double("absent", 2.0) == 2.0);
    CHECK(kv.get_int("count", 0) == 7);
    const auto iv = kv.get_interval("interval");
    CHECK(iv.first == 0.0);
    CHECK(iv.second == 2.5);
    const auto lv = kv.get_list("levels");
    REQUIRE(lv.size() == 3);
    CHECK(lv[2] == 2.0);
    CHECK(kv.has("preset"));
    CHECK(!kv.has("nothere"));
    CHECK_THROWS_AS(kv.get_string("nothere"), ConfigError);
    CHECK_THROWS_AS(KeyValueFile::parse_string("novalue\n"), ConfigError);
}
