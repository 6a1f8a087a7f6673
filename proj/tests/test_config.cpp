// Config parsing, typed getters, canonical serialization, hash stamping and
// the CSV / JSON artifact round trip.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "zygfrac/config.hpp"
#include "zygfrac/report.hpp"

using namespace zygfrac;

TEST_CASE("parser handles sections, comments and whitespace") {
    const Config cfg = Config::parse_string(
        "# leading comment\n"
        "top = 1\n"
        "[params]\n"
        "alpha = 0.25  # trailing comment\n"
        "beta=0.5\n"
        "\n"
        "[points]\n"
        "eval = 1,2,3; 4,5,6\n");
    CHECK(cfg.get_int("top") == 1);
    CHECK(cfg.get_double("params.alpha") == 0.25);
    CHECK(cfg.get_double("params.beta") == 0.5);
    const auto pts = cfg.get_points("points.eval");
    REQUIRE(pts.size() == 2);
    CHECK(pts[1][2] == 6.0);
}

TEST_CASE("parse errors carry origin and line number") {
    CHECK_THROWS_WITH_AS(Config::parse_string("[oops\n", "f.cfg"),
                         doctest::Contains("f.cfg:1"), ConfigError);
    CHECK_THROWS_WITH_AS(Config::parse_string("a = 1\nnot a pair\n", "f.cfg"),
                         doctest::Contains("f.cfg:2"), ConfigError);
}

TEST_CASE("typed getters name the offending field") {
    const Config cfg = Config::parse_string("a = abc\nb = 1.5\n");
    CHECK_THROWS_WITH_AS(cfg.get_double("a"), doctest::Contains("a"), ConfigError);
    CHECK_THROWS_WITH_AS(cfg.get_int("b"), doctest::Contains("b"), ConfigError);
    CHECK_THROWS_WITH_AS(cfg.get_double("missing"), doctest::Contains("missing"), ConfigError);
    CHECK(cfg.get_double_or("missing", 7.0) == 7.0);
    CHECK(cfg.get_int_or("missing", -3) == -3);
    CHECK(cfg.get_string_or("missing", "x") == "x");
}

TEST_CASE("list getters") {
    const Config cfg = Config::parse_string("d = 1, 2.5, -3\ni = 4 5 6\nbad = 1,2\n");
    CHECK(cfg.get_double_list("d") == std::vector<double>{1.0, 2.5, -3.0});
    CHECK(cfg.get_int_list("i") == std::vector<long long>{4, 5, 6});
    CHECK_THROWS_AS(cfg.get_int_list("d"), ConfigError);    // 2.5 is not integral
    CHECK_THROWS_AS(cfg.get_points("bad"), ConfigError);    // not a triple
}

TEST_CASE("canonical text is sorted and drives the hash") {
    Config a = Config::parse_string("[s]\nb = 2\na = 1\n");
    Config b = Config::parse_string("[s]\na = 1\nb = 2\n");
    CHECK(a.canonical() == b.canonical());
    CHECK(a.canonical() == "s.a=1\ns.b=2\n");
    CHECK(config_hash(a, 7) == config_hash(b, 7));
    CHECK(config_hash(a, 7) != config_hash(a, 8));
    b.set("s.a", "9");
    CHECK(config_hash(a, 7) != config_hash(b, 7));
}

TEST_CASE("shortest round-trip double formatting") {
    // strtod instead of std::stod: stod throws on subnormals such as 5e-324
    // even though the text round-trips exactly.
    for (double v : {0.1, 1.0 / 3.0, -0.0, 2.0, 1e300, 5e-324, 0.8284271247461903}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("csv and json artifacts carry a readable stamp") {
    Config cfg = Config::parse_string("[s]\nk = v\n");
    const std::uint64_t h = config_hash(cfg, 42);

    const std::string csv_path = "stamp_test.csv";
    CsvTable t;
    t.columns = {"a", "b"};
    t.add_row_doubles({1.5, 2.5});
    t.write(csv_path, h);
    CHECK(read_stamp(csv_path) == h);

    const std::string json_path = "stamp_test.report.json";
    ExperimentReport rep{"demo", cfg, 42, {{"x", 1.25}}, {{"note", "n"}}};
    rep.write_json(json_path);
    CHECK(read_stamp(json_path) == h);

    std::ifstream in(csv_path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# config_hash=" + hash_hex(h));
    std::getline(in, line);
    CHECK(line == "a,b");
    std::getline(in, line);
    CHECK(line == "1.5,2.5");

    std::remove(csv_path.c_str());
    std::remove(json_path.c_str());
}

TEST_CASE("row width mismatches are rejected") {
    CsvTable t;
    t.columns = {"a", "b"};
    CHECK_THROWS_AS(t.add_row({"1"}), std::logic_error);
}
