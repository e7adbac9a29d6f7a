#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "mfscale/error.hpp"
#include "mfscale/io.hpp"

using namespace mfscale;

namespace {

double parse(const std::string& s) {
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("three dated rows") {
    const auto s = parse_csv("2020-01-01,25.0\n2020-01-02,26.0\n2020-01-03,24.5\n");
    REQUIRE(s.size() == 3);
    CHECK(s.values()[2] == 24.5);
    CHECK(s.timestamps()[1] - s.timestamps()[0] == 1);
    CHECK(s.timestamps()[0] == 18262);  // days since 1970-01-01
}

TEST_CASE("header, comments, blank lines, CRLF and integer indices") {
    const auto s = parse_csv("# source: test\ndate,price\r\n\n0,1.5\r\n1,2.5\n5,3.5\n");
    REQUIRE(s.size() == 3);
    CHECK(s.timestamps()[2] == 5);
    CHECK(s.values()[0] == 1.5);
}

TEST_CASE("weekend gaps keep positional order") {
    const auto s = parse_csv("2021-01-08,1\n2021-01-11,2\n2021-01-12,3\n");
    CHECK(s.timestamps()[1] - s.timestamps()[0] == 3);
    CHECK(compute_returns(s, 1).values.size() == 2);
}

TEST_CASE("shuffled dates name the first offending line") {
    try {
        parse_csv("date,value\n2020-01-02,1\n2020-01-03,2\n2020-01-01,3\n2020-01-04,4\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
        CHECK(e.category() == ErrorCategory::data);
    }
    CHECK_THROWS_AS(parse_csv("2020-01-01,1\n2020-01-01,2\n"), ParseError);
}

TEST_CASE("malformed rows") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_csv(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("2020-01-01,1\n2020-01-02,abc\n") == 2);
    CHECK(line_of("2020-01-01,1\n2020-01-02,nan\n") == 2);
    CHECK(line_of("2020-01-01,1\n2020-01-02,inf\n") == 2);
    CHECK(line_of("2020-01-01,1\n2020-01-02,1,2\n") == 2);
    CHECK(line_of("2020-01-01,1\n2020-13-02,1\n") == 2);
    CHECK(line_of("2020-01-01,1\njunk\n") == 2);
    CHECK_THROWS_AS(parse_csv("2020-01-01,1\n"), InsufficientDataError);
}

TEST_CASE("csv round trip is exact") {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> d(0.0, 1e3);
    std::vector<double> v(500);
    for (auto& x : v) x = d(gen);
    const Series s(v, "rt");
    const auto back = parse_csv(format_csv(s));
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(back.values()[i] == v[i]);
}

TEST_CASE("file ingestion uses the file stem as label") {
    const auto dir = std::filesystem::temp_directory_path() / "mfscale_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "prices.csv";
    write_file(path, "0,1\n1,2\n2,4\n");
    const auto s = ingest_csv(path);
    CHECK(s.label() == "prices");
    CHECK(s.size() == 3);
    CHECK_THROWS_AS(ingest_csv(dir / "missing.csv"), ParseError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("sha256 test vectors") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("nine-digit export parses back within half a unit in the last digit") {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> mant(-10.0, 10.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 20000; ++i) {
        const double x = mant(gen) * std::pow(10.0, expo(gen));
        if (x == 0.0 || !std::isfinite(x)) continue;
        const double back = parse(format_sig9(x));
        const double ulp9 = std::pow(10.0, std::floor(std::log10(std::abs(x))) - 8);
        CHECK(std::abs(back - x) <= 0.5 * ulp9 * (1.0 + 1e-9));
    }
    CHECK(format_sig9(0.1) == "0.1");
    CHECK(format_sig9(123456789012.0) == "1.23456789e+11");
    CHECK(parse(format_shortest(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("tsv layout") {
    const std::vector<TsvColumn> cols{{"s[samples]", {10, 20}}, {"F_2[price]", {0.5, 0.75}}};
    CHECK(format_tsv(cols) == "# s[samples]\tF_2[price]\n10\t0.5\n20\t0.75\n");
}

}  // TEST_SUITE
