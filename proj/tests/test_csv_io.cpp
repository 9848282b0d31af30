#include <doctest.h>

#include <string>
#include <vector>

#include "slowdown/csv_io.hpp"
#include "slowdown/errors.hpp"
#include "test_util.hpp"

using namespace slowdown;
using testutil::spit;
using testutil::TempDir;

TEST_CASE("well-formed files load with exact values") {
    TempDir tmp;
    const std::string path = tmp.str("a.csv");
    spit(path, "date,close\n2016-01-01,1.5\n2016-01-02,2.25\n2016-01-03,0\n");
    const auto loaded = load_csv(path, "a");
    REQUIRE(loaded.series.size() == 3);
    CHECK(loaded.series.asset == "a");
    CHECK(loaded.series.prices[0] == 1.5);
    CHECK(loaded.series.prices[2] == 0.0);
    CHECK(loaded.fill_count == 0);
    CHECK(loaded.series.dates[2].to_string() == "2016-01-03");
}

TEST_CASE("rows are sorted by date before validation") {
    TempDir tmp;
    const std::string path = tmp.str("a.csv");
    spit(path, "date,close\n2016-01-03,3\n2016-01-01,1\n2016-01-02,2\n");
    const auto loaded = load_csv(path, "a");
    CHECK(loaded.series.prices == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("crlf line endings are tolerated") {
    TempDir tmp;
    const std::string path = tmp.str("a.csv");
    spit(path, "date,close\r\n2016-01-01,1\r\n2016-01-02,2\r\n");
    CHECK(load_csv(path, "a").series.size() == 2);
}

TEST_CASE("structural errors carry actionable positions") {
    TempDir tmp;
    const std::string path = tmp.str("a.csv");

    spit(path, "date,close\n2016-01-01,1\n2016-01-01,2\n");
    CHECK_THROWS_WITH_AS(load_csv(path, "a"), doctest::Contains("2016-01-01"), CsvError);

    spit(path, "date,close\n2016-01-01,1\n2016-01-02\n");
    CHECK_THROWS_WITH_AS(load_csv(path, "a"), doctest::Contains("line 3"), CsvError);

    spit(path, "date,close\n2016-01-01,abc\n");
    CHECK_THROWS_AS(load_csv(path, "a"), CsvError);

    spit(path, "day,price\n2016-01-01,1\n");
    CHECK_THROWS_WITH_AS(load_csv(path, "a"), doctest::Contains("header"), CsvError);

    spit(path, "date,close\n2016-01-01,1\n\n2016-01-02,2\n");
    CHECK_THROWS_AS(load_csv(path, "a"), CsvError);

    CHECK_THROWS_AS(load_csv(tmp.str("missing.csv"), "a"), CsvError);
}

TEST_CASE("gap policy: error by default, bounded forward fill on request") {
    TempDir tmp;
    const std::string path = tmp.str("a.csv");
    spit(path, "date,close\n2016-01-01,1\n2016-01-04,4\n");

    CHECK_THROWS_AS(load_csv(path, "a"), CsvError);

    LoadOptions fill;
    fill.forward_fill = true;
    const auto loaded = load_csv(path, "a", fill);
    REQUIRE(loaded.series.size() == 4);
    CHECK(loaded.fill_count == 2);
    CHECK(loaded.series.prices == std::vector<double>{1.0, 1.0, 1.0, 4.0});
    CHECK(loaded.series.dates[1].to_string() == "2016-01-02");

    spit(path, "date,close\n2016-01-01,1\n2016-01-09,9\n");
    CHECK_THROWS_AS(load_csv(path, "a", fill), CsvError);  // beyond max_fill_days
}

TEST_CASE("save and load round-trip prices exactly") {
    TempDir tmp;
    PriceSeries ps;
    ps.asset = "rt";
    ps.dates = testutil::make_dates(3);
    ps.prices = {1.0 / 3.0, 2.0000000000000004, 12345.6789012345678};
    const std::string path = tmp.str("rt.csv");
    save_csv(path, ps);
    const auto loaded = load_csv(path, "rt");
    REQUIRE(loaded.series.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(loaded.series.prices[i] == ps.prices[i]);
}
