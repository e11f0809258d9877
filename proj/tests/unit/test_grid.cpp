#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "fixtures.hpp"
#include "pcm/errors.hpp"
#include "pcm/io.hpp"
#include "pcm/rng.hpp"
#include "pcm/text.hpp"

using namespace pcm;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/pcm_test_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("tutorial grid loads with the documented asset counts") {
    const GridSpec g = testing::tutorial_grid();
    CHECK(g.buses.size() == 5);
    CHECK(g.lines.size() == 6);
    CHECK(g.dispatchables.size() == 4);
    CHECK(g.renewables.size() == 2);
    CHECK(g.loads.size() == 3);
    CHECK(g.penalties.load_mismatch == 10000.0);
    CHECK(g.penalties.reserve_shortfall == 1000.0);
    CHECK(g.reserve_factor == 0.05);
}

TEST_CASE("unknown bus reference names the bus") {
    TempFile f("bad_bus.txt",
               "[buses]\nB1\n[generators]\nG1 B9 0 10 10 10 5 0 1 1 0\n");
    try {
        load_grid(f.path);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("B9") != std::string::npos);
    }
}

TEST_CASE("empty generator section accepted at load time") {
    TempFile f("no_gens.txt", "[buses]\nB1\n[loads]\nD1 B1\n");
    const GridSpec g = load_grid(f.path);
    CHECK(g.dispatchables.empty());
    CHECK(g.loads.size() == 1);
}

TEST_CASE("duplicate asset id rejected") {
    TempFile f("dup.txt",
               "[buses]\nB1\n[generators]\nG1 B1 0 10 10 10 5 0 1 1 0\nG1 B1 0 10 10 10 5 0 1 1 0\n");
    try {
        load_grid(f.path);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("G1") != std::string::npos);
    }
}

TEST_CASE("parse failure reports file and line") {
    TempFile f("bad_parse.txt", "[buses]\nB1\n[lines]\nL1 not_a_number\n");
    try {
        load_grid(f.path);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find(":4") != std::string::npos);
    }
}

TEST_CASE("ptdf magnitude above one rejected") {
    TempFile f("big_ptdf.txt", "[buses]\nB1\nB2\n[lines]\nL1 100 B2:1.5\n");
    CHECK_THROWS_AS(load_grid(f.path), ValidationError);
}

TEST_CASE("grid round-trips through write_grid") {
    const GridSpec g = testing::tutorial_grid();
    const std::string path = "/tmp/pcm_test_roundtrip.txt";
    write_grid(g, path);
    const GridSpec g2 = load_grid(path);
    CHECK(g == g2);
    std::remove(path.c_str());
}

TEST_CASE("day data horizons") {
    const GridSpec g = testing::tutorial_grid();
    SUBCASE("48-hour forecast with 25-hour actual accepted at h=1") {
        const DayData day = testing::tutorial_day(g, "2020-07-08", 1);
        CHECK(day.forecast.hours() == 48);
        CHECK(day.actual.hours() == 25);
    }
    SUBCASE("too-short actual names the requirement") {
        // Forecast covers 48 hours but the actual file stops after 24.
        auto rows = [](int hours, const char* day2) {
            std::string s = "timestamp,D1\n";
            for (int t = 0; t < hours; ++t) {
                char buf[48];
                std::snprintf(buf, sizeof(buf), "%s%02d:00,50\n",
                              t < 24 ? "2020-07-08T" : day2, t % 24);
                s += buf;
            }
            return s;
        };
        TempFile lf("lf.csv", rows(48, "2020-07-09T"));
        TempFile la("la.csv", rows(24, ""));
        TempFile rf("rf.csv", "timestamp,W1\n2020-07-08T00:00,5\n");
        TempFile ra("ra.csv", "timestamp,W1\n2020-07-08T00:00,5\n");
        GridSpec tiny = testing::one_bus_grid();
        try {
            load_day_data(tiny, {lf.path, la.path, rf.path, ra.path}, "2020-07-08", 1);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("need 25") != std::string::npos);
        }
    }
    SUBCASE("negative value names asset and hour") {
        HourSeries bad = testing::flat_series(50.0, 20.0);
        bad.demand["D1"][3] = -1.0;
        DayData day;
        day.forecast = bad;
        day.actual = bad;
        try {
            validate_day(testing::one_bus_grid(), day, 1);
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("D1") != std::string::npos);
            CHECK(msg.find("hour 3") != std::string::npos);
        }
    }
}

TEST_CASE("scenario file loading") {
    const GridSpec g = testing::one_bus_grid();
    const auto header = "scenario,timestamp,D1,W1\n";
    std::string body;
    for (int j = 0; j < 2; ++j)
        for (int t = 0; t < 25; ++t) {
            char buf[80];
            std::snprintf(buf, sizeof(buf), "%d,2020-07-08T%02d:00,%g,%g\n", j, t % 24, 50.0 + j,
                          20.0 + t);
            std::string row(buf);
            if (t == 24) row = std::to_string(j) + ",2020-07-09T00:00," +
                               fmt_double(50.0 + j) + "," + fmt_double(20.0 + t) + "\n";
            body += row;
        }

    SUBCASE("two aligned scenarios load") {
        TempFile f("scen_ok.csv", header + body);
        const ScenarioSet set = load_scenarios(g, f.path, 2, 1);
        CHECK(set.size() == 2);
        CHECK(set.scenarios[0].demand.at("D1").size() == 25);
        CHECK(set.scenarios[1].demand.at("D1")[0] == 51.0);
    }
    SUBCASE("K = 0 rejected") {
        TempFile f("scen_k0.csv", header + body);
        try {
            load_scenarios(g, f.path, 0, 1);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("empty scenario set") != std::string::npos);
        }
    }
    SUBCASE("missing renewable column names the asset and scenario") {
        std::string content = "scenario,timestamp,D1\n";
        for (int t = 0; t < 25; ++t) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "0,%s%02d:00,50\n",
                          t < 24 ? "2020-07-08T" : "2020-07-09T", t % 24);
            content += buf;
        }
        TempFile f("scen_missing.csv", content);
        try {
            load_scenarios(g, f.path, 1, 1);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("W1") != std::string::npos);
            CHECK(msg.find("scenario 0") != std::string::npos);
        }
    }
    SUBCASE("scenario count mismatch detected") {
        TempFile f("scen_count.csv", header + body);
        CHECK_THROWS_AS(load_scenarios(g, f.path, 3, 1), DataError);
    }
}

TEST_CASE("synthetic scenarios") {
    const GridSpec g = testing::one_bus_grid();
    DayData day;
    day.date = "2020-07-08";
    day.forecast = testing::flat_series(100.0, 40.0);
    day.actual = testing::flat_series(100.0, 40.0, 25);

    SUBCASE("zero sigma reproduces the forecast exactly") {
        const ScenarioSet set = synth_scenarios(day, 5, 1, 0.0);
        REQUIRE(set.size() == 5);
        for (const auto& s : set.scenarios)
            for (size_t t = 0; t < 25; ++t) {
                CHECK(s.demand.at("D1")[t] == 100.0);
                CHECK(s.capacity.at("W1")[t] == 40.0);
            }
    }
    SUBCASE("same seed gives bit-identical sets") {
        const ScenarioSet a = synth_scenarios(day, 8, 77, 0.2);
        const ScenarioSet b = synth_scenarios(day, 8, 77, 0.2);
        for (size_t j = 0; j < 8; ++j) {
            CHECK(a.scenarios[j].demand.at("D1") == b.scenarios[j].demand.at("D1"));
            CHECK(a.scenarios[j].capacity.at("W1") == b.scenarios[j].capacity.at("W1"));
        }
        const ScenarioSet c = synth_scenarios(day, 8, 78, 0.2);
        CHECK(a.scenarios[0].demand.at("D1") != c.scenarios[0].demand.at("D1"));
    }
    SUBCASE("sample mean near the forecast at K = 1000") {
        const ScenarioSet set = synth_scenarios(day, 1000, 5, 0.2);
        double mean = 0.0;
        for (const auto& s : set.scenarios) mean += s.demand.at("D1")[0];
        mean /= 1000.0;
        CHECK(std::abs(mean - 100.0) / 100.0 < 0.03);
    }
    SUBCASE("values never negative") {
        const ScenarioSet set = synth_scenarios(day, 50, 9, 1.5);
        for (const auto& s : set.scenarios)
            for (const double v : s.capacity.at("W1")) CHECK(v >= 0.0);
    }
}
