#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "rwpso/bench.hpp"
#include "rwpso/solomon_io.hpp"

using namespace rwpso;

namespace {

// A 5x5 customer grid with wide windows; 25 customers so the protocol's
// smallest truncation applies.
RawInstanceFile synthetic_raw() {
    RawInstanceFile raw;
    raw.name = "SYN01";
    raw.vehicle_count_declared = 10;
    raw.capacity = 50.0;
    raw.rows.push_back({0, 0.0, 0.0, 0.0, 0.0, 1000.0, 0.0});
    int id = 1;
    for (int gy = 0; gy < 5; ++gy)
        for (int gx = 0; gx < 5; ++gx)
            raw.rows.push_back({id++, 2.0 + 2.0 * gx, 2.0 + 2.0 * gy, 3.0, 0.0,
                                970.0, 5.0});
    return raw;
}

// Writes the synthetic instance once and hands out its path.
const std::string& synthetic_path() {
    static const std::string path = [] {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() / "rwpso_bench_test";
        fs::create_directories(dir);
        fs::path file = dir / "SYN01.txt";
        std::ofstream out(file);
        out << format_instance(synthetic_raw());
        return file.string();
    }();
    return path;
}

SuiteSpec small_spec(std::vector<std::uint64_t> seeds) {
    SuiteSpec spec;
    spec.instance_paths = {synthetic_path()};
    spec.customer_counts = {25};
    spec.seeds = std::move(seeds);
    spec.cfg.n_particles = 6;
    spec.cfg.archive_size = 3;
    spec.cfg.time_cost = 0.0;
    spec.iterations_override = 25;
    spec.jobs = 2;
    return spec;
}

}  // namespace

TEST_CASE("reference table stores and validates rows") {
    ReferenceTable table;
    table.insert("C101", 25, 3, 191.3);
    table.insert("C101", 100, 10, 827.3);
    CHECK(table.size() == 2);

    auto hit = table.lookup("C101", 25);
    REQUIRE(hit.has_value());
    CHECK(hit->first == 3);
    CHECK(hit->second == doctest::Approx(191.3));
    CHECK_FALSE(table.lookup("C101", 50).has_value());
    CHECK_FALSE(table.lookup("R101", 25).has_value());

    try {
        table.insert("C101", 25, 4, 200.0);
        FAIL("expected duplicate to throw");
    } catch (const ReferenceError& e) {
        CHECK(e.kind == ReferenceError::Kind::duplicate_key);
    }
    try {
        table.insert("X", 25, 0, 10.0);
        FAIL("expected bad nv to throw");
    } catch (const ReferenceError& e) {
        CHECK(e.kind == ReferenceError::Kind::malformed_row);
    }
    CHECK_THROWS_AS(table.insert("X", 25, 1, 0.0), ReferenceError);
    CHECK_THROWS_AS(table.insert("X", 25, 1, -3.0), ReferenceError);
}

TEST_CASE("reference csv ingestion skips headers and comments") {
    const std::string text =
        "# best known values\n"
        "name,count,nv,td\n"
        "\n"
        "C101,25,3,191.3\n"
        "  R101,25,8,617.1  \n"
        "# trailing comment\n";
    ReferenceTable table = ingest_reference(text);
    CHECK(table.size() == 2);
    CHECK(table.lookup("R101", 25)->first == 8);
}

TEST_CASE("reference csv errors carry the line number") {
    const std::string text =
        "name,count,nv,td\n"
        "C101,25,3,191.3\n"
        "R101,25,eight,617.1\n";
    try {
        ingest_reference(text);
        FAIL("expected malformed row");
    } catch (const ReferenceError& e) {
        CHECK(e.kind == ReferenceError::Kind::malformed_row);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(ingest_reference("C101,25,3\n"), ReferenceError);
    CHECK_THROWS_AS(ingest_reference(",25,3,191.3\n"), ReferenceError);

    try {
        ingest_reference("C101,25,3,191.3\nC101,25,3,191.3\n");
        FAIL("expected duplicate");
    } catch (const ReferenceError& e) {
        CHECK(e.kind == ReferenceError::Kind::duplicate_key);
    }
}

TEST_CASE("ingest_reference_file reports unreadable paths") {
    CHECK_THROWS_AS(ingest_reference_file("/nonexistent/ref.csv"), ConfigError);
}

TEST_CASE("iteration budget defaults by customer count") {
    CHECK(iteration_budget(25, 0) == 1000);
    CHECK(iteration_budget(50, 0) == 10000);
    CHECK(iteration_budget(100, 0) == 10000);
    CHECK(iteration_budget(25, 777) == 777);
    CHECK(iteration_budget(100, 5) == 5);
}

TEST_CASE("marker classifier thresholds") {
    // Fewer vehicles than the reference always earns **.
    CHECK(marker(2, 999.0, 3, 100.0) == Marker::double_star);
    // Same vehicles within 5% of the reference distance earns *.
    CHECK(marker(3, 100.0, 3, 100.0) == Marker::star);
    CHECK(marker(3, 105.0, 3, 100.0) == Marker::star);  // boundary inclusive
    CHECK(marker(3, 105.01, 3, 100.0) == Marker::none);
    // More vehicles is never marked, no matter the distance.
    CHECK(marker(4, 50.0, 3, 100.0) == Marker::none);
}

TEST_CASE("marker classifier reproduces published comparison rows") {
    struct RowCase {
        const char* name;
        int nv;
        double td;
        int ref_nv;
        double ref_td;
        Marker want;
    };
    const RowCase rows[] = {
        {"C101", 3, 191.81, 3, 191.3, Marker::star},
        {"C202", 1, 222.32, 2, 214.7, Marker::double_star},
        {"C204", 1, 222.18, 2, 213.1, Marker::double_star},
        {"R104", 4, 417.19, 4, 416.9, Marker::star},
        {"R110", 4, 429.33, 4, 441.1, Marker::star},
        {"R201", 2, 513.16, 4, 463.3, Marker::double_star},
        {"R208", 1, 329.32, 1, 328.2, Marker::star},
        {"RC101", 4, 462.16, 4, 461.1, Marker::star},
        {"RC108", 3, 294.99, 3, 294.5, Marker::star},
        {"RC204", 1, 347.23, 3, 299.7, Marker::double_star},
    };
    for (const RowCase& rc : rows) {
        CAPTURE(rc.name);
        CHECK(marker(rc.nv, rc.td, rc.ref_nv, rc.ref_td) == rc.want);
    }
}

TEST_CASE("run_suite validates its inputs up front") {
    SuiteSpec spec = small_spec({1});

    SUBCASE("no seeds") {
        spec.seeds.clear();
        CHECK_THROWS_AS(run_suite(spec), ConfigError);
    }
    SUBCASE("no instances") {
        spec.instance_paths.clear();
        CHECK_THROWS_AS(run_suite(spec), ConfigError);
    }
    SUBCASE("no counts") {
        spec.customer_counts.clear();
        CHECK_THROWS_AS(run_suite(spec), ConfigError);
    }
    SUBCASE("non-protocol count") {
        spec.customer_counts = {30};
        CHECK_THROWS_AS(run_suite(spec), ConfigError);
    }
    SUBCASE("missing instance file names the path") {
        spec.instance_paths = {"/nonexistent/NOPE.txt"};
        try {
            run_suite(spec);
            FAIL("expected runtime_error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("/nonexistent/NOPE.txt") !=
                  std::string::npos);
        }
    }
}

TEST_CASE("run_suite aggregates exactly the per-seed runs") {
    SuiteSpec spec = small_spec({1, 2, 3});
    SuiteReport report = run_suite(spec);

    REQUIRE(report.rows.size() == 1);
    const SuiteRow& row = report.rows[0];
    CHECK(row.instance == "SYN01.25");
    CHECK(row.mode == "rwpso");
    CHECK(row.capacity == doctest::Approx(50.0));
    CHECK(row.seeds_run == 3);
    CHECK(row.seeds_failed == 0);
    CHECK_FALSE(row.ref_nv.has_value());
    CHECK(row.mean_cpu > 0.0);

    // Reproduce the three cells directly and fold by hand.
    Instance inst = build_instance(truncate(synthetic_raw(), 25));
    std::vector<RunResult> runs;
    for (std::uint64_t s : {1ull, 2ull, 3ull}) {
        PsoConfig cfg = spec.cfg;
        cfg.seed = s;
        cfg.max_iterations = iteration_budget(25, spec.iterations_override);
        runs.push_back(run(inst, cfg, Mode::rwpso));
    }
    const RoutePlan* best = &runs[0].best_plan;
    for (const RunResult& r : runs)
        if (compare_lexicographic(r.best_plan, *best) < 0) best = &r.best_plan;
    CHECK(row.best_nv == best->nv);
    CHECK(row.best_td == best->td);

    double mean = 0.0;
    for (const RunResult& r : runs) mean += r.best_plan.td;
    mean /= 3.0;
    CHECK(row.mean_td == doctest::Approx(mean).epsilon(1e-12));
    double var = 0.0;
    for (const RunResult& r : runs)
        var += (r.best_plan.td - mean) * (r.best_plan.td - mean);
    CHECK(row.std_td == doctest::Approx(std::sqrt(var / 2.0)).epsilon(1e-9));

    CHECK(report.seed_count == 3);
    CHECK(report.archive_size == 3);
    CHECK(report.particles == 6);
    REQUIRE(report.modes.size() == 1);
    CHECK(report.modes[0] == "rwpso");
}

TEST_CASE("run_suite repeats identically and ignores worker count") {
    SuiteSpec spec = small_spec({5, 6});
    SuiteReport a = run_suite(spec);
    spec.jobs = 1;
    SuiteReport b = run_suite(spec);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].instance == b.rows[k].instance);
        CHECK(a.rows[k].best_nv == b.rows[k].best_nv);
        CHECK(a.rows[k].best_td == b.rows[k].best_td);
        CHECK(a.rows[k].mean_td == b.rows[k].mean_td);
        CHECK(a.rows[k].std_td == b.rows[k].std_td);
    }
}

TEST_CASE("a duplicated seed yields zero spread") {
    SuiteSpec spec = small_spec({7, 7});
    SuiteReport report = run_suite(spec);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].std_td == 0.0);
    CHECK(report.rows[0].mean_td == report.rows[0].best_td);
}

TEST_CASE("run_suite joins the reference by base name and count") {
    SuiteSpec spec = small_spec({1, 2});
    ReferenceTable table;
    table.insert("SYN01", 25, 5, 300.0);
    spec.reference = table;

    SuiteReport report = run_suite(spec);
    REQUIRE(report.rows.size() == 1);
    const SuiteRow& row = report.rows[0];
    REQUIRE(row.ref_nv.has_value());
    CHECK(*row.ref_nv == 5);
    CHECK(*row.ref_td == doctest::Approx(300.0));
    CHECK(row.marker == marker(row.best_nv, row.best_td, 5, 300.0));

    // A reference without the key leaves the cells empty.
    ReferenceTable other;
    other.insert("ELSEWHERE", 25, 5, 300.0);
    spec.reference = other;
    SuiteReport miss = run_suite(spec);
    CHECK_FALSE(miss.rows[0].ref_nv.has_value());
}

TEST_CASE("run_suite emits one log line per cell") {
    SuiteSpec spec = small_spec({1, 2, 3});
    std::vector<std::string> lines;
    run_suite(spec, [&](const std::string& line) { lines.push_back(line); });
    CHECK(lines.size() == 3);
    int with_seed = 0;
    for (const std::string& line : lines) {
        CHECK(line.rfind("SYN01.25 rwpso seed=", 0) == 0);
        if (line.find("nv=") != std::string::npos &&
            line.find("td=") != std::string::npos &&
            line.find("wall=") != std::string::npos)
            ++with_seed;
    }
    CHECK(with_seed == 3);
}

TEST_CASE("run_suite orders multi-mode rows mode-major within an instance") {
    SuiteSpec spec = small_spec({4});
    spec.modes = {Mode::rwpso, Mode::baseline};
    SuiteReport report = run_suite(spec);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].mode == "rwpso");
    CHECK(report.rows[1].mode == "baseline");
    REQUIRE(report.modes.size() == 2);
    CHECK(report.modes[0] == "rwpso");
    CHECK(report.modes[1] == "baseline");
}

TEST_CASE("suite configs parse keys, lists and comments") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "rwpso_bench_test";
    fs::create_directories(dir);
    {
        std::ofstream ref(dir / "ref.csv");
        ref << "name,count,nv,td\nSYN01,25,5,300.0\n";
    }

    const std::string text =
        "# suite for the grid toy\n"
        "instances = SYN01.txt\n"
        "customers = 25\n"
        "seeds = 1, 2, 3   # three repetitions\n"
        "modes = rwpso, baseline\n"
        "reference = ref.csv\n"
        "iters = 50\n"
        "jobs = 2\n"
        "particles = 6\n"
        "archive = 3\n"
        "fleet = 8\n"
        "k_vmax = 0.25\n"
        "w_start = 0.8\n"
        "w_end = 0.3\n"
        "c1 = 1.5\n"
        "c2 = 2.5\n"
        "rate = 2\n"
        "penalty_cost = 90\n"
        "vehicle_weight = 900\n";

    SuiteSpec spec = parse_suite_config(text, dir.string());
    REQUIRE(spec.instance_paths.size() == 1);
    CHECK(spec.instance_paths[0] == (dir / "SYN01.txt").string());
    CHECK(spec.customer_counts == std::vector<int>{25});
    CHECK(spec.seeds == std::vector<std::uint64_t>{1, 2, 3});
    REQUIRE(spec.modes.size() == 2);
    CHECK(spec.modes[0] == Mode::rwpso);
    CHECK(spec.modes[1] == Mode::baseline);
    REQUIRE(spec.reference.has_value());
    CHECK(spec.reference->lookup("SYN01", 25)->first == 5);
    CHECK(spec.iterations_override == 50);
    CHECK(spec.jobs == 2);
    CHECK(spec.cfg.n_particles == 6);
    CHECK(spec.cfg.archive_size == 3);
    CHECK(spec.cfg.fleet_bound == 8);
    CHECK(spec.cfg.k_vmax == doctest::Approx(0.25));
    CHECK(spec.cfg.w_start == doctest::Approx(0.8));
    CHECK(spec.cfg.w_end == doctest::Approx(0.3));
    CHECK(spec.cfg.c1 == doctest::Approx(1.5));
    CHECK(spec.cfg.c2 == doctest::Approx(2.5));
    CHECK(spec.cfg.rate == doctest::Approx(2.0));
    CHECK(spec.cfg.penalty_cost == doctest::Approx(90.0));
    CHECK(spec.cfg.vehicle_weight == doctest::Approx(900.0));
}

TEST_CASE("suite configs default to distance-only reporting") {
    SuiteSpec spec = parse_suite_config("seeds = 1\n", "");
    CHECK(spec.cfg.time_cost == 0.0);  // waiting time excluded by default
    REQUIRE(spec.modes.size() == 1);
    CHECK(spec.modes[0] == Mode::rwpso);
    CHECK(spec.iterations_override == 0);

    SuiteSpec with = parse_suite_config("seeds = 1\ntime_cost = 10\n", "");
    CHECK(with.cfg.time_cost == doctest::Approx(10.0));
}

TEST_CASE("suite configs keep absolute paths untouched") {
    SuiteSpec spec =
        parse_suite_config("instances = /abs/here.txt\nseeds = 1\n", "/base");
    CHECK(spec.instance_paths[0] == "/abs/here.txt");
}

TEST_CASE("suite config errors carry line numbers") {
    auto expect_line = [](const std::string& text, const char* needle) {
        try {
            parse_suite_config(text, "");
            FAIL("expected ConfigError for: ", text);
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_line("seeds = 1\nbogus_key = 3\n", "line 2");
    expect_line("seeds = 1\nbogus_key = 3\n", "bogus_key");
    expect_line("seeds = 1\nmodes = fancy\n", "unknown mode 'fancy'");
    expect_line("seeds = 1\nparticles = many\n", "particles expects an integer");
    expect_line("seeds = 1\nk_vmax = big\n", "k_vmax expects a number");
    expect_line("seeds = one\n", "seeds expects non-negative integers");
    expect_line("seeds = -4\n", "seeds expects non-negative integers");
    expect_line("instances = a.txt\n", "must list seeds");
    expect_line("seeds = 1\njust words\n", "expected key = value");
}
