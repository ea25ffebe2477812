#include "rwpso/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "rwpso/solomon_io.hpp"

namespace rwpso {

void ReferenceTable::insert(const std::string& name, int count, int nv, double td) {
    if (nv < 1 || td <= 0.0)
        throw ReferenceError(ReferenceError::Kind::malformed_row,
                             "reference row " + name + "," + std::to_string(count) +
                                 ": nv must be >= 1 and td positive");
    auto [it, inserted] = rows_.try_emplace({name, count}, nv, td);
    (void)it;
    if (!inserted)
        throw ReferenceError(ReferenceError::Kind::duplicate_key,
                             "duplicate reference key " + name + "," +
                                 std::to_string(count));
}

std::optional<std::pair<int, double>> ReferenceTable::lookup(const std::string& name,
                                                             int count) const {
    auto it = rows_.find({name, count});
    if (it == rows_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

bool to_double(const std::string& s, double& out) {
    const char* b = s.data();
    auto [p, ec] = std::from_chars(b, b + s.size(), out);
    return ec == std::errc{} && p == b + s.size();
}

bool to_long(const std::string& s, long long& out) {
    const char* b = s.data();
    auto [p, ec] = std::from_chars(b, b + s.size(), out);
    return ec == std::errc{} && p == b + s.size();
}

}  // namespace

ReferenceTable ingest_reference(const std::string& text) {
    ReferenceTable table;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t == "name,count,nv,td") continue;
        auto fields = split(t, ',');
        long long count = 0, nv = 0;
        double td = 0.0;
        if (fields.size() != 4 || fields[0].empty() || !to_long(fields[1], count) ||
            !to_long(fields[2], nv) || !to_double(fields[3], td))
            throw ReferenceError(ReferenceError::Kind::malformed_row,
                                 "reference line " + std::to_string(lineno) +
                                     ": expected name,count,nv,td");
        table.insert(fields[0], static_cast<int>(count), static_cast<int>(nv), td);
    }
    return table;
}

ReferenceTable ingest_reference_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open reference file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return ingest_reference(buf.str());
}

int iteration_budget(int customer_count, int override_value) {
    if (override_value > 0) return override_value;
    return customer_count <= 25 ? 1000 : 10000;
}

Marker marker(int best_nv, double best_td, int ref_nv, double ref_td) {
    if (best_nv < ref_nv) return Marker::double_star;
    if (best_nv == ref_nv && best_td <= 1.05 * ref_td) return Marker::star;
    return Marker::none;
}

namespace {

struct Cell {
    std::size_t instance_idx;
    std::size_t count_idx;
    std::size_t mode_idx;
    std::size_t seed_idx;
};

struct CellOutcome {
    bool ok = false;
    RunResult result;
    std::string error;
};

}  // namespace

SuiteReport run_suite(const SuiteSpec& spec, const CellLog& log) {
    if (spec.seeds.empty())
        throw ConfigError("suite needs at least one seed");
    if (spec.instance_paths.empty())
        throw ConfigError("suite needs at least one instance");
    if (spec.customer_counts.empty())
        throw ConfigError("suite needs at least one customer count");
    for (int c : spec.customer_counts)
        if (c != 25 && c != 50 && c != 100)
            throw ConfigError("customer counts must be 25, 50 or 100; got " +
                              std::to_string(c));

    // Parse and build each (file, count) combination once; instances are
    // immutable and shared read-only by the worker pool.
    struct Prepared {
        std::string base_name;
        std::vector<Instance> by_count;  // parallel to spec.customer_counts
    };
    std::vector<Prepared> prepared;
    prepared.reserve(spec.instance_paths.size());
    for (const std::string& path : spec.instance_paths) {
        RawInstanceFile raw;
        try {
            raw = parse_instance_file(path);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ": " + e.what());
        }
        Prepared prep;
        prep.base_name = raw.name;
        for (int count : spec.customer_counts) {
            try {
                prep.by_count.push_back(build_instance(truncate(raw, count)));
            } catch (const std::exception& e) {
                throw std::runtime_error(path + ": " + e.what());
            }
        }
        prepared.push_back(std::move(prep));
    }

    std::vector<Cell> cells;
    for (std::size_t i = 0; i < prepared.size(); ++i)
        for (std::size_t c = 0; c < spec.customer_counts.size(); ++c)
            for (std::size_t m = 0; m < spec.modes.size(); ++m)
                for (std::size_t s = 0; s < spec.seeds.size(); ++s)
                    cells.push_back({i, c, m, s});

    std::vector<CellOutcome> outcomes(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= cells.size()) return;
            const Cell& cell = cells[k];
            const Instance& inst = prepared[cell.instance_idx].by_count[cell.count_idx];
            PsoConfig cfg = spec.cfg;
            cfg.seed = spec.seeds[cell.seed_idx];
            cfg.max_iterations = iteration_budget(
                spec.customer_counts[cell.count_idx], spec.iterations_override);
            CellOutcome& out = outcomes[k];
            std::string line;
            try {
                out.result = run(inst, cfg, spec.modes[cell.mode_idx]);
                out.ok = true;
                char buf[256];
                std::snprintf(buf, sizeof buf,
                              "%s %s seed=%llu nv=%d td=%.2f cost=%.2f wall=%.2fs",
                              inst.name().c_str(),
                              mode_name(spec.modes[cell.mode_idx]),
                              static_cast<unsigned long long>(cfg.seed),
                              out.result.best_plan.nv, out.result.best_plan.td,
                              out.result.best_cost, out.result.wall_clock);
                line = buf;
            } catch (const std::exception& e) {
                out.error = e.what();
                line = inst.name() + " " + mode_name(spec.modes[cell.mode_idx]) +
                       " seed=" + std::to_string(cfg.seed) + " FAILED: " + out.error;
            }
            if (log) {
                std::lock_guard<std::mutex> guard(log_mutex);
                log(line);
            }
        }
    };

    unsigned pool = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
    pool = std::min<unsigned>(pool, static_cast<unsigned>(cells.size()));
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();

    SuiteReport report;
    report.seed_count = static_cast<int>(spec.seeds.size());
    report.archive_size = spec.cfg.archive_size;
    report.particles = spec.cfg.n_particles;
    report.rate = spec.cfg.rate;
    for (Mode m : spec.modes) report.modes.emplace_back(mode_name(m));

    // Deterministic fold in (instance, count, mode) order.
    std::size_t base = 0;
    const std::size_t per_mode = spec.seeds.size();
    for (std::size_t i = 0; i < prepared.size(); ++i) {
        for (std::size_t c = 0; c < spec.customer_counts.size(); ++c) {
            for (std::size_t m = 0; m < spec.modes.size(); ++m) {
                SuiteRow row;
                row.instance = prepared[i].by_count[c].name();
                row.mode = mode_name(spec.modes[m]);
                row.capacity = prepared[i].by_count[c].capacity();

                const RoutePlan* best = nullptr;
                std::vector<double> tds;
                double cpu_sum = 0.0;
                for (std::size_t s = 0; s < per_mode; ++s) {
                    const CellOutcome& out = outcomes[base + s];
                    if (!out.ok) {
                        ++row.seeds_failed;
                        continue;
                    }
                    ++row.seeds_run;
                    tds.push_back(out.result.best_plan.td);
                    cpu_sum += out.result.wall_clock;
                    if (!best ||
                        compare_lexicographic(out.result.best_plan, *best) < 0)
                        best = &out.result.best_plan;
                }
                base += per_mode;

                if (best) {
                    row.best_nv = best->nv;
                    row.best_td = best->td;
                    double mean = 0.0;
                    for (double td : tds) mean += td;
                    mean /= static_cast<double>(tds.size());
                    row.mean_td = mean;
                    double var = 0.0;
                    for (double td : tds) var += (td - mean) * (td - mean);
                    row.std_td = tds.size() > 1
                                     ? std::sqrt(var / static_cast<double>(tds.size() - 1))
                                     : 0.0;
                    row.mean_cpu = cpu_sum / static_cast<double>(tds.size());
                    if (spec.reference) {
                        auto ref = spec.reference->lookup(
                            prepared[i].base_name, spec.customer_counts[c]);
                        if (ref) {
                            row.ref_nv = ref->first;
                            row.ref_td = ref->second;
                            row.marker =
                                marker(row.best_nv, row.best_td, ref->first, ref->second);
                        }
                    }
                }
                report.rows.push_back(std::move(row));
            }
        }
    }
    return report;
}

SuiteSpec parse_suite_config(const std::string& text, const std::string& base_dir) {
    SuiteSpec spec;
    spec.modes.clear();
    // Benchmark preset: reported distances exclude waiting time unless a config
    // overrides time_cost explicitly.
    spec.cfg.time_cost = 0.0;

    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        if (path.is_absolute() || base_dir.empty()) return p;
        return (std::filesystem::path(base_dir) / path).string();
    };

    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    bool saw_seeds = false;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (auto hash = t.find('#'); hash != std::string::npos) t = trim(t.substr(0, hash));
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("suite config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        auto values = split(value, ',');

        auto one_double = [&](double& out) {
            if (!to_double(value, out))
                throw ConfigError("suite config line " + std::to_string(lineno) + ": " +
                                  key + " expects a number");
        };
        auto one_int = [&](int& out) {
            long long v = 0;
            if (!to_long(value, v))
                throw ConfigError("suite config line " + std::to_string(lineno) + ": " +
                                  key + " expects an integer");
            out = static_cast<int>(v);
        };

        if (key == "instances") {
            for (const auto& v : values)
                if (!v.empty()) spec.instance_paths.push_back(resolve(v));
        } else if (key == "customers") {
            for (const auto& v : values) {
                long long n = 0;
                if (!to_long(v, n))
                    throw ConfigError("suite config line " + std::to_string(lineno) +
                                      ": customers expects integers");
                spec.customer_counts.push_back(static_cast<int>(n));
            }
        } else if (key == "seeds") {
            for (const auto& v : values) {
                long long s = 0;
                if (!to_long(v, s) || s < 0)
                    throw ConfigError("suite config line " + std::to_string(lineno) +
                                      ": seeds expects non-negative integers");
                spec.seeds.push_back(static_cast<std::uint64_t>(s));
            }
            saw_seeds = true;
        } else if (key == "modes") {
            for (const auto& v : values) {
                if (v == "rwpso")
                    spec.modes.push_back(Mode::rwpso);
                else if (v == "baseline")
                    spec.modes.push_back(Mode::baseline);
                else
                    throw ConfigError("suite config line " + std::to_string(lineno) +
                                      ": unknown mode '" + v + "'");
            }
        } else if (key == "reference") {
            spec.reference = ingest_reference_file(resolve(value));
        } else if (key == "iters") {
            one_int(spec.iterations_override);
        } else if (key == "jobs") {
            one_int(spec.jobs);
        } else if (key == "particles") {
            one_int(spec.cfg.n_particles);
        } else if (key == "archive") {
            one_int(spec.cfg.archive_size);
        } else if (key == "fleet") {
            one_int(spec.cfg.fleet_bound);
        } else if (key == "time_cost") {
            one_double(spec.cfg.time_cost);
        } else if (key == "penalty_cost") {
            one_double(spec.cfg.penalty_cost);
        } else if (key == "vehicle_weight") {
            one_double(spec.cfg.vehicle_weight);
        } else if (key == "k_vmax") {
            one_double(spec.cfg.k_vmax);
        } else if (key == "w_start") {
            one_double(spec.cfg.w_start);
        } else if (key == "w_end") {
            one_double(spec.cfg.w_end);
        } else if (key == "c1") {
            one_double(spec.cfg.c1);
        } else if (key == "c2") {
            one_double(spec.cfg.c2);
        } else if (key == "rate") {
            one_double(spec.cfg.rate);
        } else {
            throw ConfigError("suite config line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }

    if (!saw_seeds)
        throw ConfigError("suite config must list seeds explicitly");
    if (spec.modes.empty()) spec.modes.push_back(Mode::rwpso);
    return spec;
}

}  // namespace rwpso
