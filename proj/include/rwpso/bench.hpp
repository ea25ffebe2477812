#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rwpso/engine.hpp"
#include "rwpso/report.hpp"

namespace rwpso {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReferenceError : std::runtime_error {
    enum class Kind { duplicate_key, malformed_row };
    ReferenceError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind(kind) {}
    Kind kind;
};

// Best-known (nv, td) per (instance name, customer count).
class ReferenceTable {
public:
    void insert(const std::string& name, int count, int nv, double td);
    std::optional<std::pair<int, double>> lookup(const std::string& name,
                                                 int count) const;
    std::size_t size() const { return rows_.size(); }

private:
    std::map<std::pair<std::string, int>, std::pair<int, double>> rows_;
};

// CSV rows "name,count,nv,td"; a literal header row, blank lines and
// #-comments are skipped.
ReferenceTable ingest_reference(const std::string& text);
ReferenceTable ingest_reference_file(const std::string& path);

struct SuiteSpec {
    std::vector<std::string> instance_paths;
    std::vector<int> customer_counts;     // protocol counts: subset of {25, 50, 100}
    std::vector<std::uint64_t> seeds;
    PsoConfig cfg;
    std::vector<Mode> modes = {Mode::rwpso};
    std::optional<ReferenceTable> reference;
    int iterations_override = 0;  // 0: per-count default (1000 at 25, else 10000)
    int jobs = 0;                 // 0: logical cores
};

int iteration_budget(int customer_count, int override_value);

// Classifier behind the report's (*)/(**) column: fewer vehicles than the
// reference earns **, the same vehicle count within 5% of the reference
// distance earns *, anything else none.
Marker marker(int best_nv, double best_td, int ref_nv, double ref_td);

using CellLog = std::function<void(const std::string& line)>;

// Runs every (instance, count, mode, seed) cell on a bounded worker pool and
// folds results in a fixed key order, so the report does not depend on
// completion order. A throwing cell is recorded as failed and skips
// aggregation; rows aggregate over the surviving seeds.
SuiteReport run_suite(const SuiteSpec& spec, const CellLog& log = nullptr);

// Flat key=value config for bench suites; see README for the key list.
// Relative paths resolve against base_dir.
SuiteSpec parse_suite_config(const std::string& text, const std::string& base_dir);

}  // namespace rwpso
