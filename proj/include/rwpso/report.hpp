#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rwpso {

enum class Marker { none, star, double_star };

inline const char* marker_text(Marker m) {
    switch (m) {
        case Marker::star: return "*";
        case Marker::double_star: return "**";
        case Marker::none: break;
    }
    return "none";
}

struct SuiteRow {
    std::string instance;  // truncated name, e.g. "C101.25"
    std::string mode;      // "rwpso" or "baseline"
    double capacity = 0.0;
    int best_nv = 0;
    double best_td = 0.0;
    double mean_td = 0.0;
    double std_td = 0.0;
    double mean_cpu = 0.0;  // seconds, wall clock of the optimization loop
    std::optional<int> ref_nv;
    std::optional<double> ref_td;
    Marker marker = Marker::none;
    int seeds_run = 0;
    int seeds_failed = 0;
};

struct SuiteReport {
    std::vector<SuiteRow> rows;
    int seed_count = 0;
    int archive_size = 0;
    int particles = 0;
    double rate = 0.0;  // carried configuration value, reported verbatim
    std::vector<std::string> modes;
};

}  // namespace rwpso
