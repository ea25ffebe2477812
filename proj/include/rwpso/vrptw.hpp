#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rwpso {

struct Customer {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double demand = 0.0;
    double ready = 0.0;       // earliest service start
    double due = 0.0;         // latest service start (hard)
    double service = 0.0;
};

// Immutable problem data. Travel time equals Euclidean distance (speed 1),
// so a single matrix backs both accessors.
class Instance {
public:
    // declared_fleet 0 means "as many vehicles as customers".
    Instance(std::string name, double capacity, double depot_start, double depot_end,
             double depot_x, double depot_y, std::vector<Customer> customers,
             std::optional<std::pair<double, double>> traffic_window = std::nullopt,
             double traffic_eps = 1.0, int declared_fleet = 0);

    const std::string& name() const { return name_; }
    double capacity() const { return capacity_; }
    double depot_start() const { return depot_start_; }
    double depot_end() const { return depot_end_; }
    double depot_x() const { return depot_x_; }
    double depot_y() const { return depot_y_; }
    double big_k() const { return big_k_; }
    int declared_fleet() const { return declared_fleet_; }

    // Customers are 1-based; index 0 is the depot.
    std::size_t customer_count() const { return customers_.size(); }
    const Customer& customer(int id) const;
    const std::vector<Customer>& customers() const { return customers_; }

    double distance(int i, int j) const { return dist_[index(i, j)]; }
    double travel_time(int i, int j) const { return dist_[index(i, j)]; }

    const std::optional<std::pair<double, double>>& traffic_window() const {
        return traffic_window_;
    }
    double traffic_eps() const { return traffic_eps_; }

    // Coordinate bounding box over depot plus customers.
    double min_x() const { return min_x_; }
    double max_x() const { return max_x_; }
    double min_y() const { return min_y_; }
    double max_y() const { return max_y_; }

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * (customers_.size() + 1) +
               static_cast<std::size_t>(j);
    }

    std::string name_;
    double capacity_;
    double depot_start_;
    double depot_end_;
    double depot_x_;
    double depot_y_;
    std::vector<Customer> customers_;
    std::vector<double> dist_;
    std::optional<std::pair<double, double>> traffic_window_;
    double traffic_eps_;
    int declared_fleet_ = 0;
    double big_k_ = 0.0;
    double min_x_ = 0.0, max_x_ = 0.0, min_y_ = 0.0, max_y_ = 0.0;
};

struct InstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownCustomerId : std::runtime_error {
    explicit UnknownCustomerId(int id)
        : std::runtime_error("unknown customer id " + std::to_string(id)), id(id) {}
    int id;
};

enum class ViolationKind {
    late_arrival,
    capacity_exceeded,
    depot_overrun,
    coverage_violation,
};

const char* violation_name(ViolationKind kind);

struct InfeasibilityReason {
    int stop = 0;  // customer id at the first violation; 0 for depot overrun
    ViolationKind kind = ViolationKind::late_arrival;
};

struct StopTiming {
    double arrival = 0.0;
    double wait = 0.0;
    double begin = 0.0;
    double depart = 0.0;
};

struct Route {
    std::vector<int> stops;
    std::vector<StopTiming> schedule;  // parallel to stops
    double load = 0.0;
    double distance = 0.0;  // includes both depot legs
    double total_wait = 0.0;
    double return_time = 0.0;
};

struct RoutePlan {
    std::vector<Route> routes;
    int nv = 0;
    double td = 0.0;
    double total_wait = 0.0;
    double penalty = 0.0;
};

struct CostWeights {
    double vehicle_weight = 1000.0;  // W_v: makes vehicle count dominate distance
    double time_cost = 10.0;         // weight on accumulated waiting (0 in benchmark preset)
    double penalty_cost = 100.0;     // traffic legs and decoder overflow sentinel
};

// Forward simulation from the depot at time depot_start. Arriving before a
// customer's ready time waits at no cost; arriving after its due time, carrying
// more than capacity, or returning after the depot's closing time is a hard
// violation reported as the first InfeasibilityReason encountered.
std::variant<Route, InfeasibilityReason> schedule_route(const Instance& inst,
                                                        const std::vector<int>& stops);

// Sum over legs whose on-the-road interval [depart_i, arrival_j] intersects the
// instance's traffic window: eps * penalty_cost per such leg. Zero when the
// feature is not configured.
double traffic_penalty(const Instance& inst, const Route& route,
                       double penalty_cost = 100.0);

// Coverage check plus per-route scheduling; fails fast on the first violation.
// Empty stop sequences are skipped and do not count toward nv.
std::variant<RoutePlan, InfeasibilityReason> evaluate(
    const Instance& inst, const std::vector<std::vector<int>>& routes,
    const CostWeights& weights = CostWeights{});

double scalar_cost(const RoutePlan& plan, const CostWeights& weights);

// Orders by (nv, td, penalty) ascending: -1 when a is better, 0 equal, 1 worse.
int compare_lexicographic(const RoutePlan& a, const RoutePlan& b);

}  // namespace rwpso
