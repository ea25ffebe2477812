#include "rwpso/vrptw.hpp"

#include <algorithm>
#include <cmath>

namespace rwpso {

Instance::Instance(std::string name, double capacity, double depot_start, double depot_end,
                   double depot_x, double depot_y, std::vector<Customer> customers,
                   std::optional<std::pair<double, double>> traffic_window,
                   double traffic_eps, int declared_fleet)
    : name_(std::move(name)),
      capacity_(capacity),
      depot_start_(depot_start),
      depot_end_(depot_end),
      depot_x_(depot_x),
      depot_y_(depot_y),
      customers_(std::move(customers)),
      traffic_window_(traffic_window),
      traffic_eps_(traffic_eps),
      declared_fleet_(declared_fleet > 0 ? declared_fleet
                                         : static_cast<int>(customers_.size())) {
    if (capacity_ <= 0.0)
        throw InstanceError("vehicle capacity must be positive");
    if (depot_start_ != 0.0)
        throw InstanceError("scheduling horizon must start at 0");
    if (depot_end_ <= 0.0)
        throw InstanceError("scheduling horizon must be positive");

    const std::size_t n = customers_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Customer& c = customers_[i];
        if (c.id != static_cast<int>(i) + 1)
            throw InstanceError("customer ids must be 1..n in order");
        if (c.demand < 0.0)
            throw InstanceError("negative demand for customer " + std::to_string(c.id));
        if (c.demand > capacity_)
            throw InstanceError("customer " + std::to_string(c.id) +
                                " demand exceeds vehicle capacity");
        if (c.ready > c.due)
            throw InstanceError("customer " + std::to_string(c.id) +
                                " window is inverted");
    }

    std::vector<double> xs(n + 1), ys(n + 1);
    xs[0] = depot_x_;
    ys[0] = depot_y_;
    for (std::size_t i = 0; i < n; ++i) {
        xs[i + 1] = customers_[i].x;
        ys[i + 1] = customers_[i].y;
    }
    dist_.resize((n + 1) * (n + 1));
    for (std::size_t i = 0; i <= n; ++i) {
        dist_[i * (n + 1) + i] = 0.0;
        for (std::size_t j = i + 1; j <= n; ++j) {
            const double d = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
            dist_[i * (n + 1) + j] = d;
            dist_[j * (n + 1) + i] = d;
        }
    }

    min_x_ = *std::min_element(xs.begin(), xs.end());
    max_x_ = *std::max_element(xs.begin(), xs.end());
    min_y_ = *std::min_element(ys.begin(), ys.end());
    max_y_ = *std::max_element(ys.begin(), ys.end());

    // A customer whose window closes before direct travel can reach it, or who
    // cannot be served and returned before the horizon, can never appear in any
    // feasible route (travel times satisfy the triangle inequality, so the
    // direct leg is the earliest possible arrival). Rejecting such data at
    // build time keeps decoding total.
    for (const Customer& c : customers_) {
        const double direct = distance(0, c.id);
        if (direct > c.due)
            throw InstanceError("customer " + std::to_string(c.id) +
                                " is unreachable within its time window");
        if (std::max(direct, c.ready) + c.service + direct > depot_end_)
            throw InstanceError("customer " + std::to_string(c.id) +
                                " cannot be served before the horizon ends");
    }

    double max_service = 0.0;
    for (const Customer& c : customers_) max_service = std::max(max_service, c.service);
    double max_tt = 0.0;
    for (double d : dist_) max_tt = std::max(max_tt, d);
    big_k_ = depot_end_ + max_service + max_tt + 1.0;
}

const Customer& Instance::customer(int id) const {
    if (id < 1 || static_cast<std::size_t>(id) > customers_.size())
        throw UnknownCustomerId(id);
    return customers_[static_cast<std::size_t>(id) - 1];
}

const char* violation_name(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::late_arrival: return "late-arrival";
        case ViolationKind::capacity_exceeded: return "capacity";
        case ViolationKind::depot_overrun: return "depot-overrun";
        case ViolationKind::coverage_violation: return "coverage";
    }
    return "unknown";
}

std::variant<Route, InfeasibilityReason> schedule_route(const Instance& inst,
                                                        const std::vector<int>& stops) {
    Route route;
    route.stops = stops;
    route.schedule.reserve(stops.size());

    double time = inst.depot_start();
    int prev = 0;
    for (int id : stops) {
        const Customer& c = inst.customer(id);  // throws on unknown ids
        route.load += c.demand;
        if (route.load > inst.capacity())
            return InfeasibilityReason{id, ViolationKind::capacity_exceeded};

        const double leg = inst.travel_time(prev, id);
        const double arrival = time + leg;
        const double begin = std::max(arrival, c.ready);
        if (begin > c.due)
            return InfeasibilityReason{id, ViolationKind::late_arrival};

        StopTiming t;
        t.arrival = arrival;
        t.wait = begin - arrival;
        t.begin = begin;
        t.depart = begin + c.service;
        route.schedule.push_back(t);
        route.distance += leg;
        route.total_wait += t.wait;
        time = t.depart;
        prev = id;
    }
    route.distance += inst.distance(prev, 0);
    route.return_time = time + inst.travel_time(prev, 0);
    if (route.return_time > inst.depot_end())
        return InfeasibilityReason{0, ViolationKind::depot_overrun};
    return route;
}

double traffic_penalty(const Instance& inst, const Route& route, double penalty_cost) {
    if (!inst.traffic_window())
        return 0.0;
    const auto [tw_start, tw_end] = *inst.traffic_window();

    double total = 0.0;
    double depart = inst.depot_start();
    for (std::size_t k = 0; k < route.stops.size(); ++k) {
        const double arrival = route.schedule[k].arrival;
        if (depart <= tw_end && arrival >= tw_start)
            total += inst.traffic_eps() * penalty_cost;
        depart = route.schedule[k].depart;
    }
    if (!route.stops.empty()) {
        if (depart <= tw_end && route.return_time >= tw_start)
            total += inst.traffic_eps() * penalty_cost;
    }
    return total;
}

std::variant<RoutePlan, InfeasibilityReason> evaluate(
    const Instance& inst, const std::vector<std::vector<int>>& routes,
    const CostWeights& weights) {
    const std::size_t n = inst.customer_count();
    std::vector<char> seen(n + 1, 0);
    for (const auto& stops : routes) {
        for (int id : stops) {
            if (id < 1 || static_cast<std::size_t>(id) > n)
                throw UnknownCustomerId(id);
            if (seen[static_cast<std::size_t>(id)])
                return InfeasibilityReason{id, ViolationKind::coverage_violation};
            seen[static_cast<std::size_t>(id)] = 1;
        }
    }
    for (std::size_t id = 1; id <= n; ++id) {
        if (!seen[id])
            return InfeasibilityReason{static_cast<int>(id),
                                       ViolationKind::coverage_violation};
    }

    RoutePlan plan;
    for (const auto& stops : routes) {
        if (stops.empty())
            continue;
        auto outcome = schedule_route(inst, stops);
        if (std::holds_alternative<InfeasibilityReason>(outcome))
            return std::get<InfeasibilityReason>(outcome);
        Route route = std::move(std::get<Route>(outcome));
        plan.td += route.distance;
        plan.total_wait += route.total_wait;
        plan.penalty += traffic_penalty(inst, route, weights.penalty_cost);
        plan.routes.push_back(std::move(route));
    }
    plan.nv = static_cast<int>(plan.routes.size());
    return plan;
}

double scalar_cost(const RoutePlan& plan, const CostWeights& weights) {
    return weights.vehicle_weight * plan.nv + plan.td +
           weights.time_cost * plan.total_wait + plan.penalty;
}

int compare_lexicographic(const RoutePlan& a, const RoutePlan& b) {
    if (a.nv != b.nv) return a.nv < b.nv ? -1 : 1;
    if (a.td != b.td) return a.td < b.td ? -1 : 1;
    if (a.penalty != b.penalty) return a.penalty < b.penalty ? -1 : 1;
    return 0;
}

}  // namespace rwpso
