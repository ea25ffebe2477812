#include "rwpso/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rwpso {

EncodingShape make_shape(const Instance& inst, int fleet_bound, double k_vmax) {
    if (fleet_bound < 1)
        throw std::invalid_argument("fleet bound must be at least 1");
    EncodingShape shape;
    shape.n_customers = static_cast<int>(inst.customer_count());
    shape.n_vehicles = fleet_bound;
    const int dims = shape.dims();
    shape.lower.resize(dims);
    shape.upper.resize(dims);
    shape.vel_bound.resize(dims);
    for (int d = 0; d < shape.n_customers; ++d) {
        shape.lower[d] = 0.0;
        shape.upper[d] = 1.0;
    }
    for (int k = 0; k < fleet_bound; ++k) {
        const int dx = shape.n_customers + 2 * k;
        shape.lower[dx] = inst.min_x();
        shape.upper[dx] = inst.max_x();
        shape.lower[dx + 1] = inst.min_y();
        shape.upper[dx + 1] = inst.max_y();
    }
    for (int d = 0; d < dims; ++d)
        shape.vel_bound[d] =
            k_vmax * std::max(std::abs(shape.lower[d]), std::abs(shape.upper[d]));
    return shape;
}

std::vector<int> priority_list(const std::vector<double>& position,
                               const EncodingShape& shape) {
    if (static_cast<int>(position.size()) != shape.dims())
        throw DimensionMismatch("position has " + std::to_string(position.size()) +
                                " dims, expected " + std::to_string(shape.dims()));
    std::vector<int> ids(static_cast<std::size_t>(shape.n_customers));
    std::iota(ids.begin(), ids.end(), 1);
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        return position[static_cast<std::size_t>(a) - 1] <
               position[static_cast<std::size_t>(b) - 1];
    });
    return ids;
}

std::vector<std::pair<double, double>> reference_points(
    const std::vector<double>& position, const EncodingShape& shape) {
    if (static_cast<int>(position.size()) != shape.dims())
        throw DimensionMismatch("position has " + std::to_string(position.size()) +
                                " dims, expected " + std::to_string(shape.dims()));
    std::vector<std::pair<double, double>> points;
    points.reserve(static_cast<std::size_t>(shape.n_vehicles));
    for (int k = 0; k < shape.n_vehicles; ++k) {
        const std::size_t dx = static_cast<std::size_t>(shape.n_customers + 2 * k);
        points.emplace_back(position[dx], position[dx + 1]);
    }
    return points;
}

namespace {

struct OpenVehicle {
    std::vector<int> stops;
    int last = 0;          // depot until the first append
    double depart = 0.0;   // departure time from `last`
    double load = 0.0;
};

}  // namespace

DecodeResult decode(const Instance& inst, const std::vector<double>& position,
                    const EncodingShape& shape, const CostWeights& weights) {
    const std::vector<int> priority = priority_list(position, shape);
    const auto refs = reference_points(position, shape);

    // Vehicles are conceptually ordered by ascending reference-point distance
    // to the depot and opened lazily in that order. Every fresh vehicle starts
    // in the same depot state, so the ordering has no observable effect on the
    // assembled plan; only the fleet size bound (refs.size()) is material.
    std::vector<OpenVehicle> open;
    open.reserve(refs.size());
    std::vector<std::vector<int>> overflow;
    int overflow_count = 0;

    auto fits = [&](const OpenVehicle& v, const Customer& c) {
        if (v.load + c.demand > inst.capacity()) return false;
        const double begin = std::max(v.depart + inst.travel_time(v.last, c.id), c.ready);
        if (begin > c.due) return false;
        return begin + c.service + inst.travel_time(c.id, 0) <= inst.depot_end();
    };
    auto append = [&](OpenVehicle& v, const Customer& c) {
        const double begin = std::max(v.depart + inst.travel_time(v.last, c.id), c.ready);
        v.stops.push_back(c.id);
        v.last = c.id;
        v.depart = begin + c.service;
        v.load += c.demand;
    };

    for (int id : priority) {
        const Customer& c = inst.customer(id);
        bool placed = false;
        for (OpenVehicle& v : open) {
            if (fits(v, c)) {
                append(v, c);
                placed = true;
                break;
            }
        }
        if (placed) continue;
        if (open.size() < refs.size()) {
            OpenVehicle v;
            v.depart = inst.depot_start();
            append(v, c);  // a fresh vehicle always fits: checked at instance build
            open.push_back(std::move(v));
        } else {
            overflow.push_back({id});
            ++overflow_count;
        }
    }

    std::vector<std::vector<int>> routes;
    routes.reserve(open.size() + overflow.size());
    for (OpenVehicle& v : open) routes.push_back(std::move(v.stops));
    for (auto& r : overflow) routes.push_back(std::move(r));

    auto outcome = evaluate(inst, routes, weights);
    // The append rule only ever builds feasible routes and covers every
    // customer, so evaluation cannot fail here.
    RoutePlan plan = std::get<RoutePlan>(std::move(outcome));
    plan.penalty += overflow_count * weights.penalty_cost;

    DecodeResult result;
    result.fitness = fitness_of(scalar_cost(plan, weights));
    result.plan = std::move(plan);
    return result;
}

double fitness_of(double cost) { return 1.0 / (1.0 + cost); }

}  // namespace rwpso
