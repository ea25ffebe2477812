#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rwpso/vrptw.hpp"

namespace rwpso {

// Particle layout: one dimension per customer (only relative order matters,
// bounded [0,1]) followed by an (x, y) pair per vehicle, bounded by the
// instance's coordinate bounding box.
struct EncodingShape {
    int n_customers = 0;
    int n_vehicles = 0;
    std::vector<double> lower;      // per-dimension position bounds
    std::vector<double> upper;
    std::vector<double> vel_bound;  // V_max = k_vmax * max(|lower|, |upper|)

    int dims() const { return n_customers + 2 * n_vehicles; }
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EncodingShape make_shape(const Instance& inst, int fleet_bound, double k_vmax);

// Small-position-value rule: customer ids 1..c sorted ascending by their
// position entries, ties by ascending id.
std::vector<int> priority_list(const std::vector<double>& position,
                               const EncodingShape& shape);

// Pairs the tail dimensions into one (x, y) point per vehicle.
std::vector<std::pair<double, double>> reference_points(
    const std::vector<double>& position, const EncodingShape& shape);

struct DecodeResult {
    RoutePlan plan;
    double fitness = 0.0;
};

// Position -> RoutePlan:
//   1. customers are ranked by the small-position-value rule;
//   2. vehicles are ordered by ascending distance of their reference point to
//      the depot (ties by vehicle index);
//   3. each customer in priority order joins the first open vehicle, in that
//      order, whose route stays feasible with the customer appended; a fresh
//      vehicle opens when no open one fits;
//   4. once all vehicles are open and none fits, the customer becomes a
//      singleton overflow route and adds penalty_cost to the plan's penalty;
//   5. the assembled plan is evaluated and fitness = 1 / (1 + scalar_cost).
// Infeasibility is absorbed into the penalty, never an error, so every
// position has a fitness.
DecodeResult decode(const Instance& inst, const std::vector<double>& position,
                    const EncodingShape& shape, const CostWeights& weights);

// Order-reversing map from cost to the strictly positive fitness the roulette
// probabilities require; range (0, 1].
double fitness_of(double cost);

}  // namespace rwpso
