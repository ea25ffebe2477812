#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwpso/codec.hpp"
#include "rwpso/rng.hpp"
#include "rwpso/vrptw.hpp"

namespace rwpso {

struct PsoConfig {
    int n_particles = 20;
    double c1 = 2.0;
    double c2 = 2.0;
    double w_start = 0.9;
    double w_end = 0.4;
    int max_iterations = 1000;
    int archive_size = 5;      // L; 1 makes the roulette degenerate to plain gbest
    double k_vmax = 0.2;       // V_max = k_vmax * X_max per dimension
    double time_cost = 10.0;   // 0 in the benchmark preset
    double penalty_cost = 100.0;
    double vehicle_weight = 1000.0;
    double rate = 2.0;         // carried configuration value with no defined role
    std::uint64_t seed = 0;
    int fleet_bound = 0;       // 0: use the instance file's declared vehicle count
    bool scalar_r_draws = false;     // one r1/r2 pair per particle instead of per dimension
    bool archive_insert_shift = false;  // insert-and-shift instead of rank replacement

    CostWeights weights() const {
        return CostWeights{vehicle_weight, time_cost, penalty_cost};
    }
};

enum class Mode { rwpso, baseline };

const char* mode_name(Mode mode);

struct EmptyArchive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArchiveEntry {
    std::vector<double> position;  // snapshot, never aliased to a live particle
    double fitness = 0.0;
};

// Top-L best-known positions, fitness descending. The replacement rule is
// deliberate: a candidate beating the head replaces the head; otherwise it
// replaces the single entry whose rank it falls into, or is dropped. The
// insert-shift variant (candidates push lower ranks down instead of
// overwriting) is available behind a flag for comparison runs.
class GBestArchive {
public:
    GBestArchive(int capacity, bool insert_shift)
        : capacity_(capacity), insert_shift_(insert_shift) {}

    void offer(const std::vector<double>& position, double fitness);

    std::vector<double> selection_probabilities() const;

    // Roulette lookup: entry k such that the cumulative probability first
    // exceeds xi; xi = 0 picks the head, xi at the top of the range the tail.
    const ArchiveEntry& sample(double xi) const;

    const ArchiveEntry& head() const;
    std::size_t size() const { return entries_.size(); }
    int capacity() const { return capacity_; }
    const std::vector<ArchiveEntry>& entries() const { return entries_; }

private:
    std::vector<ArchiveEntry> entries_;
    int capacity_;
    bool insert_shift_;
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> pbest_position;
    double pbest_fitness = 0.0;
    double fitness = 0.0;
};

struct SwarmState {
    std::vector<Particle> particles;
    GBestArchive archive;
    int iteration = 0;
    Rng rng;
    RoutePlan best_plan;     // best ever by (nv, td, penalty)
    double best_cost = 0.0;
    double best_fitness = 0.0;
};

struct RunResult {
    std::string instance;
    Mode mode = Mode::rwpso;
    int archive_size = 0;
    std::uint64_t seed = 0;
    RoutePlan best_plan;
    double best_cost = 0.0;
    double best_fitness = 0.0;
    int iterations = 0;
    double wall_clock = 0.0;  // seconds, optimization loop only
};

// Linear inertia decay from w_start at t = 0 to w_end at t = T.
double inertia(int t, const PsoConfig& cfg);

// One velocity/position update against the supplied gbest; r1/r2 are drawn
// from rng (full vectors by default), velocity then position are clamped.
void update_particle(Particle& p, const std::vector<double>& gbest, double w,
                     const EncodingShape& shape, const PsoConfig& cfg, Rng& rng);

// Uniform random positions in bounds, zero velocities, pbest at the start
// position; the archive is seeded with the top-L distinct-fitness particles.
SwarmState init_state(const Instance& inst, const EncodingShape& shape,
                      const PsoConfig& cfg, Mode mode);

// One full iteration: per particle in index order, sample gbest with a fresh
// xi, update, decode, refresh pbest, offer to the archive.
void step(SwarmState& state, const Instance& inst, const EncodingShape& shape,
          const PsoConfig& cfg);

RunResult run(const Instance& inst, const PsoConfig& cfg, Mode mode);

// Diagnostic: how many particles' personal bests coincide with the archive
// head position (the classic stagnation signal). Observational only.
int converged_particle_count(const SwarmState& state);

std::string run_result_json(const RunResult& result);

}  // namespace rwpso
