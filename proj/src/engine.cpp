#include "rwpso/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <json.hpp>

namespace rwpso {

const char* mode_name(Mode mode) {
    return mode == Mode::baseline ? "baseline" : "rwpso";
}

void GBestArchive::offer(const std::vector<double>& position, double fitness) {
    if (static_cast<int>(entries_.size()) < capacity_) {
        // Warm-up: only candidates strictly better than the current tail are
        // admitted; they are appended and the ordering restored.
        if (entries_.empty() || fitness > entries_.back().fitness) {
            entries_.push_back({position, fitness});
            std::stable_sort(entries_.begin(), entries_.end(),
                             [](const ArchiveEntry& a, const ArchiveEntry& b) {
                                 return a.fitness > b.fitness;
                             });
        }
        return;
    }

    if (fitness > entries_.front().fitness) {
        if (insert_shift_) {
            entries_.insert(entries_.begin(), {position, fitness});
            entries_.pop_back();
        } else {
            entries_.front() = {position, fitness};
        }
        return;
    }
    for (std::size_t j = 1; j < entries_.size(); ++j) {
        if (entries_[j - 1].fitness > fitness && fitness > entries_[j].fitness) {
            if (insert_shift_) {
                entries_.insert(entries_.begin() + static_cast<std::ptrdiff_t>(j),
                                {position, fitness});
                entries_.pop_back();
            } else {
                entries_[j] = {position, fitness};
            }
            return;
        }
    }
    // No rank matched (at or below the tail, or tied with an entry): dropped.
}

std::vector<double> GBestArchive::selection_probabilities() const {
    if (entries_.empty())
        throw EmptyArchive("selection probabilities of an empty archive");
    double sum = 0.0;
    for (const ArchiveEntry& e : entries_) sum += e.fitness;
    std::vector<double> probs;
    probs.reserve(entries_.size());
    for (const ArchiveEntry& e : entries_) probs.push_back(e.fitness / sum);
    return probs;
}

const ArchiveEntry& GBestArchive::sample(double xi) const {
    if (entries_.empty())
        throw EmptyArchive("sampling from an empty archive");
    double sum = 0.0;
    for (const ArchiveEntry& e : entries_) sum += e.fitness;
    double cumulative = 0.0;
    for (const ArchiveEntry& e : entries_) {
        cumulative += e.fitness / sum;
        if (xi < cumulative) return e;
    }
    return entries_.back();  // xi at or above the cumulative top (xi = 1)
}

const ArchiveEntry& GBestArchive::head() const {
    if (entries_.empty())
        throw EmptyArchive("head of an empty archive");
    return entries_.front();
}

double inertia(int t, const PsoConfig& cfg) {
    const double T = static_cast<double>(cfg.max_iterations);
    return cfg.w_start + (cfg.w_end - cfg.w_start) * static_cast<double>(t) / T;
}

void update_particle(Particle& p, const std::vector<double>& gbest, double w,
                     const EncodingShape& shape, const PsoConfig& cfg, Rng& rng) {
    const std::size_t dims = p.position.size();
    if (gbest.size() != dims || static_cast<int>(dims) != shape.dims())
        throw DimensionMismatch("gbest/particle dimension mismatch");

    double r1_scalar = 0.0, r2_scalar = 0.0;
    std::vector<double> r1, r2;
    if (cfg.scalar_r_draws) {
        r1_scalar = rng.uniform01();
        r2_scalar = rng.uniform01();
    } else {
        r1.resize(dims);
        r2.resize(dims);
        for (double& v : r1) v = rng.uniform01();
        for (double& v : r2) v = rng.uniform01();
    }

    for (std::size_t d = 0; d < dims; ++d) {
        const double rc = cfg.scalar_r_draws ? r1_scalar : r1[d];
        const double rs = cfg.scalar_r_draws ? r2_scalar : r2[d];
        double v = w * p.velocity[d] + cfg.c1 * rc * (p.pbest_position[d] - p.position[d]) +
                   cfg.c2 * rs * (gbest[d] - p.position[d]);
        const double vb = shape.vel_bound[d];
        v = std::clamp(v, -vb, vb);
        p.velocity[d] = v;
        p.position[d] = std::clamp(p.position[d] + v, shape.lower[d], shape.upper[d]);
    }
}

namespace {

int effective_archive_size(const PsoConfig& cfg, Mode mode) {
    return mode == Mode::baseline ? 1 : std::max(1, cfg.archive_size);
}

void track_best(SwarmState& state, const RoutePlan& plan, const CostWeights& weights) {
    if (state.best_plan.routes.empty() ||
        compare_lexicographic(plan, state.best_plan) < 0) {
        state.best_plan = plan;
        state.best_cost = scalar_cost(plan, weights);
        state.best_fitness = fitness_of(state.best_cost);
    }
}

}  // namespace

SwarmState init_state(const Instance& inst, const EncodingShape& shape,
                      const PsoConfig& cfg, Mode mode) {
    const int m = cfg.n_particles;
    if (m < 1)
        throw std::invalid_argument("particle count must be at least 1");
    const CostWeights weights = cfg.weights();

    SwarmState state{
        .particles = {},
        .archive = GBestArchive(effective_archive_size(cfg, mode),
                                cfg.archive_insert_shift),
        .iteration = 0,
        .rng = Rng(cfg.seed),
        .best_plan = {},
        .best_cost = 0.0,
        .best_fitness = 0.0,
    };

    const std::size_t dims = static_cast<std::size_t>(shape.dims());
    state.particles.resize(static_cast<std::size_t>(m));
    for (Particle& p : state.particles) {
        p.position.resize(dims);
        for (std::size_t d = 0; d < dims; ++d)
            p.position[d] = state.rng.uniform(shape.lower[d], shape.upper[d]);
        p.velocity.assign(dims, 0.0);

        DecodeResult decoded = decode(inst, p.position, shape, weights);
        p.fitness = decoded.fitness;
        p.pbest_position = p.position;
        p.pbest_fitness = p.fitness;
        track_best(state, decoded.plan, weights);
    }

    // Seed the archive with the top-L distinct-fitness particles.
    std::vector<const Particle*> ranked;
    ranked.reserve(state.particles.size());
    for (const Particle& p : state.particles) ranked.push_back(&p);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Particle* a, const Particle* b) {
                         return a->fitness > b->fitness;
                     });
    std::vector<ArchiveEntry> seeds;
    for (const Particle* p : ranked) {
        if (static_cast<int>(seeds.size()) == state.archive.capacity()) break;
        if (!seeds.empty() && seeds.back().fitness == p->fitness) continue;
        seeds.push_back({p->position, p->fitness});
    }
    state.archive = GBestArchive(state.archive.capacity(), cfg.archive_insert_shift);
    for (auto it = seeds.rbegin(); it != seeds.rend(); ++it)
        state.archive.offer(it->position, it->fitness);

    return state;
}

void step(SwarmState& state, const Instance& inst, const EncodingShape& shape,
          const PsoConfig& cfg) {
    const double w = inertia(state.iteration, cfg);
    const CostWeights weights = cfg.weights();

    for (Particle& p : state.particles) {
        const double xi = state.rng.uniform01();
        const std::vector<double> gbest = state.archive.sample(xi).position;
        update_particle(p, gbest, w, shape, cfg, state.rng);

        DecodeResult decoded = decode(inst, p.position, shape, weights);
        p.fitness = decoded.fitness;
        if (p.fitness > p.pbest_fitness) {
            p.pbest_position = p.position;
            p.pbest_fitness = p.fitness;
        }
        track_best(state, decoded.plan, weights);
        state.archive.offer(p.position, p.fitness);
    }
    ++state.iteration;
}

RunResult run(const Instance& inst, const PsoConfig& cfg, Mode mode) {
    const int fleet = cfg.fleet_bound > 0 ? cfg.fleet_bound : inst.declared_fleet();
    const EncodingShape shape = make_shape(inst, fleet, cfg.k_vmax);

    SwarmState state = init_state(inst, shape, cfg, mode);
    const auto t0 = std::chrono::steady_clock::now();
    for (int t = 0; t < cfg.max_iterations; ++t) step(state, inst, shape, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    RunResult result;
    result.instance = inst.name();
    result.mode = mode;
    result.archive_size = effective_archive_size(cfg, mode);
    result.seed = cfg.seed;
    result.best_plan = std::move(state.best_plan);
    result.best_cost = state.best_cost;
    result.best_fitness = state.best_fitness;
    result.iterations = cfg.max_iterations;
    result.wall_clock = std::chrono::duration<double>(t1 - t0).count();
    return result;
}

int converged_particle_count(const SwarmState& state) {
    if (state.archive.size() == 0) return 0;
    const std::vector<double>& head = state.archive.head().position;
    int count = 0;
    for (const Particle& p : state.particles)
        if (p.pbest_position == head) ++count;
    return count;
}

std::string run_result_json(const RunResult& result) {
    nlohmann::json j;
    j["instance"] = result.instance;
    j["mode"] = mode_name(result.mode);
    j["L"] = result.archive_size;
    j["seed"] = result.seed;
    j["nv"] = result.best_plan.nv;
    j["td"] = result.best_plan.td;
    j["cost"] = result.best_cost;
    j["iterations"] = result.iterations;
    j["wall_clock"] = result.wall_clock;
    return j.dump(2);
}

}  // namespace rwpso
