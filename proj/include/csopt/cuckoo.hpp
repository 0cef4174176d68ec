#pragma once

#include "csopt/problem.hpp"
#include "csopt/rng.hpp"
#include "csopt/run.hpp"

namespace csopt {

// classic: the published scheme exactly, one Levy cuckoo against a random
//   nest plus pa-gated difference-walk abandonment, fixed population.
// enhanced: the default; same skeleton strengthened by per-component walk
//   masks with self-adapting crossover rates, population decay, step
//   extrapolation, and collapse-triggered coordinate search. Tuning lives
//   in the fields below; deviations from the published operators are
//   documented in the README.
enum class CsProfile { classic, enhanced };

enum class AbandonMode { difference_walk, fresh_uniform };

struct CsConfig {
    int n = 20;
    double pa = 0.25;
    double alpha0 = 0.01;
    LevyParams levy{};
    long long max_evaluations = 100000;
    long long stall_window = 500;
    double stall_tolerance = 1e-5;
    CsProfile profile = CsProfile::enhanced;
    AbandonMode abandon_mode = AbandonMode::difference_walk;
    // Unbiased global Levy step (the bare update rule, without the
    // best-relative bias); diverges on small boxes, kept for ablation.
    bool raw_levy = false;
    // enhanced-profile tuning
    int min_nests = 6;
    double probe_rate = 0.2;
    long long polish_period = 2000;
    long long flip_period = 2000;
    int noise_refresh_generations = 10;  // 0 disables the periodic refresh
};

struct NestPopulation {
    int n = 0;
    int dim = 0;
    std::vector<double> nests;    // n x dim, row-major
    std::vector<double> fitness;  // cached penalized values
    std::vector<double> raw;      // unpenalized objective from the same evaluations
    int best_index = 0;
    long long generation = 0;

    double* nest(int i) { return nests.data() + static_cast<size_t>(i) * dim; }
    const double* nest(int i) const { return nests.data() + static_cast<size_t>(i) * dim; }
};

NestPopulation initialise_population(const Problem& p, int n, RngState& rng,
                                     EvalCounter& counter);

// candidate = clamp(x_i + alpha0 * levy ⊙ (x_i - best) ⊙ gauss); the raw
// variant drops the bias term and uses alpha0 * levy directly.
void levy_flight_move(const double* nest_i, const double* best, const Problem& p,
                      const CsConfig& cfg, RngState& rng, double* out);

// One cuckoo from a random nest, replacing a random nest on strict
// improvement. Exactly one evaluation.
void propose_and_replace(NestPopulation& pop, const Problem& p, const CsConfig& cfg,
                         RngState& rng, EvalCounter& counter);

// Per non-best nest, with probability pa, a difference-walk (or fresh
// uniform) replacement under greedy acceptance.
void abandon_worst(NestPopulation& pop, const Problem& p, const CsConfig& cfg,
                   RngState& rng, EvalCounter& counter);

RunRecord cs_minimise(const Problem& p, const CsConfig& cfg, RngState& rng);

}  // namespace csopt
