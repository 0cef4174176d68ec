#pragma once

#include "csopt/problem.hpp"
#include "csopt/rng.hpp"
#include "csopt/run.hpp"

namespace csopt {

// Textbook global-best PSO. The inertia weight decreases linearly from
// w_start to w_end over the evaluation budget.
struct PsoConfig {
    int swarm = 20;  // >= 2
    double w_start = 0.9;
    double w_end = 0.4;
    double c1 = 2.0;  // cognitive, >= 0
    double c2 = 2.0;  // social, >= 0
    double vclamp_fraction = 0.5;  // velocity limit as a fraction of the box width

    long long max_evaluations = 100000;
    long long stall_window = 500;
    double stall_tolerance = 1e-5;
};

// Generational real-coded GA: tournament selection, blend crossover,
// per-gene Gaussian mutation, one elite carried unchanged.
struct GaConfig {
    int population = 40;  // >= 4 and even
    int tournament = 2;
    double blend_alpha = 0.5;
    double crossover_rate = 0.9;
    double mutation_rate = -1.0;  // per-gene probability; negative selects 1/dim
    double mutation_scale = 0.1;  // Gaussian sigma as a fraction of the box width

    long long max_evaluations = 100000;
    long long stall_window = 500;
    double stall_tolerance = 1e-5;
};

// Both optimizers share the stopping machinery of cs_minimise: success is
// only checked online for deterministic problems with a known optimum,
// stall only when the optimum is unknown, and noisy problems run to the
// budget. Throws std::invalid_argument when a config invariant is violated.
RunRecord pso_minimise(const Problem& p, const PsoConfig& cfg, RngState& rng);
RunRecord ga_minimise(const Problem& p, const GaConfig& cfg, RngState& rng);

}  // namespace csopt
