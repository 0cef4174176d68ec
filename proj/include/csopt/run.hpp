#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace csopt {

enum class StopReason { success, budget, stall };

struct StopSpec {
    long long max_evaluations = 100000;
    long long stall_window = 500;
    double stall_tolerance = 1e-5;
};

// Evaluation count by source; the sum always equals the trial total.
struct EvalBreakdown {
    long long init = 0;       // initial population
    long long moves = 0;      // per-generation proposal moves
    long long local = 0;      // extrapolation, coordinate search, probes
    long long reinit = 0;     // fresh uniform replacements
    long long refresh = 0;    // stochastic fitness-cache refresh
    long long total() const { return init + moves + local + reinit + refresh; }
};

struct RunRecord {
    uint64_t seed = 0;
    long long evaluations = 0;
    std::vector<double> best_x;
    double best_raw = std::numeric_limits<double>::infinity();
    double best_penalized = std::numeric_limits<double>::infinity();
    bool success = false;
    StopReason stop = StopReason::budget;
    long long generations = 0;
    EvalBreakdown breakdown;
    // (evaluations so far, best penalized fitness), one entry per generation
    std::vector<std::pair<long long, double>> trace;
    double wall_clock_sec = 0.0;  // kept out of exports; see harness
};

enum class StopDecision { keep_going, success, stall, budget };

// Stopping per the experiment contract. Success applies only when f* is
// known (pass nullopt otherwise, and for objectives whose online value is
// noise); stall supplements it for unknown-f* problems. Priority:
// success > budget > stall.
StopDecision stopping_rule(const std::vector<std::pair<long long, double>>& trace,
                           std::optional<double> f_star, double success_gap,
                           const StopSpec& spec);

}  // namespace csopt
