#include "csopt/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace csopt {

RunRecord pso_minimise(const Problem& p, const PsoConfig& cfg, RngState& rng) {
    if (cfg.swarm < 2) throw std::invalid_argument("pso: swarm must be >= 2");
    if (cfg.c1 < 0.0 || cfg.c2 < 0.0) {
        throw std::invalid_argument("pso: c1 and c2 must be >= 0");
    }

    const auto t0 = std::chrono::steady_clock::now();
    const int n = cfg.swarm;
    const int d = p.dim;
    EvalCounter counter;
    RunRecord rec;

    std::vector<double> X(static_cast<size_t>(n) * d);
    std::vector<double> V(static_cast<size_t>(n) * d, 0.0);
    std::vector<double> Pb(static_cast<size_t>(n) * d);
    std::vector<double> Pf(n);
    std::vector<double> vmax(d);
    for (int j = 0; j < d; ++j) vmax[j] = cfg.vclamp_fraction * (p.upper[j] - p.lower[j]);

    int gbest = 0;
    double gbest_raw = 0.0;
    for (int i = 0; i < n; ++i) {
        double* x = X.data() + static_cast<size_t>(i) * d;
        for (int j = 0; j < d; ++j) x[j] = uniform(rng, p.lower[j], p.upper[j]);
        double raw;
        Pf[i] = evaluate_fitness(p, x, rng, counter, &raw);
        std::memcpy(Pb.data() + static_cast<size_t>(i) * d, x, sizeof(double) * d);
        if (Pf[i] < Pf[gbest]) gbest = i;
        if (i == gbest) gbest_raw = raw;
    }
    rec.breakdown.init = counter.count;
    counter.limit = cfg.max_evaluations;

    const bool online_success = p.f_star_known && !p.stochastic;
    const std::optional<double> fs =
        online_success ? std::optional<double>(p.f_star) : std::nullopt;
    StopSpec ss{cfg.max_evaluations, cfg.stall_window, cfg.stall_tolerance};
    if (p.stochastic) ss.stall_window = cfg.max_evaluations + 1;
    const double gap = success_gap(p);

    rec.trace.emplace_back(counter.count, Pf[gbest]);
    StopDecision why;
    while ((why = stopping_rule(rec.trace, fs, gap, ss)) == StopDecision::keep_going) {
        const double frac =
            std::min(1.0, static_cast<double>(counter.count) /
                              static_cast<double>(std::max<long long>(1, cfg.max_evaluations)));
        const double w = cfg.w_start + (cfg.w_end - cfg.w_start) * frac;
        long long moved = 0;
        for (int i = 0; i < n; ++i) {
            if (counter.exhausted()) break;
            moved += 1;
            double* x = X.data() + static_cast<size_t>(i) * d;
            double* v = V.data() + static_cast<size_t>(i) * d;
            const double* pb = Pb.data() + static_cast<size_t>(i) * d;
            const double* gb = Pb.data() + static_cast<size_t>(gbest) * d;
            for (int j = 0; j < d; ++j) {
                const double r1 = u01(rng);
                const double r2 = u01(rng);
                v[j] = w * v[j] + cfg.c1 * r1 * (pb[j] - x[j]) + cfg.c2 * r2 * (gb[j] - x[j]);
                v[j] = std::clamp(v[j], -vmax[j], vmax[j]);
                x[j] = std::clamp(x[j] + v[j], p.lower[j], p.upper[j]);
            }
            double raw;
            const double f = evaluate_fitness(p, x, rng, counter, &raw);
            if (f < Pf[i]) {
                Pf[i] = f;
                std::memcpy(Pb.data() + static_cast<size_t>(i) * d, x, sizeof(double) * d);
                if (f < Pf[gbest]) {
                    gbest = i;
                    gbest_raw = raw;
                }
            }
        }
        rec.breakdown.moves += moved;
        rec.generations += 1;
        rec.trace.emplace_back(counter.count, Pf[gbest]);
    }

    rec.evaluations = counter.count;
    rec.best_x.assign(Pb.data() + static_cast<size_t>(gbest) * d,
                      Pb.data() + static_cast<size_t>(gbest) * d + d);
    rec.best_penalized = Pf[gbest];
    rec.best_raw = gbest_raw;
    rec.stop = why == StopDecision::success  ? StopReason::success
               : why == StopDecision::stall ? StopReason::stall
                                            : StopReason::budget;
    rec.success = why == StopDecision::success;
    rec.wall_clock_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

}  // namespace csopt
