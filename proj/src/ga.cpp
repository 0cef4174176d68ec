#include "csopt/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace csopt {

namespace {

int tournament_pick(const std::vector<double>& f, int n, int rounds, RngState& rng) {
    int winner = uniform_index(rng, n);
    for (int t = 1; t < rounds; ++t) {
        const int c = uniform_index(rng, n);
        if (f[c] < f[winner]) winner = c;
    }
    return winner;
}

}  // namespace

RunRecord ga_minimise(const Problem& p, const GaConfig& cfg, RngState& rng) {
    if (cfg.population < 4 || cfg.population % 2 != 0) {
        throw std::invalid_argument("ga: population must be >= 4 and even");
    }
    if (cfg.tournament < 1) throw std::invalid_argument("ga: tournament must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    const int n = cfg.population;
    const int d = p.dim;
    const double pm = cfg.mutation_rate < 0.0 ? 1.0 / d : cfg.mutation_rate;
    EvalCounter counter;
    RunRecord rec;

    std::vector<double> X(static_cast<size_t>(n) * d);
    std::vector<double> F(n);
    std::vector<double> Raw(n);
    std::vector<double> sigma(d);
    for (int j = 0; j < d; ++j) sigma[j] = cfg.mutation_scale * (p.upper[j] - p.lower[j]);

    auto xi = [&](std::vector<double>& pop, int i) {
        return pop.data() + static_cast<size_t>(i) * d;
    };

    int best = 0;
    for (int i = 0; i < n; ++i) {
        double* x = xi(X, i);
        for (int j = 0; j < d; ++j) x[j] = uniform(rng, p.lower[j], p.upper[j]);
        F[i] = evaluate_fitness(p, x, rng, counter, &Raw[i]);
        if (F[i] < F[best]) best = i;
    }
    rec.breakdown.init = counter.count;
    counter.limit = cfg.max_evaluations;

    const bool online_success = p.f_star_known && !p.stochastic;
    const std::optional<double> fs =
        online_success ? std::optional<double>(p.f_star) : std::nullopt;
    StopSpec ss{cfg.max_evaluations, cfg.stall_window, cfg.stall_tolerance};
    if (p.stochastic) ss.stall_window = cfg.max_evaluations + 1;
    const double gap = success_gap(p);

    std::vector<double> nextX(static_cast<size_t>(n) * d);
    std::vector<double> nextF(n), nextRaw(n);
    std::vector<double> c1(d), c2(d);

    rec.trace.emplace_back(counter.count, F[best]);
    StopDecision why;
    while ((why = stopping_rule(rec.trace, fs, gap, ss)) == StopDecision::keep_going) {
        // elite carried unchanged with its cached fitness
        std::memcpy(xi(nextX, 0), xi(X, best), sizeof(double) * d);
        nextF[0] = F[best];
        nextRaw[0] = Raw[best];
        int filled = 1;
        while (filled < n && !counter.exhausted()) {
            const int a = tournament_pick(F, n, cfg.tournament, rng);
            const int b = tournament_pick(F, n, cfg.tournament, rng);
            const double* pa = xi(X, a);
            const double* pb = xi(X, b);
            if (u01(rng) < cfg.crossover_rate) {
                for (int j = 0; j < d; ++j) {
                    const double lo = std::min(pa[j], pb[j]);
                    const double hi = std::max(pa[j], pb[j]);
                    const double ext = cfg.blend_alpha * (hi - lo);
                    c1[j] = uniform(rng, lo - ext, hi + ext);
                    c2[j] = uniform(rng, lo - ext, hi + ext);
                }
            } else {
                std::copy(pa, pa + d, c1.begin());
                std::copy(pb, pb + d, c2.begin());
            }
            for (auto* child : {&c1, &c2}) {
                if (filled >= n || counter.exhausted()) break;
                double* x = xi(nextX, filled);
                for (int j = 0; j < d; ++j) {
                    double g = (*child)[j];
                    if (u01(rng) < pm) g += sigma[j] * gaussian(rng);
                    x[j] = std::clamp(g, p.lower[j], p.upper[j]);
                }
                const long long before = counter.count;
                nextF[filled] = evaluate_fitness(p, x, rng, counter, &nextRaw[filled]);
                rec.breakdown.moves += counter.count - before;
                filled += 1;
            }
        }
        // budget spent mid-fill: carry the rest of the old population over
        for (; filled < n; ++filled) {
            std::memcpy(xi(nextX, filled), xi(X, filled), sizeof(double) * d);
            nextF[filled] = F[filled];
            nextRaw[filled] = Raw[filled];
        }
        X.swap(nextX);
        F.swap(nextF);
        Raw.swap(nextRaw);
        best = static_cast<int>(std::min_element(F.begin(), F.end()) - F.begin());
        rec.generations += 1;
        rec.trace.emplace_back(counter.count, F[best]);
    }

    rec.evaluations = counter.count;
    rec.best_x.assign(xi(X, best), xi(X, best) + d);
    rec.best_penalized = F[best];
    rec.best_raw = Raw[best];
    rec.stop = why == StopDecision::success  ? StopReason::success
               : why == StopDecision::stall ? StopReason::stall
                                            : StopReason::budget;
    rec.success = why == StopDecision::success;
    rec.wall_clock_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

}  // namespace csopt
