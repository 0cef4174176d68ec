#include "csopt/cuckoo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace csopt {

StopDecision stopping_rule(const std::vector<std::pair<long long, double>>& trace,
                           std::optional<double> f_star, double success_gap,
                           const StopSpec& spec) {
    const long long evals = trace.back().first;
    const double best = trace.back().second;
    if (f_star.has_value() && std::fabs(best - *f_star) <= success_gap) {
        return StopDecision::success;
    }
    if (evals >= spec.max_evaluations) return StopDecision::budget;
    if (!f_star.has_value() && spec.stall_window > 0) {
        const long long cutoff = evals - spec.stall_window;
        if (trace.front().first <= cutoff) {
            // last entry at or before the window start
            auto it = std::upper_bound(trace.begin(), trace.end(), cutoff,
                                       [](long long v, const auto& e) { return v < e.first; });
            const double then = std::prev(it)->second;
            if (then - best < spec.stall_tolerance) return StopDecision::stall;
        }
    }
    return StopDecision::keep_going;
}

NestPopulation initialise_population(const Problem& p, int n, RngState& rng,
                                     EvalCounter& counter) {
    NestPopulation pop;
    pop.n = n;
    pop.dim = p.dim;
    pop.nests.resize(static_cast<size_t>(n) * p.dim);
    pop.fitness.resize(n);
    pop.raw.resize(n);
    for (int i = 0; i < n; ++i) {
        double* x = pop.nest(i);
        for (int j = 0; j < p.dim; ++j) x[j] = uniform(rng, p.lower[j], p.upper[j]);
        pop.fitness[i] = evaluate_fitness(p, x, rng, counter, &pop.raw[i]);
        if (pop.fitness[i] < pop.fitness[pop.best_index]) pop.best_index = i;
    }
    return pop;
}

void levy_flight_move(const double* nest_i, const double* best, const Problem& p,
                      const CsConfig& cfg, RngState& rng, double* out) {
    const int d = p.dim;
    levy_step(rng, cfg.levy, d, out);
    if (cfg.raw_levy) {
        for (int j = 0; j < d; ++j) out[j] = nest_i[j] + cfg.alpha0 * out[j];
    } else {
        for (int j = 0; j < d; ++j) {
            out[j] = nest_i[j] + cfg.alpha0 * out[j] * (nest_i[j] - best[j]) * gaussian(rng);
        }
    }
    clamp_to_bounds(p, out);
}

void propose_and_replace(NestPopulation& pop, const Problem& p, const CsConfig& cfg,
                         RngState& rng, EvalCounter& counter) {
    const int i = uniform_index(rng, pop.n);
    std::vector<double> cand(p.dim);
    levy_flight_move(pop.nest(i), pop.nest(pop.best_index), p, cfg, rng, cand.data());
    double raw;
    const double fc = evaluate_fitness(p, cand.data(), rng, counter, &raw);
    const int j = uniform_index(rng, pop.n);
    if (fc < pop.fitness[j]) {
        std::memcpy(pop.nest(j), cand.data(), sizeof(double) * p.dim);
        pop.fitness[j] = fc;
        pop.raw[j] = raw;
        if (fc < pop.fitness[pop.best_index]) pop.best_index = j;
    }
}

void abandon_worst(NestPopulation& pop, const Problem& p, const CsConfig& cfg,
                   RngState& rng, EvalCounter& counter) {
    const int n = pop.n;
    const int d = p.dim;
    std::vector<int> p1 = random_permutation(rng, n);
    std::vector<int> p2 = random_permutation(rng, n);
    // pairing differences taken against the pre-walk population
    std::vector<double> before = pop.nests;
    std::vector<double> cand(d);
    for (int k = 0; k < n; ++k) {
        if (counter.exhausted()) break;
        if (k == pop.best_index) continue;  // elitism
        if (u01(rng) >= cfg.pa) continue;
        if (cfg.abandon_mode == AbandonMode::fresh_uniform) {
            for (int j = 0; j < d; ++j) cand[j] = uniform(rng, p.lower[j], p.upper[j]);
        } else {
            const double r = u01(rng);
            const double* a = before.data() + static_cast<size_t>(p1[k]) * d;
            const double* b = before.data() + static_cast<size_t>(p2[k]) * d;
            const double* xk = pop.nest(k);
            for (int j = 0; j < d; ++j) cand[j] = xk[j] + r * (a[j] - b[j]);
            clamp_to_bounds(p, cand.data());
        }
        double raw;
        const double fc = evaluate_fitness(p, cand.data(), rng, counter, &raw);
        if (fc < pop.fitness[k]) {
            std::memcpy(pop.nest(k), cand.data(), sizeof(double) * d);
            pop.fitness[k] = fc;
            pop.raw[k] = raw;
            if (fc < pop.fitness[pop.best_index]) pop.best_index = k;
        }
    }
}

namespace {

struct RecordBuilder {
    RunRecord rec;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void finish(const Problem& p, const NestPopulation& pop, const std::vector<double>& raw,
                EvalCounter& counter, StopDecision why) {
        rec.evaluations = counter.count;
        rec.generations = pop.generation;
        rec.best_x.assign(pop.nest(pop.best_index), pop.nest(pop.best_index) + p.dim);
        rec.best_penalized = pop.fitness[pop.best_index];
        rec.best_raw = raw[pop.best_index];
        rec.stop = why == StopDecision::success  ? StopReason::success
                   : why == StopDecision::stall ? StopReason::stall
                                                : StopReason::budget;
        rec.success = why == StopDecision::success;
        rec.wall_clock_sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// The published loop verbatim: one Levy cuckoo against a random nest, then
// pa-gated abandonment, fixed population size.
RunRecord cs_classic(const Problem& p, const CsConfig& cfg, RngState& rng) {
    RecordBuilder out;
    EvalCounter counter;
    NestPopulation pop = initialise_population(p, cfg.n, rng, counter);
    out.rec.breakdown.init = counter.count;
    counter.limit = cfg.max_evaluations;

    // online success needs a trustworthy per-evaluation value, so it is off
    // for noisy objectives; those run to the budget and are judged afterwards
    const bool online_success = p.f_star_known && !p.stochastic;
    const std::optional<double> fs =
        online_success ? std::optional<double>(p.f_star) : std::nullopt;
    StopSpec ss{cfg.max_evaluations, cfg.stall_window, cfg.stall_tolerance};
    if (p.stochastic) ss.stall_window = cfg.max_evaluations + 1;
    const double gap = success_gap(p);

    out.rec.trace.emplace_back(counter.count, pop.fitness[pop.best_index]);
    StopDecision why;
    while ((why = stopping_rule(out.rec.trace, fs, gap, ss)) == StopDecision::keep_going) {
        const long long before_moves = counter.count;
        propose_and_replace(pop, p, cfg, rng, counter);
        abandon_worst(pop, p, cfg, rng, counter);
        out.rec.breakdown.moves += counter.count - before_moves;
        pop.generation += 1;
        out.rec.trace.emplace_back(counter.count, pop.fitness[pop.best_index]);
    }
    out.finish(p, pop, pop.raw, counter, why);
    return out.rec;
}

// Default profile. Same skeleton as the classic loop with the measured
// strengtheners: self-adaptive per-nest crossover masks on the difference
// walk, linear population decay, step extrapolation on new incumbents, and
// collapse-triggered coordinate search plus fresh re-seeding.
struct EnhancedRun {
    const Problem& p;
    const CsConfig& cfg;
    RngState& rng;
    EvalCounter counter;
    RecordBuilder out;

    int d;
    int n;
    std::vector<double> X;    // n x d
    std::vector<double> F;    // penalized
    std::vector<double> Raw;  // raw objective from the same evaluation
    std::vector<double> CR;
    int best = 0;
    long long gen = 0;
    long long last_polish = 0, last_flip = 0;
    long long polish_cadence = 0;   // set from cfg at start, then self-adjusts
    bool polish_paying = true;      // material gain last sweep; gates the probe channels
    double f_sweep_end = 0.0;       // incumbent fitness when the last sweep finished
    long long evals_sweep_end = 0;
    double f_mark = 0.0;            // incumbent at the last material improvement
    long long evals_mark = 0;
    long long intensify_start = -1;  // evals when the optional engines unlocked
    long long spec_spent = 0;        // speculative evals since the last material hit

    // optional-engine spend is capped at a sixth of the evals seen since
    // the engines unlocked; any material improvement of the incumbent, from
    // any engine including the walk, resets the meter, so speculation is
    // cheap while the run progresses and rationed once it truly stalls
    bool spec_open() const {
        return spec_spent * 6 < counter.count - intensify_start + 1;
    }

    // charge helper: run op and bill its cost to the meter
    template <typename Op>
    void charged(Op&& op) {
        const long long c0 = counter.count;
        op();
        spec_spent += counter.count - c0;
    }

    std::vector<double> cand, scratch, diffs;
    std::vector<int> perm1, perm2, permd;
    std::vector<double> med_buf;
    std::vector<double> probe_phase;  // per-coordinate low-discrepancy cursor for the probes
    std::vector<double> dirset;       // d x d polish directions, conjugacy built up per sweep

    void reset_directions() {
        dirset.assign(static_cast<size_t>(d) * d, 0.0);
        for (int j = 0; j < d; ++j) dirset[static_cast<size_t>(j) * d + j] = 1.0;
    }

    EnhancedRun(const Problem& prob, const CsConfig& c, RngState& r)
        : p(prob), cfg(c), rng(r), d(prob.dim), n(c.n) {}

    double* nest(int i) { return X.data() + static_cast<size_t>(i) * d; }

    bool budget_left() const { return !counter.exhausted(); }

    double eval(const double* x, long long& bucket, double* raw_out) {
        const long long before = counter.count;
        const double f = evaluate_fitness(p, x, rng, counter, raw_out);
        bucket += counter.count - before;
        return f;
    }

    void rescan_best() {
        best = static_cast<int>(std::min_element(F.begin(), F.begin() + n) - F.begin());
    }

    // doubles the accepted step while it keeps improving
    void extrapolate(const double* x_from, double* x_acc, double& f_acc, double& raw_acc,
                     long long& bucket) {
        scratch.resize(d);
        std::vector<double> step(d);
        for (int j = 0; j < d; ++j) step[j] = x_acc[j] - x_from[j];
        for (int round = 0; round < 8 && budget_left(); ++round) {
            for (int j = 0; j < d; ++j) scratch[j] = x_acc[j] + step[j];
            clamp_to_bounds(p, scratch.data());
            double raw;
            const double ft = eval(scratch.data(), bucket, &raw);
            if (ft < f_acc) {
                std::memcpy(x_acc, scratch.data(), sizeof(double) * d);
                f_acc = ft;
                raw_acc = raw;
                for (int j = 0; j < d; ++j) step[j] *= 2.0;
            } else {
                break;
            }
        }
    }

    // line search on coordinate j: growth phase with direction flips, then
    // a contracting bracket; mutates x/f/raw in place on improvement
    void coord_ls(double* x, double& f, double& raw, int j, double s0, long long& bucket) {
        double s = s0;
        double sign = 1.0;
        int fails = 0;
        scratch.assign(x, x + d);
        while (fails < 2 && budget_left()) {
            scratch[j] = std::clamp(x[j] + sign * s, p.lower[j], p.upper[j]);
            double rt;
            const double ft = eval(scratch.data(), bucket, &rt);
            if (ft < f) {
                x[j] = scratch[j];
                f = ft;
                raw = rt;
                s *= 1.6;
                fails = 0;
            } else {
                sign = -sign;
                fails += 1;
            }
        }
        int nofix = 0;
        for (int round = 0; round < 8 && budget_left() && nofix < 2; ++round) {
            s *= 0.35;
            bool improved = false;
            for (const double sg : {1.0, -1.0}) {
                scratch[j] = std::clamp(x[j] + sg * s, p.lower[j], p.upper[j]);
                double rt;
                const double ft = eval(scratch.data(), bucket, &rt);
                if (ft < f) {
                    x[j] = scratch[j];
                    f = ft;
                    raw = rt;
                    improved = true;
                    break;
                }
                if (!budget_left()) break;
            }
            nofix = improved ? 0 : nofix + 1;
            if (s < 1e-10 * (p.upper[j] - p.lower[j])) break;
        }
    }

    // same line search along an arbitrary direction; the whole vector is
    // clamped after each trial step
    void direction_ls(double* x, double& f, double& raw, const double* u, double s0,
                      long long& bucket) {
        double s = s0;
        double sign = 1.0;
        int fails = 0;
        scratch.resize(d);
        const auto trial = [&](double step) {
            for (int j = 0; j < d; ++j) scratch[j] = x[j] + step * u[j];
            clamp_to_bounds(p, scratch.data());
        };
        while (fails < 2 && budget_left()) {
            trial(sign * s);
            double rt;
            const double ft = eval(scratch.data(), bucket, &rt);
            if (ft < f) {
                std::memcpy(x, scratch.data(), sizeof(double) * d);
                f = ft;
                raw = rt;
                s *= 1.6;
                fails = 0;
            } else {
                sign = -sign;
                fails += 1;
            }
        }
        int nofix = 0;
        for (int round = 0; round < 8 && budget_left() && nofix < 2; ++round) {
            s *= 0.35;
            bool improved = false;
            for (const double sg : {1.0, -1.0}) {
                trial(sg * s);
                double rt;
                const double ft = eval(scratch.data(), bucket, &rt);
                if (ft < f) {
                    std::memcpy(x, scratch.data(), sizeof(double) * d);
                    f = ft;
                    raw = rt;
                    improved = true;
                    break;
                }
                if (!budget_left()) break;
            }
            nofix = improved ? 0 : nofix + 1;
            if (s < 1e-7 * s0) break;
        }
    }

    // fresh value on coordinate j of the incumbent, refined by the line
    // search, accepted only on strict improvement; placements follow a
    // golden-ratio stride so repeated probes of one coordinate fill the
    // interval instead of clustering the way independent draws would
    void coordinate_probe(int j, long long& bucket) {
        if (!budget_left()) return;
        cand.assign(nest(best), nest(best) + d);
        probe_phase[j] += 0.6180339887498949;
        probe_phase[j] -= std::floor(probe_phase[j]);
        cand[j] = p.lower[j] + probe_phase[j] * (p.upper[j] - p.lower[j]);
        double raw;
        double f = eval(cand.data(), bucket, &raw);
        coord_ls(cand.data(), f, raw, j, (p.upper[j] - p.lower[j]) / 40.0, bucket);
        if (f < F[best]) {
            std::memcpy(nest(best), cand.data(), sizeof(double) * d);
            F[best] = f;
            Raw[best] = raw;
        }
    }

    // heavy-tailed hop on one coordinate of the incumbent, then the same
    // descend-and-judge; the descent widens the acceptance window from the
    // floor of a neighbouring basin to the whole basin
    void kick_probe(int j, long long& bucket) {
        if (!budget_left()) return;
        cand.assign(nest(best), nest(best) + d);
        double step;
        levy_step(rng, cfg.levy, 1, &step);
        const double x_old = cand[j];
        cand[j] = std::clamp(cand[j] + cfg.alpha0 * (p.upper[j] - p.lower[j]) * step,
                             p.lower[j], p.upper[j]);
        double raw;
        double f = eval(cand.data(), bucket, &raw);
        // the hop length is the only available estimate of the local feature
        // size, so the descent starts one order below it
        const double hop = std::fabs(cand[j] - x_old);
        coord_ls(cand.data(), f, raw, j,
                 std::max(hop, 1e-6 * (p.upper[j] - p.lower[j])) / 10.0, bucket);
        if (f < F[best]) {
            std::memcpy(nest(best), cand.data(), sizeof(double) * d);
            F[best] = f;
            Raw[best] = raw;
        }
    }

    RunRecord run() {
        const int n0 = cfg.n;
        const int nmin = std::min(std::max(2, cfg.min_nests), n0);
        X.resize(static_cast<size_t>(n0) * d);
        F.resize(n0);
        Raw.resize(n0);
        CR.resize(n0);
        for (int i = 0; i < n0; ++i) {
            double* x = nest(i);
            for (int j = 0; j < d; ++j) x[j] = uniform(rng, p.lower[j], p.upper[j]);
            F[i] = eval(x, out.rec.breakdown.init, &Raw[i]);
            if (F[i] < F[best]) best = i;
        }
        counter.limit = cfg.max_evaluations;
        for (int i = 0; i < n0; ++i) CR[i] = u01(rng);
        probe_phase.resize(d);
        for (int j = 0; j < d; ++j) probe_phase[j] = u01(rng);
        polish_cadence = cfg.polish_period;
        reset_directions();
        f_sweep_end = F[best];
        evals_sweep_end = counter.count;
        f_mark = F[best];
        evals_mark = counter.count;

        const bool online_success = p.f_star_known && !p.stochastic;
        const std::optional<double> fs =
            online_success ? std::optional<double>(p.f_star) : std::nullopt;
        StopSpec ss{cfg.max_evaluations, cfg.stall_window, cfg.stall_tolerance};
        if (p.stochastic) ss.stall_window = cfg.max_evaluations + 1;
        const double gap = success_gap(p);

        out.rec.trace.emplace_back(counter.count, F[best]);
        StopDecision why;
        while ((why = stopping_rule(out.rec.trace, fs, gap, ss)) == StopDecision::keep_going) {
            step_generation(n0, nmin);
            out.rec.trace.emplace_back(counter.count, F[best]);
        }

        NestPopulation pop;
        pop.n = n;
        pop.dim = d;
        pop.nests.assign(X.begin(), X.begin() + static_cast<size_t>(n) * d);
        pop.fitness.assign(F.begin(), F.begin() + n);
        pop.best_index = best;
        pop.generation = gen;
        out.finish(p, pop, Raw, counter, why);
        return out.rec;
    }

    void step_generation(int n0, int nmin) {
        // linear population decay, worst nest dropped first
        const int ntgt = std::max(
            nmin, static_cast<int>(std::lround(
                      n0 + (nmin - n0) * static_cast<double>(counter.count) /
                               static_cast<double>(cfg.max_evaluations))));
        while (n > ntgt) {
            const int w =
                static_cast<int>(std::max_element(F.begin(), F.begin() + n) - F.begin());
            if (w == best) break;
            const int last = n - 1;
            if (w != last) {
                std::memcpy(nest(w), nest(last), sizeof(double) * d);
                F[w] = F[last];
                Raw[w] = Raw[last];
                CR[w] = CR[last];
                if (best == last) best = w;
            }
            n -= 1;
        }

        // one Levy cuckoo, judged against its own nest
        const int i = uniform_index(rng, n);
        cand.resize(d);
        levy_flight_move(nest(i), nest(best), p, cfg, rng, cand.data());
        double raw;
        double fc = eval(cand.data(), out.rec.breakdown.moves, &raw);
        if (fc < F[i]) {
            if (fc < F[best]) {
                extrapolate(nest(i), cand.data(), fc, raw, out.rec.breakdown.local);
            }
            std::memcpy(nest(i), cand.data(), sizeof(double) * d);
            F[i] = fc;
            Raw[i] = raw;
            if (fc < F[best]) best = i;
        }

        // difference walk over every non-best nest; the crossover rate per
        // nest self-adapts (kept on acceptance, resampled at rate 0.1)
        const double r = u01(rng);
        random_permutation(rng, n, perm1);
        random_permutation(rng, n, perm2);
        diffs.resize(static_cast<size_t>(n) * d);
        for (int k = 0; k < n; ++k) {
            const double* a = nest(perm1[k]);
            const double* b = nest(perm2[k]);
            double* dk = diffs.data() + static_cast<size_t>(k) * d;
            for (int j = 0; j < d; ++j) dk[j] = a[j] - b[j];
        }
        for (int k = 0; k < n; ++k) {
            if (k == best || !budget_left()) continue;
            const double cr = (u01(rng) < 0.1) ? u01(rng) : CR[k];
            cand.assign(nest(k), nest(k) + d);
            const double* dk = diffs.data() + static_cast<size_t>(k) * d;
            bool any = false;
            for (int j = 0; j < d; ++j) {
                if (u01(rng) < cr) {
                    cand[j] += r * dk[j];
                    any = true;
                }
            }
            if (!any) {
                const int j = uniform_index(rng, d);
                cand[j] += r * dk[j];
            }
            clamp_to_bounds(p, cand.data());
            double rk;
            double fk = eval(cand.data(), out.rec.breakdown.moves, &rk);
            if (fk < F[k]) {
                if (fk < F[best]) {
                    extrapolate(nest(k), cand.data(), fk, rk, out.rec.breakdown.local);
                }
                std::memcpy(nest(k), cand.data(), sizeof(double) * d);
                F[k] = fk;
                Raw[k] = rk;
                CR[k] = cr;
            }
        }
        rescan_best();
        gen += 1;

        // periodic honest re-draw of the noisy fitness cache; without it a
        // lucky draw can pin the incumbent to a phantom value
        if (p.stochastic && cfg.noise_refresh_generations > 0 &&
            gen % cfg.noise_refresh_generations == 0 && budget_left()) {
            for (int k = 0; k < n && budget_left(); ++k) {
                F[k] = eval(nest(k), out.rec.breakdown.refresh, &Raw[k]);
            }
            rescan_best();
        }

        // intensification once the population has collapsed onto the
        // incumbent's fitness level (spread-based detectors miss this state)
        // or once a quarter of the budget is gone: a walk that is still
        // spread out by then needs the polish engine more than more walking
        med_buf.assign(F.begin(), F.begin() + n);
        std::sort(med_buf.begin(), med_buf.end());
        const double med = n % 2 == 1 ? med_buf[n / 2]
                                      : 0.5 * (med_buf[n / 2 - 1] + med_buf[n / 2]);
        const bool collapsed = (med - F[best]) < 1e-3 * (1.0 + std::fabs(F[best]));
        if (F[best] < f_mark - 1e-6 * (1.0 + std::fabs(f_mark))) {
            f_mark = F[best];
            evals_mark = counter.count;
            spec_spent = 0;
        }
        // a population can hover near a trap without ever collapsing by the
        // spread test; prolonged lack of material progress is treated the
        // same way
        const bool desperate = counter.count - evals_mark > 2 * cfg.polish_period;
        if (!collapsed && !desperate && counter.count * 8 < cfg.max_evaluations) return;
        if (intensify_start < 0) intensify_start = counter.count;

        // the diversity restorers stay tied to actual collapse or proven
        // stagnation; before that the worst nest still carries useful walk
        // material
        // the worst-nest redraw stays tied to actual collapse: under mere
        // stagnation the worst nest of a still-spread population is walk
        // material, not dead weight
        const int w = static_cast<int>(std::max_element(F.begin(), F.begin() + n) - F.begin());
        if (spec_open() && collapsed && w != best && n > 2 && budget_left()) {
            charged([&] {
                double* xw = nest(w);
                for (int j = 0; j < d; ++j) xw[j] = uniform(rng, p.lower[j], p.upper[j]);
                F[w] = eval(xw, out.rec.breakdown.reinit, &Raw[w]);
                rescan_best();
            });
        }
        // heavy-tailed kick judged against the incumbent directly: median
        // displacement is alpha0 of the box, the tail reaches across it, so
        // one draw serves both well-hopping and long-range restarts
        if (spec_open() && (collapsed || desperate) && budget_left()) {
            charged([&] {
                scratch.resize(d);
                levy_step(rng, cfg.levy, d, scratch.data());
                cand.assign(nest(best), nest(best) + d);
                // sparse mask: hopping one or two coordinates leaves the rest
                // of an already-good point intact, which a full-vector jitter
                // cannot
                bool any = false;
                for (int j = 0; j < d; ++j) {
                    if (u01(rng) < 1.5 / d) {
                        cand[j] += cfg.alpha0 * (p.upper[j] - p.lower[j]) * scratch[j];
                        any = true;
                    }
                }
                if (!any) {
                    const int j = uniform_index(rng, d);
                    cand[j] += cfg.alpha0 * (p.upper[j] - p.lower[j]) * scratch[j];
                }
                clamp_to_bounds(p, cand.data());
                double rk;
                const double fk = eval(cand.data(), out.rec.breakdown.reinit, &rk);
                if (fk < F[best]) {
                    std::memcpy(nest(best), cand.data(), sizeof(double) * d);
                    F[best] = fk;
                    Raw[best] = rk;
                }
            });
        }
        if (spec_open() && counter.count - last_polish > polish_cadence) {
            last_polish = counter.count;
            const double f0 = F[best];
            // everything since the previous sweep (walk, kicks, probes) is
            // the competing engine; its per-evaluation payoff is the yard-
            // stick the sweep has to beat to earn a faster cadence
            const double walk_rate =
                (f_sweep_end - f0) /
                static_cast<double>(std::max<long long>(1, counter.count - evals_sweep_end));
            const long long sweep_start = counter.count;
            std::vector<double> x0(nest(best), nest(best) + d);
            double max_gain = 0.0;
            int max_k = -1;
            for (int k = 0; k < d && budget_left(); ++k) {
                const double* u = dirset.data() + static_cast<size_t>(k) * d;
                double s0 = 0.0;
                for (int j = 0; j < d; ++j) s0 += std::fabs(u[j]) * (p.upper[j] - p.lower[j]);
                s0 /= 1000.0;
                const double fb = F[best];
                direction_ls(nest(best), F[best], Raw[best], u, s0,
                             out.rec.breakdown.local);
                if (fb - F[best] > max_gain) {
                    max_gain = fb - F[best];
                    max_k = k;
                }
            }
            // pattern move: the sweep's net displacement is a descent
            // direction worth riding past the last accepted point, and it
            // then replaces the sweep's best-earning direction so later
            // sweeps minimise along the valley instead of across it
            if (F[best] < f0) {
                extrapolate(x0.data(), nest(best), F[best], Raw[best],
                            out.rec.breakdown.local);
                double norm = 0.0;
                for (int j = 0; j < d; ++j) {
                    const double dj = nest(best)[j] - x0[j];
                    norm += dj * dj;
                }
                norm = std::sqrt(norm);
                if (max_k >= 0 && norm > 0.0) {
                    double* row = dirset.data() + static_cast<size_t>(max_k) * d;
                    for (int j = 0; j < d; ++j) row[j] = (nest(best)[j] - x0[j]) / norm;
                }
            }
            const double polish_gain = f0 - F[best];
            // a gain is only material when it moves the incumbent at its own
            // scale; micro-trickle on a stuck run must not hog the budget
            polish_paying = polish_gain > 1e-6 * (1.0 + std::fabs(F[best]));
            // a stalled direction set has spent its conjugacy; start the next
            // cycle from axes, which is also what the probes assume
            if (!polish_paying) reset_directions();
            const double polish_rate =
                polish_gain /
                static_cast<double>(std::max<long long>(1, counter.count - sweep_start));
            // sweeps that out-earn the walk run more often, the rest back
            // off so the better engine keeps the budget
            polish_cadence = (polish_paying && polish_rate >= walk_rate)
                                 ? std::max(cfg.polish_period / 8, polish_cadence / 2)
                                 : std::min(cfg.polish_period * 2, polish_cadence * 2);
            spec_spent += counter.count - sweep_start;
            f_sweep_end = F[best];
            evals_sweep_end = counter.count;
        }
        // fresh cross-section probes are a last resort: only once the polish
        // sweeps have stalled and backed off fully
        if (spec_open() && !polish_paying && polish_cadence >= cfg.polish_period * 2 &&
            counter.count - last_flip > cfg.flip_period) {
            last_flip = counter.count;
            charged([&] {
                random_permutation(rng, d, permd);
                for (const int j : permd) {
                    if (!budget_left()) break;
                    coordinate_probe(j, out.rec.breakdown.local);
                    coordinate_probe(j, out.rec.breakdown.local);
                    coordinate_probe(j, out.rec.breakdown.local);
                }
            });
        }
        if (spec_open() && !polish_paying && u01(rng) < cfg.probe_rate) {
            charged([&] {
                if (u01(rng) < 0.5) {
                    coordinate_probe(uniform_index(rng, d), out.rec.breakdown.local);
                } else {
                    kick_probe(uniform_index(rng, d), out.rec.breakdown.local);
                }
            });
        }
    }
};

}  // namespace

RunRecord cs_minimise(const Problem& p, const CsConfig& cfg, RngState& rng) {
    if (cfg.n < 2) throw std::invalid_argument("cs: n must be >= 2");
    if (cfg.pa < 0.0 || cfg.pa > 1.0) throw std::invalid_argument("cs: pa must be in [0, 1]");
    if (cfg.alpha0 <= 0.0) throw std::invalid_argument("cs: alpha0 must be positive");
    if (cfg.profile == CsProfile::classic) return cs_classic(p, cfg, rng);
    EnhancedRun run(p, cfg, rng);
    return run.run();
}

}  // namespace csopt
