#include "csopt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "csopt/benchmarks.hpp"
#include "csopt/engineering.hpp"
#include "json.hpp"

namespace csopt {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

void close_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

const char* stop_name(StopReason r) {
    switch (r) {
        case StopReason::success: return "success";
        case StopReason::stall: return "stall";
        default: return "budget";
    }
}

// effective algorithm config as ordered key/value pairs, reused by the CSV
// metadata block and the JSON config echo
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentSpec& spec,
                                                             int dim) {
    std::vector<std::pair<std::string, std::string>> kv;
    auto add = [&](const std::string& k, const std::string& v) { kv.emplace_back(k, v); };
    if (spec.algorithm == "cs") {
        const CsConfig& c = spec.cs;
        add("n", std::to_string(c.n));
        add("pa", fmt17(c.pa));
        add("alpha0", fmt17(c.alpha0));
        add("beta", fmt17(c.levy.beta));
        add("profile", c.profile == CsProfile::classic ? "classic" : "enhanced");
        add("abandon_mode", c.abandon_mode == AbandonMode::fresh_uniform ? "fresh_uniform"
                                                                         : "difference_walk");
        add("raw_levy", c.raw_levy ? "1" : "0");
        add("min_nests", std::to_string(c.min_nests));
        add("probe_rate", fmt17(c.probe_rate));
        add("polish_period", std::to_string(c.polish_period));
        add("flip_period", std::to_string(c.flip_period));
        add("noise_refresh_generations", std::to_string(c.noise_refresh_generations));
    } else if (spec.algorithm == "pso") {
        const PsoConfig& c = spec.pso;
        add("swarm", std::to_string(c.swarm));
        add("w_start", fmt17(c.w_start));
        add("w_end", fmt17(c.w_end));
        add("c1", fmt17(c.c1));
        add("c2", fmt17(c.c2));
        add("vclamp_fraction", fmt17(c.vclamp_fraction));
    } else if (spec.algorithm == "ga") {
        const GaConfig& c = spec.ga;
        add("population", std::to_string(c.population));
        add("tournament", std::to_string(c.tournament));
        add("blend_alpha", fmt17(c.blend_alpha));
        add("crossover_rate", fmt17(c.crossover_rate));
        const double pm = c.mutation_rate < 0.0 ? 1.0 / dim : c.mutation_rate;
        add("mutation_rate", fmt17(pm));
        add("mutation_scale", fmt17(c.mutation_scale));
    }
    add("max_evaluations", std::to_string(spec.max_evaluations));
    add("success_tolerance", fmt17(spec.success_tolerance));
    add("stall_window", std::to_string(spec.stall_window));
    add("stall_tolerance", fmt17(spec.stall_tolerance));
    add("penalty_mu", fmt17(spec.penalty_mu));
    return kv;
}

size_t utf8_length(const std::string& s) {
    size_t n = 0;
    for (const char ch : s) {
        if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
    }
    return n;
}

}  // namespace

Problem make_problem(const std::string& name, int dim) {
    if (is_benchmark_name(name)) return make_benchmark(name, dim);
    if (is_engineering_name(name)) {
        Problem p = make_engineering(name);
        if (dim != 0 && dim != p.dim) {
            throw std::invalid_argument(name + " has a fixed dimension of " +
                                        std::to_string(p.dim));
        }
        return p;
    }
    throw std::invalid_argument("unknown problem: " + name);
}

bool is_algorithm_name(const std::string& name) {
    return name == "cs" || name == "pso" || name == "ga";
}

RunRecord run_single_trial(const Problem& p, const ExperimentSpec& spec, uint64_t seed) {
    RngState rng = new_rng(seed);
    RunRecord rec;
    if (spec.algorithm == "cs") {
        CsConfig c = spec.cs;
        c.max_evaluations = spec.max_evaluations;
        c.stall_window = spec.stall_window;
        c.stall_tolerance = spec.stall_tolerance;
        rec = cs_minimise(p, c, rng);
    } else if (spec.algorithm == "pso") {
        PsoConfig c = spec.pso;
        c.max_evaluations = spec.max_evaluations;
        c.stall_window = spec.stall_window;
        c.stall_tolerance = spec.stall_tolerance;
        rec = pso_minimise(p, c, rng);
    } else if (spec.algorithm == "ga") {
        GaConfig c = spec.ga;
        c.max_evaluations = spec.max_evaluations;
        c.stall_window = spec.stall_window;
        c.stall_tolerance = spec.stall_tolerance;
        rec = ga_minimise(p, c, rng);
    } else {
        throw std::invalid_argument("unknown algorithm: " + spec.algorithm);
    }
    rec.seed = seed;
    if (p.stochastic && p.f_star_known && !rec.best_x.empty()) {
        // noise-averaged judgement on a stream independent of the run
        RngState judge = split_rng(seed, 1);
        double sum = 0.0;
        for (int i = 0; i < 100; ++i) sum += p.objective(rec.best_x.data(), p.dim, judge);
        rec.success = std::fabs(sum / 100.0 - p.f_star) <= 10.0 * success_gap(p);
    }
    return rec;
}

AggregateStats aggregate(const ExperimentSpec& spec, int dim, std::vector<RunRecord> records) {
    AggregateStats st;
    st.spec = spec;
    st.dim = dim;
    st.records = std::move(records);
    std::vector<double> evals;
    for (const RunRecord& r : st.records) {
        if (r.success) evals.push_back(static_cast<double>(r.evaluations));
    }
    st.successes = static_cast<int>(evals.size());
    st.success_rate_percent =
        100.0 * st.successes / static_cast<double>(st.records.empty() ? 1 : st.records.size());
    if (st.successes == 0) {
        st.mean_evaluations = std::numeric_limits<double>::quiet_NaN();
        st.std_evaluations = std::numeric_limits<double>::quiet_NaN();
        st.median_evaluations = std::numeric_limits<double>::infinity();
        return st;
    }
    double sum = 0.0;
    for (const double e : evals) sum += e;
    st.mean_evaluations = sum / st.successes;
    double ss = 0.0;
    for (const double e : evals) ss += (e - st.mean_evaluations) * (e - st.mean_evaluations);
    st.std_evaluations = st.successes > 1 ? std::sqrt(ss / (st.successes - 1)) : 0.0;
    std::sort(evals.begin(), evals.end());
    const size_t m = evals.size() / 2;
    st.median_evaluations =
        evals.size() % 2 == 1 ? evals[m] : 0.5 * (evals[m - 1] + evals[m]);
    return st;
}

AggregateStats run_experiment(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (spec.max_evaluations < 1) throw std::invalid_argument("budget must be positive");
    if (!is_algorithm_name(spec.algorithm)) {
        throw std::invalid_argument("unknown algorithm: " + spec.algorithm);
    }
    Problem p = make_problem(spec.problem, spec.dim);
    p.success_tolerance = spec.success_tolerance;
    if (spec.penalty_mu > 0.0) p.penalty_mu = spec.penalty_mu;
    std::vector<RunRecord> records;
    records.reserve(spec.trials);
    for (int t = 0; t < spec.trials; ++t) {
        records.push_back(run_single_trial(p, spec, spec.base_seed + t));
    }
    return aggregate(spec, p.dim, std::move(records));
}

std::string format_cell(const AggregateStats& stats) {
    char buf[96];
    const long long rate = std::llround(stats.success_rate_percent);
    if (stats.successes == 0) {
        std::snprintf(buf, sizeof(buf), "— (%lld%%)", rate);
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%lld ± %lld (%lld%%)",
                  std::llround(stats.mean_evaluations), std::llround(stats.std_evaluations),
                  rate);
    return buf;
}

std::string ComparisonTable::to_text() const {
    if (rows.empty()) return "";
    std::vector<size_t> widths;
    widths.push_back(std::string("problem").size());
    for (const Row& r : rows) {
        widths[0] = std::max(widths[0], r.problem.size() + 1 + std::to_string(r.dim).size() +
                                            std::string(" d=").size());
    }
    for (size_t a = 0; a < algorithms.size(); ++a) {
        size_t w = algorithms[a].size();
        for (const Row& r : rows) w = std::max(w, utf8_length(r.cells[a]));
        widths.push_back(w);
    }
    std::ostringstream out;
    auto pad = [&](const std::string& s, size_t width, size_t display) {
        out << s;
        for (size_t i = display; i < width + 2; ++i) out << ' ';
    };
    pad("problem", widths[0], std::string("problem").size());
    for (size_t a = 0; a < algorithms.size(); ++a) {
        pad(algorithms[a], widths[a + 1], algorithms[a].size());
    }
    out << '\n';
    for (const Row& r : rows) {
        const std::string label = r.problem + " d=" + std::to_string(r.dim);
        pad(label, widths[0], label.size());
        for (size_t a = 0; a < r.cells.size(); ++a) {
            pad(r.cells[a], widths[a + 1], utf8_length(r.cells[a]));
        }
        out << '\n';
    }
    return out.str();
}

ComparisonTable compare(const std::vector<std::string>& problems,
                        const std::vector<std::string>& algorithms,
                        const ExperimentSpec& base) {
    ComparisonTable table;
    table.algorithms = algorithms;
    for (const std::string& prob : problems) {
        ComparisonTable::Row row;
        row.problem = prob;
        row.dim = 0;
        for (const std::string& algo : algorithms) {
            ExperimentSpec spec = base;
            spec.problem = prob;
            spec.algorithm = algo;
            AggregateStats st = run_experiment(spec);
            row.dim = st.dim;
            row.cells.push_back(format_cell(st));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void export_results_csv(const AggregateStats& stats, const std::string& path) {
    std::ofstream out = open_out(path);
    const ExperimentSpec& spec = stats.spec;
    out << "# csopt results v1\n";
    out << "# problem=" << spec.problem << "\n";
    out << "# algorithm=" << spec.algorithm << "\n";
    out << "# dim=" << stats.dim << "\n";
    out << "# trials=" << spec.trials << "\n";
    out << "# base_seed=" << spec.base_seed << "\n";
    out << "# mean_evals_convention=successful_trials_only\n";
    for (const auto& [k, v] : config_echo(spec, stats.dim)) {
        out << "# " << spec.algorithm << "." << k << "=" << v << "\n";
    }
    out << "problem,algorithm,dim,trial,seed,evaluations,best_value,success\n";
    for (size_t t = 0; t < stats.records.size(); ++t) {
        const RunRecord& r = stats.records[t];
        out << spec.problem << ',' << spec.algorithm << ',' << stats.dim << ',' << t << ','
            << r.seed << ',' << r.evaluations << ',' << fmt17(r.best_penalized) << ','
            << (r.success ? 1 : 0) << "\n";
    }
    close_out(out, path);
}

void export_results_jsonl(const AggregateStats& stats, const std::string& path) {
    std::ofstream out = open_out(path);
    const ExperimentSpec& spec = stats.spec;
    nlohmann::ordered_json config;
    for (const auto& [k, v] : config_echo(spec, stats.dim)) {
        // numbers were formatted by fmt17/to_string; re-parse so the JSON
        // carries typed values rather than strings
        try {
            size_t used = 0;
            const double d = std::stod(v, &used);
            if (used == v.size()) {
                if (v.find_first_of(".eE") == std::string::npos) {
                    config[k] = std::stoll(v);
                } else {
                    config[k] = d;
                }
                continue;
            }
        } catch (const std::exception&) {
        }
        config[k] = v;
    }
    for (size_t t = 0; t < stats.records.size(); ++t) {
        const RunRecord& r = stats.records[t];
        nlohmann::ordered_json j;
        j["problem"] = spec.problem;
        j["algorithm"] = spec.algorithm;
        j["dim"] = stats.dim;
        j["trial"] = t;
        j["seed"] = r.seed;
        j["evaluations"] = r.evaluations;
        j["generations"] = r.generations;
        j["best_value"] = r.best_penalized;
        j["best_raw"] = r.best_raw;
        j["success"] = r.success;
        j["stop"] = stop_name(r.stop);
        j["breakdown"] = {{"init", r.breakdown.init},
                          {"moves", r.breakdown.moves},
                          {"local", r.breakdown.local},
                          {"reinit", r.breakdown.reinit},
                          {"refresh", r.breakdown.refresh}};
        j["config"] = config;
        j["best_x"] = r.best_x;
        nlohmann::ordered_json trace = nlohmann::ordered_json::array();
        for (const auto& [e, f] : r.trace) trace.push_back({e, f});
        j["trace"] = std::move(trace);
        out << j.dump() << "\n";
    }
    close_out(out, path);
}

void export_landscape_grid(const Problem& p, int resolution, std::optional<double> noise,
                           uint64_t noise_seed, const std::string& path,
                           std::optional<std::array<double, 4>> window) {
    if (p.dim != 2) {
        throw std::invalid_argument("landscape: " + p.name + " is not 2-dimensional");
    }
    if (resolution < 2) throw std::invalid_argument("landscape: resolution must be >= 2");
    const double xmin = window ? (*window)[0] : p.lower[0];
    const double xmax = window ? (*window)[1] : p.upper[0];
    const double ymin = window ? (*window)[2] : p.lower[1];
    const double ymax = window ? (*window)[3] : p.upper[1];
    if (!(xmin < xmax) || !(ymin < ymax)) {
        throw std::invalid_argument("landscape: empty window");
    }

    // noise snapshot for the stochastic functions; every entry is a U(0,1)
    // draw in the live objective, so the broadcast value plays the same role
    std::vector<double> eps;
    if (p.stochastic) {
        const size_t draws = p.name == "rosenbrock-stoch" ? 1 : 2;
        RngState nr = new_rng(noise_seed);
        for (size_t i = 0; i < draws; ++i) eps.push_back(noise ? *noise : u01(nr));
    }

    std::ofstream out = open_out(path);
    out << "# csopt landscape v1\n";
    out << "# problem=" << p.name << "\n";
    out << "# resolution=" << resolution << "\n";
    out << "# xmin=" << fmt17(xmin) << "\n# xmax=" << fmt17(xmax) << "\n";
    out << "# ymin=" << fmt17(ymin) << "\n# ymax=" << fmt17(ymax) << "\n";
    if (p.stochastic) {
        out << "# eps=";
        for (size_t i = 0; i < eps.size(); ++i) out << (i ? "," : "") << fmt17(eps[i]);
        out << "\n";
    }
    out << "x,y,f\n";

    RngState dummy = new_rng(0);
    for (int iy = 0; iy < resolution; ++iy) {
        const double y = ymin + (ymax - ymin) * iy / (resolution - 1);
        for (int ix = 0; ix < resolution; ++ix) {
            const double x = xmin + (xmax - xmin) * ix / (resolution - 1);
            const double v[2] = {x, y};
            double f;
            if (!p.stochastic) {
                f = p.objective(v, 2, dummy);
            } else if (p.name == "yang1") {
                f = yang1_fixed(v, 2, eps.data());
            } else if (p.name == "yang2") {
                f = yang2_fixed(v, 2, eps.data());
            } else if (p.name == "rosenbrock-stoch") {
                f = rosenbrock_stoch_fixed(v, 2, eps.data());
            } else if (p.name == "dejong-stoch") {
                f = de_jong_stoch_fixed(v, 2, eps.data());
            } else {
                throw std::invalid_argument("landscape: no fixed-noise form for " + p.name);
            }
            out << fmt17(x) << ',' << fmt17(y) << ',' << fmt17(f) << "\n";
        }
    }
    close_out(out, path);
}

void export_nest_trace(const Problem& p, const CsConfig& cfg, long long generations,
                       uint64_t seed, const std::string& path) {
    if (p.dim != 2) {
        throw std::invalid_argument("nest trace: " + p.name + " is not 2-dimensional");
    }
    RngState rng = new_rng(seed);
    EvalCounter counter;  // unlimited: the run is generation-bounded
    NestPopulation pop = initialise_population(p, cfg.n, rng, counter);

    std::ofstream out = open_out(path);
    out << "# csopt nest trace v1\n";
    out << "# problem=" << p.name << "\n";
    out << "# n=" << cfg.n << "\n";
    out << "# generations=" << generations << "\n";
    out << "# seed=" << seed << "\n";
    out << "generation,nest,x,y\n";
    auto dump = [&](long long g) {
        for (int i = 0; i < pop.n; ++i) {
            const double* x = pop.nest(i);
            out << g << ',' << i << ',' << fmt17(x[0]) << ',' << fmt17(x[1]) << "\n";
        }
    };
    dump(0);
    for (long long g = 1; g <= generations; ++g) {
        propose_and_replace(pop, p, cfg, rng, counter);
        abandon_worst(pop, p, cfg, rng, counter);
        pop.generation += 1;
        dump(g);
    }
    close_out(out, path);
}

}  // namespace csopt
