#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csopt/benchmarks.hpp"
#include "csopt/engineering.hpp"
#include "csopt/harness.hpp"

namespace {

using namespace csopt;

void add_algo_options(CLI::App* cmd, ExperimentSpec& spec) {
    cmd->add_option("--cs-n", spec.cs.n, "CS nest count");
    cmd->add_option("--cs-pa", spec.cs.pa, "CS abandonment probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--cs-alpha0", spec.cs.alpha0, "CS local step scale");
    cmd->add_option("--cs-beta", spec.cs.levy.beta, "CS Levy stability index");
    static const std::map<std::string, CsProfile> kProfiles{
        {"classic", CsProfile::classic}, {"enhanced", CsProfile::enhanced}};
    cmd->add_option("--cs-profile", spec.cs.profile, "CS profile: classic | enhanced")
        ->transform(CLI::CheckedTransformer(kProfiles));
    static const std::map<std::string, AbandonMode> kAbandon{
        {"difference", AbandonMode::difference_walk}, {"fresh", AbandonMode::fresh_uniform}};
    cmd->add_option("--cs-abandon", spec.cs.abandon_mode,
                    "classic abandonment move: difference | fresh")
        ->transform(CLI::CheckedTransformer(kAbandon));
    cmd->add_flag("--cs-raw-levy", spec.cs.raw_levy, "use the unbiased global Levy step");
    cmd->add_option("--cs-min-nests", spec.cs.min_nests, "enhanced population floor");
    cmd->add_option("--cs-probe-rate", spec.cs.probe_rate, "enhanced probe rate");
    cmd->add_option("--cs-polish-period", spec.cs.polish_period,
                    "enhanced polish sweep period, evaluations");
    cmd->add_option("--cs-flip-period", spec.cs.flip_period,
                    "enhanced flip sweep period, evaluations");
    cmd->add_option("--cs-noise-refresh", spec.cs.noise_refresh_generations,
                    "generations between fitness-cache refreshes on noisy problems");

    cmd->add_option("--pso-swarm", spec.pso.swarm, "PSO swarm size");
    cmd->add_option("--pso-c1", spec.pso.c1, "PSO cognitive coefficient");
    cmd->add_option("--pso-c2", spec.pso.c2, "PSO social coefficient");
    cmd->add_option("--pso-w-start", spec.pso.w_start, "PSO initial inertia");
    cmd->add_option("--pso-w-end", spec.pso.w_end, "PSO final inertia");
    cmd->add_option("--pso-vclamp", spec.pso.vclamp_fraction,
                    "PSO velocity clamp, fraction of box width");

    cmd->add_option("--ga-pop", spec.ga.population, "GA population size");
    cmd->add_option("--ga-tournament", spec.ga.tournament, "GA tournament size");
    cmd->add_option("--ga-blend", spec.ga.blend_alpha, "GA blend crossover alpha");
    cmd->add_option("--ga-crossover", spec.ga.crossover_rate, "GA crossover rate");
    cmd->add_option("--ga-mutation-rate", spec.ga.mutation_rate,
                    "GA per-gene mutation probability (negative: 1/dim)");
    cmd->add_option("--ga-mutation-scale", spec.ga.mutation_scale,
                    "GA mutation sigma, fraction of box width");
}

void add_spec_options(CLI::App* cmd, ExperimentSpec& spec) {
    cmd->add_option("--dim", spec.dim, "dimension override (0: problem default)");
    cmd->add_option("--trials", spec.trials, "independent seeded trials")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--budget", spec.max_evaluations, "evaluation budget per trial")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", spec.base_seed, "base seed; trial t uses base+t");
    cmd->add_option("--tolerance", spec.success_tolerance, "success tolerance");
    cmd->add_option("--stall-window", spec.stall_window, "stall window, evaluations");
    cmd->add_option("--stall-tolerance", spec.stall_tolerance, "stall tolerance");
    cmd->add_option("--mu", spec.penalty_mu, "constraint penalty factor (0: problem default)");
    add_algo_options(cmd, spec);
}

int cmd_list() {
    std::printf("benchmarks (Table-1 order):\n");
    std::printf("  %-18s %4s %12s %12s %s\n", "name", "dim", "lower", "upper", "kind");
    for (const auto& e : benchmark_registry()) {
        std::printf("  %-18s %4d %12g %12g %s\n", e.name, e.default_dim, e.lower, e.upper,
                    e.stochastic ? "stochastic" : "deterministic");
    }
    std::printf("engineering:\n");
    for (const char* name : {"spring", "welded-beam"}) {
        const Problem p = make_engineering(name);
        std::printf("  %-18s %4d (%zu constraints)\n", name, p.dim, p.constraints.size());
    }
    std::printf("algorithms: cs, pso, ga\n");
    return 0;
}

int cmd_run(const ExperimentSpec& spec, const std::string& out_csv,
            const std::string& out_jsonl) {
    const AggregateStats stats = run_experiment(spec);
    if (!out_csv.empty()) export_results_csv(stats, out_csv);
    if (!out_jsonl.empty()) export_results_jsonl(stats, out_jsonl);
    std::printf("%s %s d=%d trials=%d: %s\n", spec.problem.c_str(), spec.algorithm.c_str(),
                stats.dim, spec.trials, format_cell(stats).c_str());
    return 0;
}

int cmd_compare(const std::vector<std::string>& problems,
                const std::vector<std::string>& algos, const ExperimentSpec& base,
                const std::string& out) {
    const ComparisonTable table = compare(problems, algos, base);
    const std::string text = table.to_text();
    std::fputs(text.c_str(), stdout);
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open for writing: " + out);
        f << text;
    }
    return 0;
}

int cmd_solve(const std::string& problem, ExperimentSpec spec) {
    spec.problem = problem;
    spec.algorithm = "cs";
    const Problem p = make_problem(problem, 0);
    const AggregateStats stats = run_experiment(spec);

    const RunRecord* best = nullptr;
    for (const RunRecord& r : stats.records) {
        if (!best || r.best_penalized < best->best_penalized) best = &r;
    }
    std::printf("%s: best of %d runs (budget %lld per run)\n", problem.c_str(), spec.trials,
                spec.max_evaluations);
    std::printf("  f = %.10g\n", best->best_raw);
    for (int j = 0; j < p.dim; ++j) std::printf("  x[%d] = %.10g\n", j, best->best_x[j]);
    bool feasible = true;
    for (size_t i = 0; i < p.constraints.size(); ++i) {
        const double g = p.constraints[i](best->best_x.data(), p.dim);
        feasible = feasible && g <= 0.0;
        std::printf("  g%zu = %.6g%s\n", i + 1, g, g <= 0.0 ? "" : "  VIOLATED");
    }
    std::printf("  %s\n", feasible ? "feasible" : "infeasible");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuckoo search optimization toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file");

    app.add_subcommand("list", "print the problem and algorithm registry");

    ExperimentSpec run_spec;
    std::string run_out, run_jsonl;
    CLI::App* run = app.add_subcommand("run", "run repeated seeded trials");
    run->add_option("--problem", run_spec.problem, "problem name")->required();
    run->add_option("--algo", run_spec.algorithm, "cs | pso | ga");
    run->add_option("--out", run_out, "write per-trial results CSV here");
    run->add_option("--jsonl", run_jsonl, "write per-trial JSON lines here");
    add_spec_options(run, run_spec);

    std::vector<std::string> cmp_problems, cmp_algos{"cs", "pso", "ga"};
    ExperimentSpec cmp_spec;
    std::string cmp_out;
    CLI::App* cmp = app.add_subcommand("compare", "comparison table over problems x algorithms");
    cmp->add_option("--problems", cmp_problems, "comma-separated problem names")
        ->required()
        ->delimiter(',');
    cmp->add_option("--algos", cmp_algos, "comma-separated algorithms")->delimiter(',');
    cmp->add_option("--out", cmp_out, "write the table here");
    add_spec_options(cmp, cmp_spec);

    std::string solve_problem;
    ExperimentSpec solve_spec;
    solve_spec.trials = 30;
    solve_spec.max_evaluations = 50000;
    // a wall-steep penalty keeps line searches off the active constraint
    // surfaces; 1e6 leaves the penalized minimizer's residual violation
    // orders of magnitude below the feasibility tolerances
    solve_spec.penalty_mu = 1e6;
    // progress along an active constraint surface is slow but steady; the
    // generic stall cutoff would end these runs long before the budget
    solve_spec.stall_window = solve_spec.max_evaluations + 1;
    CLI::App* solve = app.add_subcommand("solve", "constrained engineering design");
    solve->add_option("--problem", solve_problem, "spring | welded-beam")->required();
    add_spec_options(solve, solve_spec);

    std::string land_problem, land_out;
    int land_resolution = 101;
    double land_noise = -1.0;
    uint64_t land_seed = 1;
    std::vector<double> land_window;
    CLI::App* land = app.add_subcommand("landscape", "export a 2-D objective grid");
    land->add_option("--problem", land_problem, "problem name")->required();
    land->add_option("--resolution", land_resolution, "grid points per axis")
        ->check(CLI::Range(2, 100000));
    land->add_option("--out", land_out, "output CSV path")->required();
    land->add_option("--noise", land_noise,
                     "freeze every noise draw to this value (stochastic problems)");
    land->add_option("--noise-seed", land_seed, "seed for the drawn noise snapshot");
    land->add_option("--window", land_window, "xmin,xmax,ymin,ymax override")
        ->delimiter(',')
        ->expected(4);

    std::string trace_problem = "dejong", trace_out;
    long long trace_generations = 15;
    uint64_t trace_seed = 1;
    ExperimentSpec trace_spec;
    CLI::App* trace = app.add_subcommand("trace", "export per-generation nest positions");
    trace->add_option("--problem", trace_problem, "problem name");
    trace->add_option("--generations", trace_generations, "generations to record")
        ->check(CLI::NonNegativeNumber);
    trace->add_option("--out", trace_out, "output CSV path")->required();
    trace->add_option("--seed", trace_seed, "run seed");
    trace->add_option("--n", trace_spec.cs.n, "nest count");
    trace->add_option("--pa", trace_spec.cs.pa, "abandonment probability");
    trace->add_option("--alpha0", trace_spec.cs.alpha0, "local step scale");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("list")) return cmd_list();
        if (app.got_subcommand(run)) return cmd_run(run_spec, run_out, run_jsonl);
        if (app.got_subcommand(cmp)) return cmd_compare(cmp_problems, cmp_algos, cmp_spec, cmp_out);
        if (app.got_subcommand(solve)) return cmd_solve(solve_problem, solve_spec);
        if (app.got_subcommand(land)) {
            std::optional<double> noise;
            if (land_noise >= 0.0) noise = land_noise;
            std::optional<std::array<double, 4>> window;
            if (!land_window.empty()) {
                window = std::array<double, 4>{land_window[0], land_window[1], land_window[2],
                                               land_window[3]};
            }
            export_landscape_grid(make_problem(land_problem, 2), land_resolution, noise,
                                  land_seed, land_out, window);
            std::printf("wrote %s\n", land_out.c_str());
            return 0;
        }
        if (app.got_subcommand(trace)) {
            trace_spec.cs.profile = CsProfile::classic;
            export_nest_trace(make_problem(trace_problem, 2), trace_spec.cs, trace_generations,
                              trace_seed, trace_out);
            std::printf("wrote %s\n", trace_out.c_str());
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
