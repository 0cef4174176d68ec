#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "csopt/baselines.hpp"
#include "csopt/cuckoo.hpp"
#include "csopt/problem.hpp"
#include "csopt/run.hpp"

namespace csopt {

// One batch of repeated seeded trials of a single (problem, algorithm) pair.
// Trial t runs with seed base_seed + t.
struct ExperimentSpec {
    std::string problem = "dejong";
    std::string algorithm = "cs";  // cs | pso | ga
    int dim = 0;                   // 0: problem default
    int trials = 100;              // >= 1
    long long max_evaluations = 100000;
    double success_tolerance = 1e-5;
    long long stall_window = 500;
    double stall_tolerance = 1e-5;
    uint64_t base_seed = 1;
    double penalty_mu = 0;  // 0: keep the problem's own default

    CsConfig cs;
    PsoConfig pso;
    GaConfig ga;
};

// Evaluation statistics are over successful trials only (the convention is
// echoed in every output header); median is +inf when nothing succeeded.
struct AggregateStats {
    ExperimentSpec spec;
    int dim = 0;  // resolved dimension actually run
    std::vector<RunRecord> records;
    int successes = 0;
    double success_rate_percent = 0.0;
    double mean_evaluations = 0.0;
    double std_evaluations = 0.0;  // sample std; 0 for a single success
    double median_evaluations = 0.0;
};

// Benchmark or engineering problem by CLI name; dim 0 means the natural
// default. Unknown names and dimension overrides on fixed-dimension
// problems throw std::invalid_argument.
Problem make_problem(const std::string& name, int dim = 0);

bool is_algorithm_name(const std::string& name);

// One seeded trial. For noisy objectives the success flag is decided after
// the run: the returned best point is re-evaluated 100 times with fresh
// noise from a stream split off the trial seed (not counted against the
// budget) and the mean must reach f* within 10x the success gap.
RunRecord run_single_trial(const Problem& p, const ExperimentSpec& spec, uint64_t seed);

// Pure reduction of records; run_experiment = trials + aggregate.
AggregateStats aggregate(const ExperimentSpec& spec, int dim, std::vector<RunRecord> records);
AggregateStats run_experiment(const ExperimentSpec& spec);

// `mean ± std (rate%)` with integer-rounded entries, `— (0%)` when nothing
// succeeded.
std::string format_cell(const AggregateStats& stats);

struct ComparisonTable {
    std::vector<std::string> algorithms;  // column order
    struct Row {
        std::string problem;
        int dim;
        std::vector<std::string> cells;
    };
    std::vector<Row> rows;
    std::string to_text() const;
};

// One row per problem, one column per algorithm; every (problem, algorithm)
// experiment inherits the remaining settings from `base`.
ComparisonTable compare(const std::vector<std::string>& problems,
                        const std::vector<std::string>& algorithms,
                        const ExperimentSpec& base);

// CSV: `# key=value` metadata (full effective config), a mandatory header
// row `problem,algorithm,dim,trial,seed,evaluations,best_value,success`,
// one data row per trial. JSONL: one object per trial mirroring RunRecord
// plus the config echo. Neither carries wall-clock time, so repeated runs
// of the same spec are byte-identical. I/O failure throws std::runtime_error
// naming the path.
void export_results_csv(const AggregateStats& stats, const std::string& path);
void export_results_jsonl(const AggregateStats& stats, const std::string& path);

// (x, y, f) grid over the box (or an explicit window {xmin, xmax, ymin,
// ymax}), endpoints included, y varying slowest. Stochastic objectives are
// frozen to one noise snapshot: `noise` broadcast per draw when given,
// otherwise drawn once from noise_seed. Requires dim = 2 and resolution
// >= 2; violations throw std::invalid_argument.
void export_landscape_grid(const Problem& p, int resolution,
                           std::optional<double> noise, uint64_t noise_seed,
                           const std::string& path,
                           std::optional<std::array<double, 4>> window = std::nullopt);

// Nest coordinates of a seeded classic-profile run as CSV rows
// (generation, nest, x, y): the initial population plus `generations`
// updates, (generations+1) * n rows. Runs exactly that many generations
// regardless of the stopping controls in cfg. Requires dim = 2.
void export_nest_trace(const Problem& p, const CsConfig& cfg, long long generations,
                       uint64_t seed, const std::string& path);

}  // namespace csopt
