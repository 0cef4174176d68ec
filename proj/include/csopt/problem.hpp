#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csopt/rng.hpp"

namespace csopt {

// Optimizers set `limit` once the initial population is paid for; operators
// then skip optional evaluations when the budget is spent, so a finished
// run never exceeds max(budget, initial population size).
struct EvalCounter {
    long long count = 0;
    long long limit = -1;  // negative: unlimited
    bool exhausted() const { return limit >= 0 && count >= limit; }
};

// Raised when an objective returns a non-finite value; carries the point.
struct NumericFailure : std::runtime_error {
    std::vector<double> x;
    NumericFailure(std::string what, std::vector<double> point)
        : std::runtime_error(std::move(what)), x(std::move(point)) {}
};

// Stochastic objectives draw their noise from the caller's stream so the
// whole trial stays reproducible; deterministic ones ignore the rng.
using ObjectiveFn = std::function<double(const double* x, int dim, RngState& rng)>;
using ConstraintFn = std::function<double(const double* x, int dim)>;

struct Problem {
    std::string name;
    int dim = 0;
    std::vector<double> lower, upper;
    ObjectiveFn objective;
    std::vector<ConstraintFn> constraints;  // feasible iff g_i(x) <= 0 for all i
    bool stochastic = false;
    bool f_star_known = false;
    double f_star = 0.0;
    std::vector<double> x_star;  // empty when unknown
    double success_tolerance = 1e-5;
    bool scale_tolerance = false;  // success gap widened to tol * max(1, |f*|)
    double penalty_mu = 1e15;
};

// Effective success gap; the scaled form exists for Schwefel's large |f*|.
double success_gap(const Problem& p);

struct EvaluatedPoint {
    std::vector<double> x;
    double raw_objective = 0.0;
    double penalized_fitness = 0.0;
    std::vector<double> violations;  // max(0, g_i(x))
};

// raw + mu * sum(violations^2); equals raw when all violations are zero
double penalised_fitness(double raw, const double* violations, int count, double mu);

// Counts exactly one evaluation. Throws NumericFailure on a non-finite
// objective value. Callers clamp x into the box first. raw_out, when given,
// receives the unpenalized objective from the same evaluation.
double evaluate_fitness(const Problem& p, const double* x, RngState& rng, EvalCounter& counter,
                        double* raw_out = nullptr);

// Same evaluation with the full breakdown kept; checks the dimension.
EvaluatedPoint evaluate(const Problem& p, const std::vector<double>& x, RngState& rng,
                        EvalCounter& counter);

void clamp_to_bounds(const Problem& p, double* x);
std::vector<double> clamp_to_bounds(const Problem& p, std::vector<double> x);

}  // namespace csopt
