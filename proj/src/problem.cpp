#include "csopt/problem.hpp"

#include <algorithm>
#include <cmath>

namespace csopt {

double success_gap(const Problem& p) {
    if (p.scale_tolerance && p.f_star_known) {
        return p.success_tolerance * std::max(1.0, std::fabs(p.f_star));
    }
    return p.success_tolerance;
}

double penalised_fitness(double raw, const double* violations, int count, double mu) {
    double sum = 0.0;
    for (int i = 0; i < count; ++i) sum += violations[i] * violations[i];
    return raw + mu * sum;
}

double evaluate_fitness(const Problem& p, const double* x, RngState& rng, EvalCounter& counter,
                        double* raw_out) {
    counter.count += 1;
    const double raw = p.objective(x, p.dim, rng);
    if (!std::isfinite(raw)) {
        throw NumericFailure("objective returned a non-finite value",
                             std::vector<double>(x, x + p.dim));
    }
    if (raw_out != nullptr) *raw_out = raw;
    if (p.constraints.empty()) return raw;
    double sum = 0.0;
    for (const auto& g : p.constraints) {
        const double v = std::max(0.0, g(x, p.dim));
        sum += v * v;
    }
    return raw + p.penalty_mu * sum;
}

EvaluatedPoint evaluate(const Problem& p, const std::vector<double>& x, RngState& rng,
                        EvalCounter& counter) {
    if (static_cast<int>(x.size()) != p.dim) {
        throw std::invalid_argument("evaluate: dimension mismatch");
    }
    counter.count += 1;
    EvaluatedPoint out;
    out.x = x;
    out.raw_objective = p.objective(x.data(), p.dim, rng);
    if (!std::isfinite(out.raw_objective)) {
        throw NumericFailure("objective returned a non-finite value", x);
    }
    out.violations.reserve(p.constraints.size());
    for (const auto& g : p.constraints) {
        out.violations.push_back(std::max(0.0, g(x.data(), p.dim)));
    }
    out.penalized_fitness = penalised_fitness(out.raw_objective, out.violations.data(),
                                              static_cast<int>(out.violations.size()),
                                              p.penalty_mu);
    return out;
}

void clamp_to_bounds(const Problem& p, double* x) {
    for (int j = 0; j < p.dim; ++j) {
        x[j] = std::clamp(x[j], p.lower[j], p.upper[j]);
    }
}

std::vector<double> clamp_to_bounds(const Problem& p, std::vector<double> x) {
    clamp_to_bounds(p, x.data());
    return x;
}

}  // namespace csopt
