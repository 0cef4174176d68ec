#include "csopt/engineering.hpp"

#include <cmath>
#include <stdexcept>

namespace csopt {

BeamIntermediates beam_intermediates(const double* x) {
    const double w = x[0], L = x[1], d = x[2], h = x[3];
    BeamIntermediates b;
    b.sigma = 504000.0 / (h * d * d);
    b.Q = 6000.0 * (14.0 + L / 2.0);
    b.D = 0.5 * std::sqrt(L * L + (w + d) * (w + d));
    b.J = std::sqrt(2.0) * w * L * (L * L / 6.0 + (w + d) * (w + d) / 2.0);
    b.delta = 65856.0 / (30000.0 * h * d * d * d);
    b.beta = b.Q * b.D / b.J;
    b.alpha = 6000.0 / (std::sqrt(2.0) * w * L);
    b.tau = std::sqrt(b.alpha * b.alpha + b.alpha * b.beta * L / b.D + b.beta * b.beta);
    // Buckling load as printed; it has no dependence on L, which makes the
    // quoted optimum sit slightly on the infeasible side of g7.
    b.P = 0.61423e6 * (d * h * h * h / 6.0) * (1.0 - d * std::sqrt(30.0 / 48.0) / 28.0);
    return b;
}

Problem spring_problem() {
    Problem p;
    p.name = "spring";
    p.dim = 3;
    p.lower = {0.05, 0.25, 2.0};
    p.upper = {2.0, 1.3, 15.0};
    p.objective = [](const double* x, int, RngState&) {
        const double w = x[0], d = x[1], L = x[2];
        return (L + 2.0) * w * w * d;
    };
    p.constraints = {
        [](const double* x, int) {
            const double w = x[0], d = x[1], L = x[2];
            return 1.0 - d * d * d * L / (71785.0 * w * w * w * w);
        },
        [](const double* x, int) {
            const double w = x[0], d = x[1], L = x[2];
            return 1.0 - 140.45 * w / (d * d * L);
        },
        [](const double* x, int) {
            const double w = x[0], d = x[1];
            return 2.0 * (w + d) / 3.0 - 1.0;
        },
        [](const double* x, int) {
            const double w = x[0], d = x[1];
            return d * (4.0 * d - w) / (w * w * w * (12566.0 * d - w)) +
                   1.0 / (5108.0 * w * w) - 1.0;
        },
    };
    return p;
}

Problem welded_beam_problem() {
    Problem p;
    p.name = "welded-beam";
    p.dim = 4;
    // x = (w, L, d, h)
    p.lower = {0.1, 0.1, 0.1, 0.1};
    p.upper = {2.0, 10.0, 10.0, 2.0};
    p.objective = [](const double* x, int, RngState&) {
        const double w = x[0], L = x[1], d = x[2], h = x[3];
        return 1.10471 * w * w * L + 0.04811 * d * h * (14.0 + L);
    };
    p.constraints = {
        [](const double* x, int) { return x[0] - x[3]; },
        [](const double* x, int) { return beam_intermediates(x).delta - 0.25; },
        [](const double* x, int) { return beam_intermediates(x).tau - 13600.0; },
        [](const double* x, int) { return beam_intermediates(x).sigma - 30000.0; },
        [](const double* x, int) {
            const double w = x[0], L = x[1], d = x[2], h = x[3];
            return 0.10471 * w * w + 0.04811 * h * d * (14.0 + L) - 5.0;
        },
        [](const double* x, int) { return 0.125 - x[0]; },
        [](const double* x, int) { return 6000.0 - beam_intermediates(x).P; },
    };
    return p;
}

bool is_engineering_name(const std::string& name) {
    return name == "spring" || name == "welded-beam";
}

Problem make_engineering(const std::string& name) {
    if (name == "spring") return spring_problem();
    if (name == "welded-beam") return welded_beam_problem();
    throw std::invalid_argument("unknown engineering problem: " + name);
}

}  // namespace csopt
