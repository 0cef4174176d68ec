#include "csopt/kernels.hpp"

#include <cmath>
#include <numbers>

namespace csopt::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sum_sq(const double* x, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double rosenbrock(const double* x, int n) {
    double s = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const double a = 1.0 - x[i];
        const double b = x[i + 1] - x[i] * x[i];
        s += a * a + 100.0 * b * b;
    }
    return s;
}

double rastrigin_sum(const double* x, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i] * x[i] - 10.0 * std::cos(kTwoPi * x[i]);
    return s;
}

void ackley_parts(const double* x, int n, double* out_sum_sq, double* out_sum_cos) {
    double ss = 0.0, sc = 0.0;
    for (int i = 0; i < n; ++i) {
        ss += x[i] * x[i];
        sc += std::cos(kTwoPi * x[i]);
    }
    *out_sum_sq = ss;
    *out_sum_cos = sc;
}

void griewank_parts(const double* x, int n, double* out_sum_sq, double* out_prod_cos) {
    double ss = 0.0, pc = 1.0;
    for (int i = 0; i < n; ++i) {
        ss += x[i] * x[i];
        pc *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    *out_sum_sq = ss;
    *out_prod_cos = pc;
}

double schwefel_sum(const double* x, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i] * std::sin(std::sqrt(std::fabs(x[i])));
    return s;
}

double michalewicz_sum(const double* x, int n, int m) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        // the inner index is 1-based in the formula
        const double t = std::sin((i + 1) * x[i] * x[i] / std::numbers::pi);
        double p = t * t;
        double acc = 1.0;
        for (int k = 0; k < m; ++k) acc *= p;
        s += std::sin(x[i]) * acc;
    }
    return s;
}

}  // namespace

const Table& scalar_table() {
    static const Table table = {
        "scalar",
        sum_sq,
        rosenbrock,
        rastrigin_sum,
        ackley_parts,
        griewank_parts,
        schwefel_sum,
        michalewicz_sum,
    };
    return table;
}

}  // namespace csopt::kernels
