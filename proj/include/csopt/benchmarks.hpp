#pragma once

#include <string>
#include <vector>

#include "csopt/problem.hpp"
#include "csopt/rng.hpp"

namespace csopt {

// Deterministic test functions. Formula indices are 1-based where the
// definition demands it (Michalewicz, Griewank).
double michalewicz(const double* x, int d, int m = 10);
double rosenbrock(const double* x, int d);  // throws std::invalid_argument for d < 2
double de_jong(const double* x, int d);
double schwefel(const double* x, int d);
double ackley(const double* x, int d);
double rastrigin(const double* x, int d);
double easom(const double* x, int d);  // throws std::invalid_argument for d != 2
double griewank(const double* x, int d);

// Stochastic test functions. The rng variants redraw every epsilon on each
// call, in coordinate order; the fixed variants exist for oracle tests.
double yang1(const double* x, int d, RngState& rng);                 // d draws
double yang1_fixed(const double* x, int d, const double* eps);
double yang2(const double* x, int d, RngState& rng);                 // d draws
double yang2_fixed(const double* x, int d, const double* eps);
double rosenbrock_stoch(const double* x, int d, RngState& rng);      // d-1 draws
double rosenbrock_stoch_fixed(const double* x, int d, const double* eps);
double de_jong_stoch(const double* x, int d, RngState& rng);         // d draws
double de_jong_stoch_fixed(const double* x, int d, const double* eps);

// Global minimum of the d-dimensional Michalewicz function, located by a
// per-coordinate scan (the function is separable); cached per (d, m).
double michalewicz_minimum(int d, int m = 10);
// The maximising coordinate values found by the same scan.
std::vector<double> michalewicz_minimizer(int d, int m = 10);

struct BenchmarkEntry {
    int id;  // Table-1 row, 1..12
    const char* name;
    int default_dim;
    double lower, upper;
    bool stochastic;
};

const std::vector<BenchmarkEntry>& benchmark_registry();

// Builds the Problem for a registry name; dim 0 means the registry default.
// Unknown names throw std::invalid_argument.
Problem make_benchmark(const std::string& name, int dim = 0);

bool is_benchmark_name(const std::string& name);

}  // namespace csopt
