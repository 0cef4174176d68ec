#pragma once

#include <cstddef>

namespace csopt::kernels {

// Reduction kernels for the benchmark hot loops. Two implementations exist:
// a scalar reference and an AVX2 variant; selection happens once at startup.
// The CSOPT_KERNELS environment variable forces a path: "scalar" or "avx2"
// (the latter fails fast when the CPU lacks AVX2); anything else auto-detects.
struct Table {
    const char* name;
    double (*sum_sq)(const double* x, int n);
    double (*rosenbrock)(const double* x, int n);
    double (*rastrigin_sum)(const double* x, int n);   // sum of x^2 - 10 cos(2 pi x)
    void (*ackley_parts)(const double* x, int n, double* sum_sq, double* sum_cos);
    void (*griewank_parts)(const double* x, int n, double* sum_sq, double* prod_cos);
    double (*schwefel_sum)(const double* x, int n);    // sum of x sin(sqrt|x|)
    double (*michalewicz_sum)(const double* x, int n, int m);
};

const Table& scalar_table();

// nullptr when the build or the running CPU lacks AVX2
const Table* avx2_table();

bool avx2_supported();

// The selected table; resolved on first call and stable afterwards.
const Table& active();

}  // namespace csopt::kernels
