#pragma once

#include <cstdint>
#include <vector>

namespace csopt {

// xoshiro256++ stream seeded through splitmix64. One instance per trial;
// never shared between concurrent activities.
struct RngState {
    uint64_t s[4];
    double gauss_spare = 0.0;
    bool has_spare = false;
};

RngState new_rng(uint64_t seed);

// Derived stream for parallel work: distinct children of the same seed do not
// collide with each other or with the parent stream.
RngState split_rng(uint64_t seed, uint64_t child);

uint64_t next_u64(RngState& rng);

// [0, 1), 53-bit resolution
double u01(RngState& rng);

// [lo, hi); throws std::invalid_argument when lo > hi
double uniform(RngState& rng, double lo, double hi);

// standard normal, Box-Muller
double gaussian(RngState& rng);

// uniform over {0, ..., n-1}, n >= 1
int uniform_index(RngState& rng, int n);

// uniform random permutation of {0, ..., n-1}
void random_permutation(RngState& rng, int n, std::vector<int>& out);
std::vector<int> random_permutation(RngState& rng, int n);

struct LevyParams {
    double beta = 1.5;  // stability index, valid range (0, 2)
    double tail_exponent() const { return beta + 1.0; }
};

// Gamma function for positive arguments (Lanczos, g=7); relative error
// below 1e-10 over the range used by the Mantegna constant.
double lanczos_gamma(double x);

// Mantegna scale sigma_u for the numerator Gaussian
double mantegna_sigma_u(double beta);

// Heavy-tailed step vector: component = u / |v|^(1/beta) with
// u ~ N(0, sigma_u^2), v ~ N(0, 1). Tail exponent of |step| is 1 + beta.
// Throws std::invalid_argument for beta outside (0, 2).
void levy_step(RngState& rng, const LevyParams& params, int dim, double* out);
std::vector<double> levy_step(RngState& rng, const LevyParams& params, int dim);

}  // namespace csopt
