#include "csopt/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csopt {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

RngState seed_state(uint64_t seed) {
    RngState rng;
    uint64_t x = seed;
    for (auto& word : rng.s) word = splitmix64(x);
    return rng;
}

}  // namespace

RngState new_rng(uint64_t seed) {
    return seed_state(seed);
}

RngState split_rng(uint64_t seed, uint64_t child) {
    // Children must differ from the parent (child index is mixed before
    // seeding, so child=k never reproduces new_rng(seed)).
    uint64_t x = seed;
    uint64_t mixed = splitmix64(x) ^ (0xD1B54A32D192ED03ULL * (child + 1));
    return seed_state(mixed);
}

uint64_t next_u64(RngState& rng) {
    uint64_t* s = rng.s;
    const uint64_t result = rotl(s[0] + s[3], 23) + s[0];
    const uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
}

double u01(RngState& rng) {
    return static_cast<double>(next_u64(rng) >> 11) * 0x1.0p-53;
}

double uniform(RngState& rng, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("uniform: lo > hi");
    return lo + u01(rng) * (hi - lo);
}

double gaussian(RngState& rng) {
    if (rng.has_spare) {
        rng.has_spare = false;
        return rng.gauss_spare;
    }
    // u1 in (0, 1] keeps the log finite
    const double u1 = 1.0 - u01(rng);
    const double u2 = u01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    rng.gauss_spare = r * std::sin(a);
    rng.has_spare = true;
    return r * std::cos(a);
}

int uniform_index(RngState& rng, int n) {
    int k = static_cast<int>(u01(rng) * n);
    return k < n ? k : n - 1;
}

void random_permutation(RngState& rng, int n, std::vector<int>& out) {
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = i;
    for (int i = n - 1; i > 0; --i) {
        int j = uniform_index(rng, i + 1);
        std::swap(out[i], out[j]);
    }
}

std::vector<int> random_permutation(RngState& rng, int n) {
    std::vector<int> out;
    random_permutation(rng, n, out);
    return out;
}

double lanczos_gamma(double x) {
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // reflection keeps the approximation in its accurate half-plane
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
    }
    x -= 1.0;
    double a = coef[0];
    for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
    const double t = x + g + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double mantegna_sigma_u(double beta) {
    if (!(beta > 0.0 && beta < 2.0)) {
        throw std::invalid_argument("mantegna_sigma_u: beta outside (0, 2)");
    }
    const double num = lanczos_gamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = lanczos_gamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

void levy_step(RngState& rng, const LevyParams& params, int dim, double* out) {
    const double sigma = mantegna_sigma_u(params.beta);
    const double inv_beta = 1.0 / params.beta;
    for (int i = 0; i < dim; ++i) {
        const double u = gaussian(rng) * sigma;
        const double v = gaussian(rng);
        out[i] = u / std::pow(std::fabs(v), inv_beta);
    }
}

std::vector<double> levy_step(RngState& rng, const LevyParams& params, int dim) {
    std::vector<double> out(dim);
    levy_step(rng, params, dim, out.data());
    return out;
}

}  // namespace csopt
