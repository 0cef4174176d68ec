#include "csopt/kernels.hpp"

#ifdef __AVX2__

#include <immintrin.h>

#include <cmath>
#include <numbers>

namespace csopt::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---- 4-wide sin/cos -------------------------------------------------------
// Cody-Waite reduction by pi/2 in three parts, then the classical fdlibm
// minimax polynomials on [-pi/4, pi/4]. Arguments here stay below ~1e3 in
// magnitude (box-bounded inputs), where the three-part split is exact to
// well under 1e-17.

constexpr double kInvPio2 = 6.36619772367581382433e-01;
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624879595063154e-21;

// adding 2^52 + 2^51 leaves the integer value in the low mantissa bits
constexpr double kShifter = 6755399441055744.0;

constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;

constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

struct ReducedAngle {
    __m256d r;
    __m256i q;  // quadrant bits in each 64-bit lane
};

inline ReducedAngle reduce(__m256d x) {
    const __m256d fk = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kInvPio2)),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(fk, _mm256_set1_pd(kPio2Hi), x);
    r = _mm256_fnmadd_pd(fk, _mm256_set1_pd(kPio2Mid), r);
    r = _mm256_fnmadd_pd(fk, _mm256_set1_pd(kPio2Lo), r);
    const __m256i q = _mm256_castpd_si256(_mm256_add_pd(fk, _mm256_set1_pd(kShifter)));
    return {r, q};
}

inline __m256d sin_poly(__m256d r) {
    const __m256d r2 = _mm256_mul_pd(r, r);
    __m256d p = _mm256_set1_pd(S6);
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S5));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S4));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S3));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S2));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S1));
    return _mm256_fmadd_pd(_mm256_mul_pd(r, r2), p, r);
}

inline __m256d cos_poly(__m256d r) {
    const __m256d r2 = _mm256_mul_pd(r, r);
    __m256d p = _mm256_set1_pd(C6);
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C5));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C4));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C3));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C2));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C1));
    const __m256d r4 = _mm256_mul_pd(r2, r2);
    __m256d c = _mm256_fnmadd_pd(r2, _mm256_set1_pd(0.5), _mm256_set1_pd(1.0));
    return _mm256_fmadd_pd(r4, p, c);
}

inline __m256d apply_quadrant(__m256d s, __m256d c, __m256i q, bool want_sin) {
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i bit0 = _mm256_and_si256(q, one);
    const __m256i bit1 = _mm256_and_si256(_mm256_srli_epi64(q, 1), one);
    const __m256d swap_mask = _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit0, one));
    __m256d neg_lanes;
    if (want_sin) {
        // sin: quadrants 2,3 negate
        neg_lanes = _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit1, one));
    } else {
        // cos: quadrants 1,2 negate
        neg_lanes = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_xor_si256(bit0, bit1), one));
    }
    __m256d val = want_sin ? _mm256_blendv_pd(s, c, swap_mask)
                           : _mm256_blendv_pd(c, s, swap_mask);
    const __m256d sign_bit = _mm256_set1_pd(-0.0);
    return _mm256_xor_pd(val, _mm256_and_pd(neg_lanes, sign_bit));
}

inline __m256d vsin(__m256d x) {
    const ReducedAngle a = reduce(x);
    return apply_quadrant(sin_poly(a.r), cos_poly(a.r), a.q, true);
}

inline __m256d vcos(__m256d x) {
    const ReducedAngle a = reduce(x);
    return apply_quadrant(sin_poly(a.r), cos_poly(a.r), a.q, false);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hprod(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_mul_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_mul_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline __m256d vabs(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// ---- kernels --------------------------------------------------------------

double sum_sq(const double* x, int n) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double rosenbrock(const double* x, int n) {
    __m256d acc = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d hundred = _mm256_set1_pd(100.0);
    int i = 0;
    for (; i + 5 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(x + i);
        const __m256d b = _mm256_loadu_pd(x + i + 1);
        const __m256d u = _mm256_sub_pd(one, a);
        const __m256d w = _mm256_fnmadd_pd(a, a, b);
        acc = _mm256_fmadd_pd(u, u, acc);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(hundred, w), w, acc);
    }
    double s = hsum(acc);
    for (; i + 1 < n; ++i) {
        const double u = 1.0 - x[i];
        const double w = x[i + 1] - x[i] * x[i];
        s += u * u + 100.0 * w * w;
    }
    return s;
}

double rastrigin_sum(const double* x, int n) {
    __m256d acc = _mm256_setzero_pd();
    const __m256d two_pi = _mm256_set1_pd(kTwoPi);
    const __m256d ten = _mm256_set1_pd(10.0);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d c = vcos(_mm256_mul_pd(two_pi, v));
        acc = _mm256_fmadd_pd(v, v, _mm256_fnmadd_pd(ten, c, acc));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i] - 10.0 * std::cos(kTwoPi * x[i]);
    return s;
}

void ackley_parts(const double* x, int n, double* out_sum_sq, double* out_sum_cos) {
    __m256d acc_sq = _mm256_setzero_pd();
    __m256d acc_cos = _mm256_setzero_pd();
    const __m256d two_pi = _mm256_set1_pd(kTwoPi);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc_sq = _mm256_fmadd_pd(v, v, acc_sq);
        acc_cos = _mm256_add_pd(acc_cos, vcos(_mm256_mul_pd(two_pi, v)));
    }
    double ss = hsum(acc_sq), sc = hsum(acc_cos);
    for (; i < n; ++i) {
        ss += x[i] * x[i];
        sc += std::cos(kTwoPi * x[i]);
    }
    *out_sum_sq = ss;
    *out_sum_cos = sc;
}

void griewank_parts(const double* x, int n, double* out_sum_sq, double* out_prod_cos) {
    __m256d acc_sq = _mm256_setzero_pd();
    __m256d acc_prod = _mm256_set1_pd(1.0);
    const __m256d lane_offsets = _mm256_set_pd(4.0, 3.0, 2.0, 1.0);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc_sq = _mm256_fmadd_pd(v, v, acc_sq);
        const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane_offsets);
        const __m256d arg = _mm256_div_pd(v, _mm256_sqrt_pd(idx));
        acc_prod = _mm256_mul_pd(acc_prod, vcos(arg));
    }
    double ss = hsum(acc_sq), pc = hprod(acc_prod);
    for (; i < n; ++i) {
        ss += x[i] * x[i];
        pc *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    *out_sum_sq = ss;
    *out_prod_cos = pc;
}

double schwefel_sum(const double* x, int n) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d s = vsin(_mm256_sqrt_pd(vabs(v)));
        acc = _mm256_fmadd_pd(v, s, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * std::sin(std::sqrt(std::fabs(x[i])));
    return s;
}

double michalewicz_sum(const double* x, int n, int m) {
    __m256d acc = _mm256_setzero_pd();
    const __m256d inv_pi = _mm256_set1_pd(1.0 / std::numbers::pi);
    const __m256d lane_offsets = _mm256_set_pd(4.0, 3.0, 2.0, 1.0);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane_offsets);
        const __m256d arg = _mm256_mul_pd(_mm256_mul_pd(idx, _mm256_mul_pd(v, v)), inv_pi);
        const __m256d t = vsin(arg);
        const __m256d p = _mm256_mul_pd(t, t);
        __m256d pw = _mm256_set1_pd(1.0);
        for (int k = 0; k < m; ++k) pw = _mm256_mul_pd(pw, p);
        acc = _mm256_fmadd_pd(vsin(v), pw, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double t = std::sin((i + 1) * x[i] * x[i] / std::numbers::pi);
        double p = t * t;
        double pw = 1.0;
        for (int k = 0; k < m; ++k) pw *= p;
        s += std::sin(x[i]) * pw;
    }
    return s;
}

}  // namespace

const Table* avx2_table() {
    static const Table table = {
        "avx2",
        sum_sq,
        rosenbrock,
        rastrigin_sum,
        ackley_parts,
        griewank_parts,
        schwefel_sum,
        michalewicz_sum,
    };
    return &table;
}

}  // namespace csopt::kernels

#else

namespace csopt::kernels {

const Table* avx2_table() { return nullptr; }

}  // namespace csopt::kernels

#endif
