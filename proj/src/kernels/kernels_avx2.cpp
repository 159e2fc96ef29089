#include "kernels/kernels_impl.hpp"

#include <immintrin.h>

namespace legmoment::simd::detail {

namespace {

static_assert(kLanes == 4, "AVX2 cascade assumes one ymm register per accumulator");

inline void dd_add(__m256d& a_hi, __m256d& a_lo, __m256d b_hi, __m256d b_lo) {
    const __m256d s = _mm256_add_pd(a_hi, b_hi);
    const __m256d v = _mm256_sub_pd(s, a_hi);
    __m256d e = _mm256_add_pd(_mm256_sub_pd(a_hi, _mm256_sub_pd(s, v)), _mm256_sub_pd(b_hi, v));
    e = _mm256_add_pd(e, _mm256_add_pd(a_lo, b_lo));
    const __m256d hi = _mm256_add_pd(s, e);
    a_lo = _mm256_sub_pd(e, _mm256_sub_pd(hi, s));
    a_hi = hi;
}

inline void split(__m256d x, __m256d& hi, __m256d& lo) {
    const __m256d t = _mm256_mul_pd(_mm256_set1_pd(134217729.0), x);
    hi = _mm256_sub_pd(t, _mm256_sub_pd(t, x));
    lo = _mm256_sub_pd(x, hi);
}

inline void dd_mul(__m256d a_hi, __m256d a_lo, __m256d b_hi, __m256d b_lo, __m256d& p_hi, __m256d& p_lo) {
    __m256d ah, al, bh, bl;
    split(a_hi, ah, al);
    split(b_hi, bh, bl);
    const __m256d p = _mm256_mul_pd(a_hi, b_hi);
    __m256d e = _mm256_add_pd(_mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(ah, bh), p), _mm256_mul_pd(ah, bl)),
                              _mm256_mul_pd(al, bh));
    e = _mm256_add_pd(e, _mm256_mul_pd(al, bl));
    e = _mm256_add_pd(e, _mm256_add_pd(_mm256_mul_pd(a_hi, b_lo), _mm256_mul_pd(a_lo, b_hi)));
    p_hi = _mm256_add_pd(p, e);
    p_lo = _mm256_sub_pd(e, _mm256_sub_pd(p_hi, p));
}

void cascade_avx2(const double* x_hi, const double* x_lo, std::size_t n, std::size_t depth,
                  double* acc_hi, double* acc_lo) {
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t k = 0; k < depth; ++k) {
        _mm256_storeu_pd(acc_hi + k * kLanes, zero);
        _mm256_storeu_pd(acc_lo + k * kLanes, zero);
    }
    for (std::size_t t = n; t-- > 0;) {
        __m256d prev_hi = _mm256_loadu_pd(acc_hi);
        __m256d prev_lo = _mm256_loadu_pd(acc_lo);
        dd_add(prev_hi, prev_lo, _mm256_loadu_pd(x_hi + t * kLanes), _mm256_loadu_pd(x_lo + t * kLanes));
        _mm256_storeu_pd(acc_hi, prev_hi);
        _mm256_storeu_pd(acc_lo, prev_lo);
        for (std::size_t k = 1; k < depth; ++k) {
            __m256d hi = _mm256_loadu_pd(acc_hi + k * kLanes);
            __m256d lo = _mm256_loadu_pd(acc_lo + k * kLanes);
            dd_add(hi, lo, prev_hi, prev_lo);
            _mm256_storeu_pd(acc_hi + k * kLanes, hi);
            _mm256_storeu_pd(acc_lo + k * kLanes, lo);
            prev_hi = hi;
            prev_lo = lo;
        }
    }
}

void dot_avx2(const double* w_hi, const double* w_lo, const double* acc_hi, const double* acc_lo,
              std::size_t terms, double* out_hi, double* out_lo) {
    __m256d s_hi = _mm256_setzero_pd(), s_lo = _mm256_setzero_pd();
    for (std::size_t k = 0; k < terms; ++k) {
        __m256d p_hi, p_lo;
        dd_mul(_mm256_set1_pd(w_hi[k]), _mm256_set1_pd(w_lo[k]), _mm256_loadu_pd(acc_hi + k * kLanes),
               _mm256_loadu_pd(acc_lo + k * kLanes), p_hi, p_lo);
        dd_add(s_hi, s_lo, p_hi, p_lo);
    }
    _mm256_storeu_pd(out_hi, s_hi);
    _mm256_storeu_pd(out_lo, s_lo);
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d a = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(a, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

} // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{&cascade_avx2, &dot_avx2, &axpy_avx2};
    return table;
}

} // namespace legmoment::simd::detail
