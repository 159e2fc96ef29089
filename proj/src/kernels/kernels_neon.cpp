#include "kernels/kernels_impl.hpp"

#include <arm_neon.h>

namespace legmoment::simd::detail {

namespace {

static_assert(kLanes == 4, "NEON cascade splits a batch into two float64x2 halves");

inline void dd_add(float64x2_t& a_hi, float64x2_t& a_lo, float64x2_t b_hi, float64x2_t b_lo) {
    const float64x2_t s = vaddq_f64(a_hi, b_hi);
    const float64x2_t v = vsubq_f64(s, a_hi);
    float64x2_t e = vaddq_f64(vsubq_f64(a_hi, vsubq_f64(s, v)), vsubq_f64(b_hi, v));
    e = vaddq_f64(e, vaddq_f64(a_lo, b_lo));
    const float64x2_t hi = vaddq_f64(s, e);
    a_lo = vsubq_f64(e, vsubq_f64(hi, s));
    a_hi = hi;
}

inline void split(float64x2_t x, float64x2_t& hi, float64x2_t& lo) {
    const float64x2_t t = vmulq_f64(vdupq_n_f64(134217729.0), x);
    hi = vsubq_f64(t, vsubq_f64(t, x));
    lo = vsubq_f64(x, hi);
}

// Plain vmulq/vaddq throughout; a fused vfmaq would round differently from
// the scalar reference.
inline void dd_mul(float64x2_t a_hi, float64x2_t a_lo, float64x2_t b_hi, float64x2_t b_lo, float64x2_t& p_hi,
                   float64x2_t& p_lo) {
    float64x2_t ah, al, bh, bl;
    split(a_hi, ah, al);
    split(b_hi, bh, bl);
    const float64x2_t p = vmulq_f64(a_hi, b_hi);
    float64x2_t e = vaddq_f64(vaddq_f64(vsubq_f64(vmulq_f64(ah, bh), p), vmulq_f64(ah, bl)), vmulq_f64(al, bh));
    e = vaddq_f64(e, vmulq_f64(al, bl));
    e = vaddq_f64(e, vaddq_f64(vmulq_f64(a_hi, b_lo), vmulq_f64(a_lo, b_hi)));
    p_hi = vaddq_f64(p, e);
    p_lo = vsubq_f64(e, vsubq_f64(p_hi, p));
}

void cascade_neon(const double* x_hi, const double* x_lo, std::size_t n, std::size_t depth,
                  double* acc_hi, double* acc_lo) {
    const float64x2_t zero = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < depth * kLanes; k += 2) {
        vst1q_f64(acc_hi + k, zero);
        vst1q_f64(acc_lo + k, zero);
    }
    for (std::size_t t = n; t-- > 0;) {
        for (std::size_t half = 0; half < kLanes; half += 2) {
            float64x2_t prev_hi = vld1q_f64(acc_hi + half);
            float64x2_t prev_lo = vld1q_f64(acc_lo + half);
            dd_add(prev_hi, prev_lo, vld1q_f64(x_hi + t * kLanes + half), vld1q_f64(x_lo + t * kLanes + half));
            vst1q_f64(acc_hi + half, prev_hi);
            vst1q_f64(acc_lo + half, prev_lo);
            for (std::size_t k = 1; k < depth; ++k) {
                float64x2_t hi = vld1q_f64(acc_hi + k * kLanes + half);
                float64x2_t lo = vld1q_f64(acc_lo + k * kLanes + half);
                dd_add(hi, lo, prev_hi, prev_lo);
                vst1q_f64(acc_hi + k * kLanes + half, hi);
                vst1q_f64(acc_lo + k * kLanes + half, lo);
                prev_hi = hi;
                prev_lo = lo;
            }
        }
    }
}

void dot_neon(const double* w_hi, const double* w_lo, const double* acc_hi, const double* acc_lo,
              std::size_t terms, double* out_hi, double* out_lo) {
    for (std::size_t half = 0; half < kLanes; half += 2) {
        float64x2_t s_hi = vdupq_n_f64(0.0), s_lo = vdupq_n_f64(0.0);
        for (std::size_t k = 0; k < terms; ++k) {
            float64x2_t p_hi, p_lo;
            dd_mul(vdupq_n_f64(w_hi[k]), vdupq_n_f64(w_lo[k]), vld1q_f64(acc_hi + k * kLanes + half),
                   vld1q_f64(acc_lo + k * kLanes + half), p_hi, p_lo);
            dd_add(s_hi, s_lo, p_hi, p_lo);
        }
        vst1q_f64(out_hi + half, s_hi);
        vst1q_f64(out_lo + half, s_lo);
    }
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t a = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // vmulq + vaddq, not vfmaq: must round like the scalar reference.
        const float64x2_t prod = vmulq_f64(a, vld1q_f64(x + i));
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
    }
    for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

} // namespace

const KernelTable& neon_kernels() {
    static const KernelTable table{&cascade_neon, &dot_neon, &axpy_neon};
    return table;
}

} // namespace legmoment::simd::detail
