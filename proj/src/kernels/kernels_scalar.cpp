#include "kernels/kernels_impl.hpp"

#include <cstring>

namespace legmoment::simd::detail {

namespace {

// Double-double addition (Knuth TwoSum, then renormalize). Operation order
// is mirrored exactly by the vector kernels.
inline void dd_add(double& a_hi, double& a_lo, double b_hi, double b_lo) {
    const double s = a_hi + b_hi;
    const double v = s - a_hi;
    double e = (a_hi - (s - v)) + (b_hi - v);
    e = e + (a_lo + b_lo);
    const double hi = s + e;
    a_lo = e - (hi - s);
    a_hi = hi;
}

// Veltkamp split constant 2^27 + 1.
constexpr double kSplit = 134217729.0;

inline void split(double x, double& hi, double& lo) {
    const double t = kSplit * x;
    hi = t - (t - x);
    lo = x - hi;
}

// (a_hi + a_lo) * (b_hi + b_lo) as a double-double.
inline void dd_mul(double a_hi, double a_lo, double b_hi, double b_lo, double& p_hi, double& p_lo) {
    double ah, al, bh, bl;
    split(a_hi, ah, al);
    split(b_hi, bh, bl);
    const double p = a_hi * b_hi;
    double e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    e = e + (a_hi * b_lo + a_lo * b_hi);
    p_hi = p + e;
    p_lo = e - (p_hi - p);
}

void cascade_scalar(const double* x_hi, const double* x_lo, std::size_t n, std::size_t depth,
                    double* acc_hi, double* acc_lo) {
    std::memset(acc_hi, 0, depth * kLanes * sizeof(double));
    std::memset(acc_lo, 0, depth * kLanes * sizeof(double));
    for (std::size_t t = n; t-- > 0;) {
        for (std::size_t l = 0; l < kLanes; ++l)
            dd_add(acc_hi[l], acc_lo[l], x_hi[t * kLanes + l], x_lo[t * kLanes + l]);
        for (std::size_t k = 1; k < depth; ++k) {
            for (std::size_t l = 0; l < kLanes; ++l) {
                dd_add(acc_hi[k * kLanes + l], acc_lo[k * kLanes + l],
                       acc_hi[(k - 1) * kLanes + l], acc_lo[(k - 1) * kLanes + l]);
            }
        }
    }
}

void dot_scalar(const double* w_hi, const double* w_lo, const double* acc_hi, const double* acc_lo,
                std::size_t terms, double* out_hi, double* out_lo) {
    for (std::size_t l = 0; l < kLanes; ++l) {
        double s_hi = 0.0, s_lo = 0.0;
        for (std::size_t k = 0; k < terms; ++k) {
            double p_hi, p_lo;
            dd_mul(w_hi[k], w_lo[k], acc_hi[k * kLanes + l], acc_lo[k * kLanes + l], p_hi, p_lo);
            dd_add(s_hi, s_lo, p_hi, p_lo);
        }
        out_hi[l] = s_hi;
        out_lo[l] = s_lo;
    }
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{&cascade_scalar, &dot_scalar, &axpy_scalar};
    return table;
}

} // namespace legmoment::simd::detail
