#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Runtime-selected arithmetic kernels.
//
// Every kernel has a portable scalar reference and, where the target allows,
// a vector variant. Vector lanes always run over independent signals (or
// independent output pixels), never across a reduction, so each variant
// performs the same IEEE operations in the same order as the scalar
// reference and the results are bit-identical. tests/test_kernels.cpp holds
// the equivalence checks.

namespace legmoment::simd {

/// Batch width of the cascade kernel, fixed across ISAs so that work
/// partitioning never depends on which kernel is active.
inline constexpr std::size_t kLanes = 4;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

/// Kernel family in use. Chosen once from the CPU, overridable through the
/// LEGMOMENT_ISA environment variable (scalar|avx2|neon).
Isa active_isa();
/// Test hook; throws std::invalid_argument if `isa` is not available.
void set_active_isa(Isa isa);

struct KernelTable {
    /// Cascaded double-double prefix accumulation over kLanes signals.
    ///
    /// x_hi/x_lo hold n samples per lane, sample t of lane l at
    /// [t * kLanes + l]. Samples are consumed from t = n-1 down to t = 0.
    /// After each sample, accumulator 0 adds the sample and accumulator k
    /// adds accumulator k-1 (its updated value), for k = 1..depth-1. The
    /// final accumulators are written to acc_hi/acc_lo, layout
    /// [k * kLanes + l]. Additions only.
    void (*cascade)(const double* x_hi, const double* x_lo, std::size_t n, std::size_t depth,
                    double* acc_hi, double* acc_lo);

    /// Double-double weighted sums over kLanes columns:
    ///   out[l] = sum_{k < terms} w[k] * acc[k * kLanes + l],
    /// with w and acc given as hi/lo pairs and k taken in ascending order.
    /// Products use Dekker's split, so no variant relies on fused multiply-add.
    void (*dot)(const double* w_hi, const double* w_lo, const double* acc_hi, const double* acc_lo,
                std::size_t terms, double* out_hi, double* out_lo);

    /// y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& kernels(Isa isa);
inline const KernelTable& kernels() { return kernels(active_isa()); }

} // namespace legmoment::simd
