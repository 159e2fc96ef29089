#pragma once

#include "legmoment/image.hpp"
#include "legmoment/numeric.hpp"
#include "legmoment/op_counter.hpp"
#include "legmoment/power_sums.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace legmoment {

enum class Parity { odd, even };

/// A signal split about its center into symmetric and antisymmetric halves.
///
/// Odd length 2L+1 (1-based samples):  antisym[i] = f(L+1+i) - f(L+1-i),
///                                     sym[i]     = f(L+1+i) + f(L+1-i),
///                                     center     = f(L+1).
/// Even length 2L:                     antisym[i] = f(L+i) - f(L+1-i),
///                                     sym[i]     = f(L+i) + f(L+1-i),
/// for i = 1..L (stored 0-based). The even case also carries the length-2L
/// interleaved forms with the folded samples at odd positions and zeros at
/// even positions.
struct FoldedSignal {
    Parity parity = Parity::odd;
    std::size_t half = 0;
    std::vector<Wide> sym;
    std::vector<Wide> antisym;
    Wide center = 0;
    std::vector<Wide> interleaved_sym;
    std::vector<Wide> interleaved_antisym;

    /// Inverse of the fold.
    std::vector<Wide> unfold() const;
};

FoldedSignal fold(std::span<const Wide> values);
FoldedSignal fold(std::span<const double> values);
inline FoldedSignal fold(const Signal1D& s) { return fold(s.values()); }

/// G(a) = sum_i x_i^a f(x_i), a = 0..a_max, on the n-point [-1,1] grid.
struct GVector {
    std::size_t n = 0;
    int a_max = 0;
    std::vector<Wide> values;
};

/// Per-(length, order) precomputation shared by every signal of that length:
/// reciprocal scale powers, the cascade basis change, and (on request) the
/// constant-signal table and the run-length power-sum ladder. Immutable after
/// construction, so one engine may serve many worker threads.
class GVectorEngine {
public:
    struct Options {
        CascadeSchedule schedule = CascadeSchedule::shared;
        bool constant_path = false; ///< precompute the constant-signal table
        bool binary_path = false;   ///< precompute the run-length ladder
    };

    /// Maximum number of signals per general-path batch.
    static constexpr std::size_t kBatch = 2;

    GVectorEngine(std::size_t n, int a_max, Options opts, OpCounter* setup_counter = nullptr);

    std::size_t length() const { return n_; }
    int a_max() const { return a_max_; }
    Parity parity() const { return parity_; }
    CascadeSchedule schedule() const { return opts_.schedule; }

    /// Fold + cascade + basis change + scaling for up to kBatch signals at
    /// once (they share one vector kernel call). Each span must have length n.
    void general(std::span<const std::span<const Wide>> signals, std::span<GVector> out,
                 OpCounter* counter) const;
    GVector general(std::span<const Wide> signal, OpCounter* counter) const;

    /// Same values via bigint cascades; `signal` must be integer-valued.
    GVector general_exact(std::span<const std::int64_t> signal, OpCounter* counter) const;

    GVector constant(double level, OpCounter* counter) const;
    GVector binary_runs(std::span<const Run> runs, double level, OpCounter* counter) const;

private:
    // Reciprocal of the odd/even scale denominator raised to a.
    Wide inv_scale(int a) const { return inv_scale_pow_[static_cast<std::size_t>(a)]; }

    std::size_t n_;
    int a_max_;
    Options opts_;
    Parity parity_;
    std::size_t half_;
    std::int64_t scale_denominator_; // L (odd) or 2L-1 (even)
    std::vector<Wide> inv_scale_pow_;
    std::shared_ptr<const ConversionMatrix> basis_;
    std::vector<Wide> unit_constant_;              // G for level 1
    std::optional<PowerSumLadder> ladder_;
};

GVector g_vector_general(std::span<const double> s, int a_max, OpCounter* counter = nullptr,
                         CascadeSchedule schedule = CascadeSchedule::shared);
GVector g_vector_general(std::span<const Wide> s, int a_max, OpCounter* counter = nullptr,
                         CascadeSchedule schedule = CascadeSchedule::shared);
GVector g_vector_exact(std::span<const std::int64_t> s, int a_max, OpCounter* counter = nullptr);
GVector g_vector_constant(std::size_t n, double level, int a_max, OpCounter* counter = nullptr);
/// Throws std::invalid_argument for overlapping or out-of-range runs.
GVector g_vector_binary_runs(std::size_t n, std::span<const Run> runs, double level, int a_max,
                             OpCounter* counter = nullptr);

} // namespace legmoment
