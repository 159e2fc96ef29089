#pragma once

#include "legmoment/numeric.hpp"
#include "legmoment/op_counter.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace legmoment {

// ---------------------------------------------------------------------------
// Integer power sums H_m(a) = 1^a + 2^a + ... + m^a
// ---------------------------------------------------------------------------

/// Closed forms for a = 1..4. Throws std::invalid_argument otherwise.
BigInt power_sum_closed(std::int64_t m, int a);

struct PowerSumTable {
    std::int64_t m = 0;
    int a_max = 0;
    Arithmetic mode = Arithmetic::approximate;
    std::vector<BigInt> exact; ///< populated in exact mode only
    std::vector<double> values;

    double operator[](int a) const { return values[static_cast<std::size_t>(a)]; }
};

/// H_m(0..a_max) by the binomial recurrence
///   sum_{k=1}^{a} C(a+1, k) H_m(k) = (m+1)^{a+1} - (m+1),
/// solved for the leading term. H_m(0) = m.
PowerSumTable power_sum_recurrence(std::int64_t m, int a_max, Arithmetic mode,
                                   OpCounter* counter = nullptr);

/// sum_{j=c}^{d} j^a with 0^0 = 1. Requires c <= d.
BigInt signed_range_power_sum(std::int64_t c, std::int64_t d, int a);

/// Prefix table H_m(a) for m = 0..m_max, a = 0..a_max, built by running
/// sums of positive powers (no cancellation). Shared read-only by the
/// run-length path.
class PowerSumLadder {
public:
    PowerSumLadder(std::size_t m_max, int a_max, OpCounter* counter = nullptr);

    std::size_t m_max() const { return m_max_; }
    int a_max() const { return a_max_; }
    Wide h(std::size_t m, int a) const { return table_[m * stride_ + static_cast<std::size_t>(a)]; }

    /// sum_{j=c}^{d} j^a; |c|, |d| <= m_max.
    Wide range_sum(std::int64_t c, std::int64_t d, int a) const;

private:
    std::size_t m_max_;
    int a_max_;
    std::size_t stride_;
    std::vector<Wide> table_;
};

// ---------------------------------------------------------------------------
// Weighted power sums S(a) = sum_{i=1}^{n} i^a g_i, addition-only stage
// ---------------------------------------------------------------------------

enum class CascadeSchedule {
    /// One pass with a_max+1 cascaded accumulators serves every exponent.
    shared,
    /// One full-depth pass per exponent. Same values, (a_max+1)x the
    /// additions; this is the cost model behind the published operation
    /// counts.
    per_exponent,
};

/// Change of basis from cascade accumulators to power sums.
///
/// Feeding g_n, g_{n-1}, ..., g_1 through k cascaded accumulators leaves
///   c_k = sum_i C(i+k-1, k) g_i,
/// and C(i+k-1, k) is the rising factorial i^(k) / k!. Since
///   i^a = sum_k (-1)^(a-k) S2(a,k) i^(k),
/// we get S(a) = sum_{k<=a} R[a][k] c_k with integer
///   R[a][k] = (-1)^(a-k) S2(a,k) k!.
/// The matrix is lower triangular with diagonal a! and does not depend on
/// the signal length.
class ConversionMatrix {
public:
    explicit ConversionMatrix(int a_max);

    int a_max() const { return a_max_; }
    const BigInt& exact(int a, int k) const { return exact_[index(a, k)]; }
    Wide wide(int a, int k) const { return wide_[index(a, k)]; }
    /// Row a as a double-double pair (k = 0..a contiguous).
    const double* row_hi(int a) const { return hi_.data() + index(a, 0); }
    const double* row_lo(int a) const { return lo_.data() + index(a, 0); }

    /// Cached, thread-safe; the returned matrix covers at least `a_max`.
    static std::shared_ptr<const ConversionMatrix> get(int a_max);

private:
    std::size_t index(int a, int k) const {
        return static_cast<std::size_t>(a) * (a + 1) / 2 + static_cast<std::size_t>(k);
    }
    int a_max_;
    std::vector<BigInt> exact_;
    std::vector<Wide> wide_;
    std::vector<double> hi_, lo_;
};

/// Stage-1 output for one signal.
struct CascadeState {
    std::size_t length = 0;
    int a_max = 0;
    std::vector<double> hi, lo; ///< c_0..c_{a_max} as double-double pairs

    Wide accumulator(int k) const { return static_cast<Wide>(hi[k]) + static_cast<Wide>(lo[k]); }
};

struct ExactCascadeState {
    std::size_t length = 0;
    int a_max = 0;
    std::vector<BigInt> accumulators;
};

/// Stage 1: additions only (counted under "cascade.accumulate").
CascadeState cascade_accumulate(std::span<const double> g, int a_max, OpCounter* counter = nullptr);
ExactCascadeState cascade_accumulate_exact(std::span<const std::int64_t> g, int a_max,
                                           OpCounter* counter = nullptr);

/// Stage 2: O(a_max^2) multiplications (counted under "cascade.convert").
std::vector<Wide> cascade_convert(const CascadeState& state, OpCounter* counter = nullptr);
std::vector<BigInt> cascade_convert(const ExactCascadeState& state, OpCounter* counter = nullptr);

/// S(0..a_max). Throws std::invalid_argument on an empty signal.
std::vector<Wide> cascade_power_sums(std::span<const double> g, int a_max,
                                     OpCounter* counter = nullptr);
std::vector<BigInt> cascade_power_sums_exact(std::span<const std::int64_t> g, int a_max,
                                             OpCounter* counter = nullptr);

} // namespace legmoment
