#include "legmoment/power_sums.hpp"

#include "legmoment/simd.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace legmoment {

BigInt power_sum_closed(std::int64_t m, int a) {
    if (m < 0) throw std::invalid_argument("power_sum_closed: m must be non-negative");
    const BigInt M = m;
    switch (a) {
    case 1: return M * (M + 1) / 2;
    case 2: return M * (M + 1) * (2 * M + 1) / 6;
    case 3: return M * M * (M + 1) * (M + 1) / 4;
    case 4: return M * (M + 1) * (2 * M + 1) * (3 * M * M + 3 * M - 1) / 30;
    default:
        throw std::invalid_argument("power_sum_closed: exponent must be in 1..4, got " + std::to_string(a));
    }
}

namespace {

std::vector<BigInt> pascal_row(int n) {
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
    row[0] = 1;
    for (int k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
    return row;
}

} // namespace

PowerSumTable power_sum_recurrence(std::int64_t m, int a_max, Arithmetic mode, OpCounter* counter) {
    if (m < 0) throw std::invalid_argument("power_sum_recurrence: m must be non-negative");
    if (a_max < 0) throw std::invalid_argument("power_sum_recurrence: a_max must be non-negative");

    PowerSumTable t;
    t.m = m;
    t.a_max = a_max;
    t.mode = mode;
    t.values.resize(static_cast<std::size_t>(a_max) + 1);
    t.values[0] = static_cast<double>(m);

    constexpr std::string_view stage = "power_sums.recurrence";
    for (int a = 1; a <= a_max; ++a) {
        count_pow(counter, stage, 1);
        count_mul(counter, stage, static_cast<std::uint64_t>(a - 1) + 1); // C*H terms, final division
        count_add(counter, stage, static_cast<std::uint64_t>(a));
    }

    if (mode == Arithmetic::exact) {
        t.exact.resize(static_cast<std::size_t>(a_max) + 1);
        t.exact[0] = m;
        const BigInt m1 = BigInt(m) + 1;
        BigInt m1_pow = m1; // (m+1)^{a+1}, starts at a = 0
        for (int a = 1; a <= a_max; ++a) {
            m1_pow *= m1;
            const auto binom = pascal_row(a + 1);
            BigInt rhs = m1_pow - m1;
            for (int k = 1; k < a; ++k) rhs -= binom[k] * t.exact[k];
            t.exact[a] = rhs / (a + 1);
            t.values[a] = t.exact[a].convert_to<double>();
        }
        return t;
    }

    const double m1 = static_cast<double>(m) + 1.0;
    for (int a = 1; a <= a_max; ++a) {
        const auto binom = pascal_row(a + 1);
        double rhs = std::pow(m1, a + 1) - m1;
        for (int k = 1; k < a; ++k) rhs -= binom[k].convert_to<double>() * t.values[k];
        t.values[a] = rhs / (a + 1);
    }
    return t;
}

namespace {

// H_m(a) exactly; zero for m <= 0.
BigInt power_sum_exact(std::int64_t m, int a) {
    if (m <= 0) return 0;
    if (a == 0) return m;
    if (a <= 4) return power_sum_closed(m, a);
    return power_sum_recurrence(m, a, Arithmetic::exact).exact[a];
}

} // namespace

BigInt signed_range_power_sum(std::int64_t c, std::int64_t d, int a) {
    if (c > d) throw std::invalid_argument("signed_range_power_sum: requires c <= d");
    if (a < 0) throw std::invalid_argument("signed_range_power_sum: exponent must be non-negative");
    BigInt sum = 0;
    if (d >= 1) sum += power_sum_exact(d, a) - power_sum_exact(std::max<std::int64_t>(c, 1) - 1, a);
    if (c <= -1) {
        const std::int64_t top = -c;
        const std::int64_t bottom = -std::min<std::int64_t>(d, -1);
        BigInt neg = power_sum_exact(top, a) - power_sum_exact(bottom - 1, a);
        sum += (a % 2 == 0) ? neg : BigInt(-neg);
    }
    if (c <= 0 && d >= 0 && a == 0) sum += 1;
    return sum;
}

PowerSumLadder::PowerSumLadder(std::size_t m_max, int a_max, OpCounter* counter)
    : m_max_(m_max), a_max_(a_max), stride_(static_cast<std::size_t>(a_max) + 1),
      table_((m_max + 1) * stride_, Wide(0)) {
    if (a_max < 0) throw std::invalid_argument("PowerSumLadder: a_max must be non-negative");
    for (std::size_t m = 1; m <= m_max_; ++m) {
        const Wide base = static_cast<Wide>(m);
        Wide power = 1;
        for (int a = 0; a <= a_max_; ++a) {
            table_[m * stride_ + a] = table_[(m - 1) * stride_ + a] + power;
            power *= base;
        }
    }
    count_add(counter, "power_sums.ladder", m_max_ * stride_);
    count_mul(counter, "power_sums.ladder", m_max_ * static_cast<std::size_t>(a_max_));
}

Wide PowerSumLadder::range_sum(std::int64_t c, std::int64_t d, int a) const {
    Wide sum = 0;
    if (d >= 1) sum += h(static_cast<std::size_t>(d), a) - h(static_cast<std::size_t>(std::max<std::int64_t>(c, 1) - 1), a);
    if (c <= -1) {
        const auto top = static_cast<std::size_t>(-c);
        const auto bottom = static_cast<std::size_t>(-std::min<std::int64_t>(d, -1));
        const Wide neg = h(top, a) - h(bottom - 1, a);
        sum += (a % 2 == 0) ? neg : -neg;
    }
    if (c <= 0 && d >= 0 && a == 0) sum += 1;
    return sum;
}

ConversionMatrix::ConversionMatrix(int a_max) : a_max_(a_max) {
    if (a_max < 0) throw std::invalid_argument("ConversionMatrix: a_max must be non-negative");
    const std::size_t n = static_cast<std::size_t>(a_max) + 1;
    exact_.resize(n * (n + 1) / 2);
    wide_.resize(exact_.size());
    hi_.resize(exact_.size());
    lo_.resize(exact_.size());

    // Stirling numbers of the second kind, row by row.
    std::vector<BigInt> s2(n, 0), next(n, 0);
    s2[0] = 1;
    std::vector<BigInt> factorial(n);
    factorial[0] = 1;
    for (std::size_t k = 1; k < n; ++k) factorial[k] = factorial[k - 1] * static_cast<unsigned>(k);

    for (int a = 0; a <= a_max; ++a) {
        if (a > 0) {
            next.assign(n, 0);
            for (int k = 1; k <= a; ++k) next[k] = s2[k] * k + s2[k - 1];
            s2.swap(next);
        }
        for (int k = 0; k <= a; ++k) {
            BigInt v = s2[k] * factorial[k];
            if ((a - k) % 2 != 0) v = -v;
            exact_[index(a, k)] = v;
            wide_[index(a, k)] = to_wide(v);
            const double hi = v.convert_to<double>();
            hi_[index(a, k)] = hi;
            // Beyond roughly a = 170 the entries leave the double range.
            lo_[index(a, k)] = std::isfinite(hi) ? BigInt(v - BigInt(hi)).convert_to<double>() : 0.0;
        }
    }
}

std::shared_ptr<const ConversionMatrix> ConversionMatrix::get(int a_max) {
    static std::mutex mu;
    static std::shared_ptr<const ConversionMatrix> cached;
    std::lock_guard lock(mu);
    if (!cached || cached->a_max() < a_max) {
        // Grow in steps so repeated slightly-larger requests stay cheap.
        const int target = std::max(a_max, cached ? 2 * cached->a_max() : 40);
        cached = std::make_shared<const ConversionMatrix>(target);
    }
    return cached;
}

CascadeState cascade_accumulate(std::span<const double> g, int a_max, OpCounter* counter) {
    if (g.empty()) throw std::invalid_argument("cascade_accumulate: empty signal");
    if (a_max < 0) throw std::invalid_argument("cascade_accumulate: a_max must be non-negative");
    using simd::kLanes;
    const std::size_t n = g.size();
    const std::size_t depth = static_cast<std::size_t>(a_max) + 1;
    std::vector<double> x_hi(n * kLanes, 0.0), x_lo(n * kLanes, 0.0);
    for (std::size_t t = 0; t < n; ++t) x_hi[t * kLanes] = g[t];
    std::vector<double> acc_hi(depth * kLanes), acc_lo(depth * kLanes);
    simd::kernels().cascade(x_hi.data(), x_lo.data(), n, depth, acc_hi.data(), acc_lo.data());
    count_add(counter, "cascade.accumulate", n * depth);

    CascadeState st{n, a_max, std::vector<double>(depth), std::vector<double>(depth)};
    for (std::size_t k = 0; k < depth; ++k) {
        st.hi[k] = acc_hi[k * kLanes];
        st.lo[k] = acc_lo[k * kLanes];
    }
    return st;
}

ExactCascadeState cascade_accumulate_exact(std::span<const std::int64_t> g, int a_max, OpCounter* counter) {
    if (g.empty()) throw std::invalid_argument("cascade_accumulate_exact: empty signal");
    if (a_max < 0) throw std::invalid_argument("cascade_accumulate_exact: a_max must be non-negative");
    const std::size_t depth = static_cast<std::size_t>(a_max) + 1;
    ExactCascadeState st{g.size(), a_max, std::vector<BigInt>(depth, 0)};
    auto& acc = st.accumulators;
    for (std::size_t t = g.size(); t-- > 0;) {
        acc[0] += g[t];
        for (std::size_t k = 1; k < depth; ++k) acc[k] += acc[k - 1];
    }
    count_add(counter, "cascade.accumulate", g.size() * depth);
    return st;
}

std::vector<Wide> cascade_convert(const CascadeState& state, OpCounter* counter) {
    const auto R = ConversionMatrix::get(state.a_max);
    using simd::kLanes;
    const std::size_t depth = static_cast<std::size_t>(state.a_max) + 1;
    std::vector<double> c_hi(depth * kLanes, 0.0), c_lo(depth * kLanes, 0.0);
    for (std::size_t k = 0; k < depth; ++k) {
        c_hi[k * kLanes] = state.hi[k];
        c_lo[k * kLanes] = state.lo[k];
    }
    std::vector<Wide> s(depth);
    double out_hi[kLanes], out_lo[kLanes];
    for (int a = 0; a <= state.a_max; ++a) {
        simd::kernels().dot(R->row_hi(a), R->row_lo(a), c_hi.data(), c_lo.data(), static_cast<std::size_t>(a) + 1,
                            out_hi, out_lo);
        s[a] = static_cast<Wide>(out_hi[0]) + static_cast<Wide>(out_lo[0]);
        count_mul(counter, "cascade.convert", static_cast<std::uint64_t>(a) + 1);
        count_add(counter, "cascade.convert", static_cast<std::uint64_t>(a));
    }
    return s;
}

std::vector<BigInt> cascade_convert(const ExactCascadeState& state, OpCounter* counter) {
    const auto R = ConversionMatrix::get(state.a_max);
    std::vector<BigInt> s(static_cast<std::size_t>(state.a_max) + 1);
    for (int a = 0; a <= state.a_max; ++a) {
        BigInt acc = 0;
        for (int k = 0; k <= a; ++k) acc += R->exact(a, k) * state.accumulators[k];
        s[a] = std::move(acc);
        count_mul(counter, "cascade.convert", static_cast<std::uint64_t>(a) + 1);
        count_add(counter, "cascade.convert", static_cast<std::uint64_t>(a));
    }
    return s;
}

std::vector<Wide> cascade_power_sums(std::span<const double> g, int a_max, OpCounter* counter) {
    return cascade_convert(cascade_accumulate(g, a_max, counter), counter);
}

std::vector<BigInt> cascade_power_sums_exact(std::span<const std::int64_t> g, int a_max, OpCounter* counter) {
    return cascade_convert(cascade_accumulate_exact(g, a_max, counter), counter);
}

} // namespace legmoment
