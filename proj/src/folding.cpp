#include "legmoment/folding.hpp"

#include "legmoment/simd.hpp"

#include <cmath>
#include <stdexcept>

namespace legmoment {

namespace {

template <class T>
FoldedSignal fold_impl(std::span<const T> f) {
    const std::size_t n = f.size();
    if (n < 2) throw std::invalid_argument("fold: signal length must be at least 2");
    FoldedSignal out;
    out.half = n / 2;
    out.parity = (n % 2 == 1) ? Parity::odd : Parity::even;
    const std::size_t L = out.half;
    out.sym.resize(L);
    out.antisym.resize(L);
    for (std::size_t i = 1; i <= L; ++i) {
        const Wide upper = (out.parity == Parity::odd) ? f[L + i] : f[L + i - 1];
        const Wide lower = f[L - i];
        out.antisym[i - 1] = upper - lower;
        out.sym[i - 1] = upper + lower;
    }
    if (out.parity == Parity::odd) {
        out.center = f[L];
    } else {
        out.interleaved_sym.assign(2 * L, Wide(0));
        out.interleaved_antisym.assign(2 * L, Wide(0));
        for (std::size_t i = 0; i < L; ++i) {
            out.interleaved_sym[2 * i] = out.sym[i];
            out.interleaved_antisym[2 * i] = out.antisym[i];
        }
    }
    return out;
}

inline void split(Wide w, double& hi, double& lo) {
    hi = static_cast<double>(w);
    lo = static_cast<double>(w - static_cast<Wide>(hi));
}

std::int64_t floor_div2(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }
std::int64_t ceil_div2(std::int64_t v) { return v >= 0 ? (v + 1) / 2 : -((-v) / 2); }

} // namespace

std::vector<Wide> FoldedSignal::unfold() const {
    const std::size_t L = half;
    const std::size_t n = parity == Parity::odd ? 2 * L + 1 : 2 * L;
    std::vector<Wide> f(n);
    for (std::size_t i = 1; i <= L; ++i) {
        const Wide upper = (sym[i - 1] + antisym[i - 1]) / 2;
        const Wide lower = (sym[i - 1] - antisym[i - 1]) / 2;
        f[parity == Parity::odd ? L + i : L + i - 1] = upper;
        f[L - i] = lower;
    }
    if (parity == Parity::odd) f[L] = center;
    return f;
}

FoldedSignal fold(std::span<const Wide> values) { return fold_impl(values); }
FoldedSignal fold(std::span<const double> values) { return fold_impl(values); }

GVectorEngine::GVectorEngine(std::size_t n, int a_max, Options opts, OpCounter* setup_counter)
    : n_(n), a_max_(a_max), opts_(opts) {
    if (n < 2) throw std::invalid_argument("GVectorEngine: signal length must be at least 2");
    if (a_max < 0) throw std::invalid_argument("GVectorEngine: a_max must be non-negative");
    parity_ = (n % 2 == 1) ? Parity::odd : Parity::even;
    half_ = n / 2;
    scale_denominator_ = parity_ == Parity::odd ? static_cast<std::int64_t>(half_)
                                                : static_cast<std::int64_t>(2 * half_ - 1);

    inv_scale_pow_.resize(static_cast<std::size_t>(a_max) + 1);
    const Wide inv = Wide(1) / static_cast<Wide>(scale_denominator_);
    inv_scale_pow_[0] = 1;
    for (int a = 1; a <= a_max; ++a) inv_scale_pow_[a] = inv_scale_pow_[a - 1] * inv;
    count_mul(setup_counter, "gvector.setup", static_cast<std::uint64_t>(a_max) + 1);

    basis_ = ConversionMatrix::get(a_max);

    if (opts_.constant_path) {
        unit_constant_.assign(static_cast<std::size_t>(a_max) + 1, Wide(0));
        const auto L = static_cast<std::int64_t>(half_);
        if (parity_ == Parity::odd) {
            const auto H = power_sum_recurrence(L, a_max, Arithmetic::exact, setup_counter);
            for (int a = 2; a <= a_max; a += 2) unit_constant_[a] = 2 * to_wide(H.exact[a]) * inv_scale(a);
        } else {
            const auto H2 = power_sum_recurrence(2 * L, a_max, Arithmetic::exact, setup_counter);
            const auto H1 = power_sum_recurrence(L, a_max, Arithmetic::exact, setup_counter);
            for (int a = 2; a <= a_max; a += 2) {
                const BigInt odd_powers = H2.exact[a] - (BigInt(1) << a) * H1.exact[a];
                unit_constant_[a] = 2 * to_wide(odd_powers) * inv_scale(a);
            }
        }
        unit_constant_[0] = static_cast<Wide>(n);
        count_mul(setup_counter, "gvector.setup", static_cast<std::uint64_t>(a_max / 2) * 2);
    }
    if (opts_.binary_path) {
        const std::size_t m_max = parity_ == Parity::odd ? half_ : 2 * half_ - 1;
        ladder_.emplace(m_max, a_max, setup_counter);
    }
}

void GVectorEngine::general(std::span<const std::span<const Wide>> signals, std::span<GVector> out,
                            OpCounter* counter) const {
    using simd::kLanes;
    static_assert(kBatch * 2 <= kLanes);
    if (signals.size() > kBatch || out.size() < signals.size())
        throw std::invalid_argument("GVectorEngine::general: bad batch size");

    const std::size_t L = half_;
    const bool odd = parity_ == Parity::odd;
    const std::size_t len = odd ? L : 2 * L;
    const std::size_t depth = static_cast<std::size_t>(a_max_) + 1;

    std::vector<double> x_hi(len * kLanes, 0.0), x_lo(len * kLanes, 0.0);
    std::vector<Wide> centers(signals.size(), Wide(0));
    for (std::size_t b = 0; b < signals.size(); ++b) {
        const auto f = signals[b];
        if (f.size() != n_) throw std::invalid_argument("GVectorEngine::general: signal length mismatch");
        for (std::size_t i = 1; i <= L; ++i) {
            const Wide upper = odd ? f[L + i] : f[L + i - 1];
            const Wide lower = f[L - i];
            const std::size_t t = odd ? i - 1 : 2 * (i - 1);
            split(upper - lower, x_hi[t * kLanes + 2 * b], x_lo[t * kLanes + 2 * b]);
            split(upper + lower, x_hi[t * kLanes + 2 * b + 1], x_lo[t * kLanes + 2 * b + 1]);
        }
        if (odd) centers[b] = f[L];
        count_add(counter, "fold", 2 * L);
    }

    std::vector<double> acc_hi(depth * kLanes), acc_lo(depth * kLanes);
    const auto& kern = simd::kernels();
    double dot_hi[kLanes], dot_lo[kLanes];
    // Converts exponent a for every lane at once; even exponents come from the
    // symmetric lane of each signal, odd ones from the antisymmetric lane.
    auto convert = [&](int a) {
        kern.dot(basis_->row_hi(a), basis_->row_lo(a), acc_hi.data(), acc_lo.data(), static_cast<std::size_t>(a) + 1,
                 dot_hi, dot_lo);
        for (std::size_t b = 0; b < signals.size(); ++b) {
            const std::size_t lane = 2 * b + (a % 2 == 0 ? 1 : 0);
            out[b].values[a] = static_cast<Wide>(dot_hi[lane]) + static_cast<Wide>(dot_lo[lane]);
            count_mul(counter, "cascade.convert", static_cast<std::uint64_t>(a) + 1);
            count_add(counter, "cascade.convert", static_cast<std::uint64_t>(a));
        }
    };

    for (std::size_t b = 0; b < signals.size(); ++b) {
        out[b].n = n_;
        out[b].a_max = a_max_;
        out[b].values.assign(depth, Wide(0));
    }

    if (opts_.schedule == CascadeSchedule::shared) {
        kern.cascade(x_hi.data(), x_lo.data(), len, depth, acc_hi.data(), acc_lo.data());
        count_add(counter, "cascade.accumulate", 2 * len * depth * signals.size());
        for (int a = 0; a <= a_max_; ++a) convert(a);
    } else {
        for (int a = 0; a <= a_max_; ++a) {
            kern.cascade(x_hi.data(), x_lo.data(), len, depth, acc_hi.data(), acc_lo.data());
            count_add(counter, "cascade.accumulate", len * depth * signals.size());
            convert(a);
        }
    }

    for (std::size_t b = 0; b < signals.size(); ++b) {
        auto& g = out[b].values;
        for (int a = 1; a <= a_max_; ++a) g[a] *= inv_scale(a);
        count_mul(counter, "gvector.scale", static_cast<std::uint64_t>(a_max_));
        if (odd) {
            g[0] += centers[b];
            count_add(counter, "gvector.scale", 1);
        }
    }
}

GVector GVectorEngine::general(std::span<const Wide> signal, OpCounter* counter) const {
    GVector out;
    const std::span<const Wide> one[1] = {signal};
    general(one, std::span<GVector>(&out, 1), counter);
    return out;
}

GVector GVectorEngine::general_exact(std::span<const std::int64_t> f, OpCounter* counter) const {
    if (f.size() != n_) throw std::invalid_argument("GVectorEngine::general_exact: signal length mismatch");
    const std::size_t L = half_;
    const bool odd = parity_ == Parity::odd;
    const std::size_t len = odd ? L : 2 * L;
    std::vector<std::int64_t> anti(len, 0), sym(len, 0);
    for (std::size_t i = 1; i <= L; ++i) {
        const std::int64_t upper = odd ? f[L + i] : f[L + i - 1];
        const std::int64_t lower = f[L - i];
        const std::size_t t = odd ? i - 1 : 2 * (i - 1);
        anti[t] = upper - lower;
        sym[t] = upper + lower;
    }
    count_add(counter, "fold", 2 * L);
    const auto s_anti = cascade_power_sums_exact(anti, a_max_, counter);
    const auto s_sym = cascade_power_sums_exact(sym, a_max_, counter);

    GVector out{n_, a_max_, std::vector<Wide>(static_cast<std::size_t>(a_max_) + 1)};
    for (int a = 0; a <= a_max_; ++a)
        out.values[a] = to_wide(a % 2 == 0 ? s_sym[a] : s_anti[a]) * inv_scale(a);
    count_mul(counter, "gvector.scale", static_cast<std::uint64_t>(a_max_));
    if (odd) {
        out.values[0] += static_cast<Wide>(f[L]);
        count_add(counter, "gvector.scale", 1);
    }
    return out;
}

GVector GVectorEngine::constant(double level, OpCounter* counter) const {
    if (unit_constant_.empty())
        throw std::logic_error("GVectorEngine: constant path was not prepared");
    GVector out{n_, a_max_, std::vector<Wide>(static_cast<std::size_t>(a_max_) + 1, Wide(0))};
    const Wide lv = level;
    for (int a = 0; a <= a_max_; a += 2) out.values[a] = lv * unit_constant_[a];
    count_mul(counter, "gvector.constant", static_cast<std::uint64_t>(a_max_ / 2) + 1);
    return out;
}

GVector GVectorEngine::binary_runs(std::span<const Run> runs, double level, OpCounter* counter) const {
    if (!ladder_) throw std::logic_error("GVectorEngine: run-length path was not prepared");
    validate_runs(runs, n_);
    const auto L = static_cast<std::int64_t>(half_);
    const std::size_t depth = static_cast<std::size_t>(a_max_) + 1;
    std::vector<Wide> sums(depth, Wide(0));
    for (const Run& r : runs) {
        const auto c = static_cast<std::int64_t>(r.first);
        const auto d = static_cast<std::int64_t>(r.last);
        if (parity_ == Parity::odd) {
            // x_i = (i - L - 1) / L
            for (int a = 0; a <= a_max_; ++a) sums[a] += ladder_->range_sum(c - L - 1, d - L - 1, a);
            count_add(counter, "gvector.runs", 2 * depth);
        } else {
            // x_i = (2i - 2L - 1) / (2L - 1): odd numerators only, so take the
            // full range and remove the even members 2m.
            const std::int64_t u = 2 * c - 2 * L - 1;
            const std::int64_t v = 2 * d - 2 * L - 1;
            const std::int64_t mu = ceil_div2(u);
            const std::int64_t mv = floor_div2(v);
            for (int a = 0; a <= a_max_; ++a) {
                Wide s = ladder_->range_sum(u, v, a);
                if (mu <= mv) s -= std::ldexp(Wide(1), a) * ladder_->range_sum(mu, mv, a);
                sums[a] += s;
            }
            count_add(counter, "gvector.runs", 5 * depth);
            count_mul(counter, "gvector.runs", depth);
        }
    }
    GVector out{n_, a_max_, std::vector<Wide>(depth)};
    const Wide lv = level;
    for (int a = 0; a <= a_max_; ++a) out.values[a] = lv * sums[a] * inv_scale(a);
    count_mul(counter, "gvector.runs", 2 * depth);
    return out;
}

GVector g_vector_general(std::span<const Wide> s, int a_max, OpCounter* counter, CascadeSchedule schedule) {
    GVectorEngine engine(s.size(), a_max, {schedule, false, false}, counter);
    return engine.general(s, counter);
}

GVector g_vector_general(std::span<const double> s, int a_max, OpCounter* counter, CascadeSchedule schedule) {
    std::vector<Wide> w(s.begin(), s.end());
    return g_vector_general(std::span<const Wide>(w), a_max, counter, schedule);
}

GVector g_vector_exact(std::span<const std::int64_t> s, int a_max, OpCounter* counter) {
    GVectorEngine engine(s.size(), a_max, {}, counter);
    return engine.general_exact(s, counter);
}

GVector g_vector_constant(std::size_t n, double level, int a_max, OpCounter* counter) {
    GVectorEngine engine(n, a_max, {CascadeSchedule::shared, true, false}, counter);
    return engine.constant(level, counter);
}

GVector g_vector_binary_runs(std::size_t n, std::span<const Run> runs, double level, int a_max,
                             OpCounter* counter) {
    GVectorEngine engine(n, a_max, {CascadeSchedule::shared, false, true}, counter);
    return engine.binary_runs(runs, level, counter);
}

} // namespace legmoment
