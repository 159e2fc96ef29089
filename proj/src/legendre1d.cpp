#include "legmoment/legendre1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace legmoment {

PolyTable::PolyTable(int max_order, std::vector<double> xs)
    : max_order_(max_order), xs_(std::move(xs)) {
    if (max_order < 0) throw std::invalid_argument("PolyTable: order must be non-negative");
    const std::size_t n = xs_.size();
    values_.assign((static_cast<std::size_t>(max_order) + 1) * n, 0.0);
    double* v = values_.data();
    std::fill_n(v, n, 1.0);
    if (max_order >= 1) std::copy(xs_.begin(), xs_.end(), v + n);
    for (int p = 1; p < max_order; ++p) {
        const double a = 2.0 * p + 1.0;
        const double b = p;
        const double c = p + 1.0;
        const double* pm1 = v + static_cast<std::size_t>(p - 1) * n;
        const double* pc = v + static_cast<std::size_t>(p) * n;
        double* pn = v + static_cast<std::size_t>(p + 1) * n;
        for (std::size_t i = 0; i < n; ++i) pn[i] = (a * xs_[i] * pc[i] - b * pm1[i]) / c;
    }
}

PolyTable poly_eval_recurrence(int max_order, std::vector<double> xs) {
    return PolyTable(max_order, std::move(xs));
}

PolyTable grid_poly_table(int max_order, std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = grid_abscissa(i + 1, n);
    return poly_eval_recurrence(max_order, std::move(xs));
}

std::vector<Rational> poly_coefficients(int p) {
    if (p < 0) throw std::invalid_argument("poly_coefficients: order must be non-negative");
    std::vector<BigInt> fact(static_cast<std::size_t>(2 * p) + 1);
    fact[0] = 1;
    for (std::size_t k = 1; k < fact.size(); ++k) fact[k] = fact[k - 1] * static_cast<unsigned>(k);
    std::vector<Rational> c(static_cast<std::size_t>(p) + 1, Rational(0));
    const BigInt two_p = BigInt(1) << p;
    for (int k = 0; k <= p / 2; ++k) {
        Rational term(fact[2 * p - 2 * k], fact[k] * fact[p - k] * fact[p - 2 * k] * two_p);
        c[static_cast<std::size_t>(p - 2 * k)] = (k % 2 == 0) ? term : Rational(-term);
    }
    return c;
}

AuxMomentRows::AuxMomentRows(int order, std::size_t n) : order_(order), n_(n) {
    if (order < 0) throw std::invalid_argument("aux moments: order must be non-negative");
    rows_.resize(static_cast<std::size_t>(order) + 1);
    for (int p = 0; p <= order; ++p) rows_[p].assign(static_cast<std::size_t>(order - p) + 1, Wide(0));
}

namespace {

void check_g(const GVector& g, int order) {
    if (order < 0) throw std::invalid_argument("moment order must be non-negative");
    if (g.a_max < order || g.values.size() < static_cast<std::size_t>(order) + 1)
        throw std::invalid_argument("G vector does not reach the requested order");
    if (g.n < 2) throw std::invalid_argument("G vector length must be at least 2");
}

} // namespace

AuxMomentRows aux_moments(const GVector& g, int order, OpCounter* counter) {
    check_g(g, order);
    AuxMomentRows rows(order, g.n);
    const Wide inv = Wide(1) / static_cast<Wide>(g.n - 1);
    const Wide three_inv = 3 * inv;
    for (int a = 0; a <= order; ++a) rows.at(0, a) = g.values[a] * inv;
    for (int a = 0; a + 1 <= order; ++a) rows.at(1, a) = three_inv * g.values[a + 1];
    count_mul(counter, "recurrence", static_cast<std::uint64_t>(2 * order + 1));
    for (int p = 2; p <= order; ++p) {
        for (int a = 0; a <= order - p; ++a) rows.at(p, a) = aux_step(p, rows.at(p - 1, a + 1), rows.at(p - 2, a));
        count_mul(counter, "recurrence", 2 * static_cast<std::uint64_t>(order - p + 1));
        count_add(counter, "recurrence", static_cast<std::uint64_t>(order - p + 1));
    }
    return rows;
}

std::vector<Wide> legendre_from_g(const GVector& g, int order, OpCounter* counter) {
    check_g(g, order);
    std::vector<Wide> out(static_cast<std::size_t>(order) + 1);
    const Wide inv = Wide(1) / static_cast<Wide>(g.n - 1);
    const Wide three_inv = 3 * inv;

    std::vector<Wide> two_up(static_cast<std::size_t>(order) + 1), one_up, cur;
    for (int a = 0; a <= order; ++a) two_up[a] = g.values[a] * inv;
    out[0] = two_up[0];
    if (order >= 1) {
        one_up.resize(static_cast<std::size_t>(order));
        for (int a = 0; a < order; ++a) one_up[a] = three_inv * g.values[a + 1];
        out[1] = one_up[0];
    }
    count_mul(counter, "recurrence", static_cast<std::uint64_t>(2 * order + 1));
    for (int p = 2; p <= order; ++p) {
        cur.resize(static_cast<std::size_t>(order - p) + 1);
        for (int a = 0; a <= order - p; ++a) cur[a] = aux_step(p, one_up[a + 1], two_up[a]);
        count_mul(counter, "recurrence", 2 * static_cast<std::uint64_t>(order - p + 1));
        count_add(counter, "recurrence", static_cast<std::uint64_t>(order - p + 1));
        out[p] = cur[0];
        two_up.swap(one_up);
        one_up.swap(cur);
    }
    return out;
}

namespace {

bool integer_valued(std::span<const double> v, std::vector<std::int64_t>& out) {
    out.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(std::abs(v[i]) < 9.0e15) || std::trunc(v[i]) != v[i]) return false;
        out[i] = static_cast<std::int64_t>(v[i]);
    }
    return true;
}

std::vector<double> narrow(const std::vector<Wide>& w) { return {w.begin(), w.end()}; }

} // namespace

std::vector<double> moments_1d_fast(const Signal1D& s, int order, OpCounter* counter, const FastOptions& opts) {
    if (order < 0) throw std::invalid_argument("moment order must be non-negative");
    const auto values = s.values();
    const SignalClass cls = opts.dispatch ? classify_signal(values) : SignalClass{GeneralClass{}};

    if (const auto* c = std::get_if<ConstantClass>(&cls); c && c->level == 0.0)
        return std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0);

    GVectorEngine::Options eo{opts.schedule, std::holds_alternative<ConstantClass>(cls),
                              std::holds_alternative<BinaryRunsClass>(cls)};
    GVectorEngine engine(s.size(), order, eo, counter);

    GVector g;
    if (const auto* c = std::get_if<ConstantClass>(&cls)) {
        g = engine.constant(c->level, counter);
    } else if (const auto* b = std::get_if<BinaryRunsClass>(&cls)) {
        g = engine.binary_runs(b->runs, b->level, counter);
    } else {
        std::vector<std::int64_t> ints;
        if (opts.exact && order <= kExactOrderLimit && integer_valued(values, ints)) {
            g = engine.general_exact(ints, counter);
        } else {
            std::vector<Wide> w(values.begin(), values.end());
            g = engine.general(w, counter);
        }
    }
    return narrow(legendre_from_g(g, order, counter));
}

std::vector<double> moments_1d_direct(const Signal1D& s, int order, OpCounter* counter) {
    if (order < 0) throw std::invalid_argument("moment order must be non-negative");
    const std::size_t n = s.size();
    const PolyTable P = grid_poly_table(order, n);
    std::vector<double> out(static_cast<std::size_t>(order) + 1);
    for (int p = 0; p <= order; ++p) {
        double acc = 0.0;
        const auto row = P.row(p);
        for (std::size_t i = 0; i < n; ++i) acc += row[i] * s[i];
        out[p] = (2.0 * p + 1.0) / static_cast<double>(n - 1) * acc;
    }
    count_mul(counter, "direct", (n + 1) * (static_cast<std::uint64_t>(order) + 1));
    count_add(counter, "direct", n * (static_cast<std::uint64_t>(order) + 1));
    return out;
}

} // namespace legmoment
