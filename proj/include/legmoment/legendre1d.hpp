#pragma once

#include "legmoment/folding.hpp"
#include "legmoment/image.hpp"
#include "legmoment/numeric.hpp"
#include "legmoment/op_counter.hpp"
#include "legmoment/power_sums.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <vector>

namespace legmoment {

/// Orders above this still work but lose relative precision in the monomial
/// route; callers may want to warn.
inline constexpr int kPrecisionWarnOrder = 40;
inline constexpr int kDefaultMaxOrder = 60;

/// P_p(x_i) for p = 0..max_order over a set of abscissas, filled by the
/// three-term recurrence on construction.
class PolyTable {
public:
    PolyTable(int max_order, std::vector<double> xs);

    int max_order() const { return max_order_; }
    std::span<const double> abscissas() const { return xs_; }
    double operator()(int p, std::size_t i) const { return values_[static_cast<std::size_t>(p) * xs_.size() + i]; }
    std::span<const double> row(int p) const {
        return std::span<const double>(values_).subspan(static_cast<std::size_t>(p) * xs_.size(), xs_.size());
    }

private:
    int max_order_;
    std::vector<double> xs_;
    std::vector<double> values_;
};

/// Three-term recurrence (p+1) P_{p+1} = (2p+1) x P_p - p P_{p-1}.
PolyTable poly_eval_recurrence(int max_order, std::vector<double> xs);
/// Same on the n-point [-1,1] grid.
PolyTable grid_poly_table(int max_order, std::size_t n);

using Rational = boost::multiprecision::cpp_rational;

/// Exact monomial coefficients of P_p, index = power of x.
std::vector<Rational> poly_coefficients(int p);

/// L_p(a) = (2p+1)/(N-1) sum_i x_i^a P_p(x_i) f(x_i) over the triangle
/// 0 <= p <= order, 0 <= a <= order - p.
class AuxMomentRows {
public:
    AuxMomentRows(int order, std::size_t n);
    int order() const { return order_; }
    std::size_t length() const { return n_; }
    Wide& at(int p, int a) { return rows_[static_cast<std::size_t>(p)][static_cast<std::size_t>(a)]; }
    Wide at(int p, int a) const { return rows_[static_cast<std::size_t>(p)][static_cast<std::size_t>(a)]; }
    std::span<const Wide> row(int p) const { return rows_[static_cast<std::size_t>(p)]; }

private:
    int order_;
    std::size_t n_;
    std::vector<std::vector<Wide>> rows_;
};

/// Rows 0 and 1 come straight from G; row p >= 2 from
///   L_p(a) = (2p+1)/p * (L_{p-1}(a+1) - (p-1)/(2p-3) * L_{p-2}(a)).
/// Requires g.a_max >= order.
AuxMomentRows aux_moments(const GVector& g, int order, OpCounter* counter = nullptr);

/// One step of the recurrence above; the only place it is spelled out.
inline Wide aux_step(int p, Wide up_one, Wide up_two) {
    const Wide c1 = static_cast<Wide>(2 * p + 1) / static_cast<Wide>(p);
    const Wide c2 = static_cast<Wide>(p - 1) / static_cast<Wide>(2 * p - 3);
    return c1 * (up_one - c2 * up_two);
}

/// L_0(0)..L_order(0) from G keeping only two rows alive.
std::vector<Wide> legendre_from_g(const GVector& g, int order, OpCounter* counter = nullptr);

struct FastOptions {
    CascadeSchedule schedule = CascadeSchedule::shared;
    /// Exact bigint cascades for integer-valued signals when order <= 20.
    bool exact = false;
    /// Route constant and binary signals through their closed-form paths.
    /// When false every signal takes the general cascade.
    bool dispatch = true;
};

inline constexpr int kExactOrderLimit = 20;

std::vector<double> moments_1d_fast(const Signal1D& s, int order, OpCounter* counter = nullptr,
                                    const FastOptions& opts = {});
std::vector<double> moments_1d_direct(const Signal1D& s, int order, OpCounter* counter = nullptr);

} // namespace legmoment
