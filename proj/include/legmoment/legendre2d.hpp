#pragma once

#include "legmoment/image.hpp"
#include "legmoment/legendre1d.hpp"
#include "legmoment/moment_table.hpp"
#include "legmoment/numeric.hpp"
#include "legmoment/op_counter.hpp"

#include <cstddef>
#include <vector>

namespace legmoment {

struct Moments2DOptions {
    CascadeSchedule schedule = CascadeSchedule::shared;
    bool exact = false;
    bool dispatch = true;
    /// 0 selects the hardware concurrency. Results do not depend on it.
    unsigned workers = 1;
};

/// Y[i][q]: order-q 1D moment along y of the sample line at x_i
/// (the i-th raster column), i = 0..nx-1, q = 0..order.
class RowMomentMatrix {
public:
    RowMomentMatrix(std::size_t lines, int order)
        : lines_(lines), order_(order), values_(lines * (static_cast<std::size_t>(order) + 1), Wide(0)) {}

    std::size_t lines() const { return lines_; }
    int order() const { return order_; }
    Wide& at(std::size_t i, int q) { return values_[i * stride() + static_cast<std::size_t>(q)]; }
    Wide at(std::size_t i, int q) const { return values_[i * stride() + static_cast<std::size_t>(q)]; }

private:
    std::size_t stride() const { return static_cast<std::size_t>(order_) + 1; }
    std::size_t lines_;
    int order_;
    std::vector<Wide> values_;
};

/// Stage 1. Each line is classified and takes the constant, run-length or
/// general path (unless dispatch is off). Counter labels are prefixed "rows.".
RowMomentMatrix row_moments(const Image& img, int order, OpCounter* counter = nullptr,
                            const Moments2DOptions& opts = {});

/// Stage 2: the column of Y for each q, read along x, is a general signal
/// whose 1D moments up to order - q are L_{pq}. Counter labels "columns.".
MomentTable moments_from_rows(const RowMomentMatrix& rows, std::size_t nx, std::size_t ny,
                              OpCounter* counter = nullptr, const Moments2DOptions& opts = {});

MomentTable moments_2d_fast(const Image& img, int order, OpCounter* counter = nullptr,
                            const Moments2DOptions& opts = {});

/// Straight evaluation of the double sum for every (p, q). The product
/// P_p(x_i) f(x_i, y_j) is the one multiplication per (pixel, moment) pair
/// and is counted under "direct.pixel".
MomentTable moments_2d_direct(const Image& img, int order, OpCounter* counter = nullptr);

/// Real-valued raster (reconstructions may leave [0, max]).
struct RealGrid {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
    /// Rounded and clamped to [0, maxval].
    Image clamped(int maxval = 255) const;
};

/// f(x_i, y_j) = sum_{p+q<=M} L_pq P_p(x_i) P_q(y_j) on an nx x ny grid.
RealGrid reconstruct(const MomentTable& t, std::size_t nx, std::size_t ny, unsigned workers = 1);

double rmse(const RealGrid& a, const Image& ref);
double rmse(const RealGrid& a, const RealGrid& ref);

/// |fast - ref| / max(|ref|, 1).
inline double moment_relative_error(double value, double ref) {
    const double d = value > ref ? value - ref : ref - value;
    const double r = ref < 0 ? -ref : ref;
    return d / (r > 1.0 ? r : 1.0);
}

struct VerifyReport {
    struct Entry {
        int p;
        int q;
        double fast;
        double direct;
        double abs_error;
        double rel_error;
    };
    double max_abs_error = 0.0;
    double max_rel_error = 0.0;
    std::vector<Entry> worst; ///< largest relative errors first
};

VerifyReport compare_tables(const MomentTable& fast, const MomentTable& direct, std::size_t keep = 5);
VerifyReport verify(const Image& img, int order, const Moments2DOptions& opts = {});

} // namespace legmoment
