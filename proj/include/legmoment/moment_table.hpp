#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace legmoment {

/// Triangular table {L_pq : p + q <= order} with the grid it was taken on.
class MomentTable {
public:
    MomentTable() = default;
    MomentTable(int order, std::size_t nx, std::size_t ny)
        : order_(order), nx_(nx), ny_(ny), values_(count_for(order), 0.0) {
        if (order < 0) throw std::invalid_argument("moment order must be non-negative");
    }

    static std::size_t count_for(int order) {
        return order < 0 ? 0 : static_cast<std::size_t>(order + 1) * (order + 2) / 2;
    }

    int order() const { return order_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t size() const { return values_.size(); }

    std::size_t index(int p, int q) const {
        if (p < 0 || q < 0 || p + q > order_) throw std::out_of_range("moment index outside table");
        const auto up = static_cast<std::size_t>(p);
        return up * (order_ + 1) - up * (up - 1) / 2 + static_cast<std::size_t>(q);
    }

    double& at(int p, int q) { return values_[index(p, q)]; }
    double at(int p, int q) const { return values_[index(p, q)]; }

    const std::vector<double>& values() const { return values_; }

    friend bool operator==(const MomentTable&, const MomentTable&) = default;

private:
    int order_ = 0;
    std::size_t nx_ = 0;
    std::size_t ny_ = 0;
    std::vector<double> values_;
};

} // namespace legmoment
