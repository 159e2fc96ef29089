#include "legmoment/complexity.hpp"

namespace legmoment {

std::uint64_t predict_direct_mults(std::uint64_t n, std::uint64_t order) {
    return predict_direct_mults(n, n, order);
}

std::uint64_t predict_direct_mults(std::uint64_t nx, std::uint64_t ny, std::uint64_t order) {
    return nx * ny * ((order + 1) * (order + 2) / 2);
}

FastPrediction predict_fast(std::uint64_t n, std::uint64_t order, Parity parity) {
    const double N = static_cast<double>(n);
    const double M = static_cast<double>(order);
    FastPrediction r;
    r.additions = M * M * N * N / 2.0 + M * M * M * N / 12.0;
    if (parity == Parity::even) r.additions *= 2.0;
    r.multiplications = 2.0 * N * M * M + 2.0 * M * M * M / 3.0;
    r.table_multiplications = order == 0 ? 0 : 2 * order * (order - 1) * n;
    return r;
}

std::string_view method_name(Method m) {
    switch (m) {
    case Method::direct: return "direct";
    case Method::fast_odd: return "fast-odd";
    case Method::fast_even: return "fast-even";
    }
    return "?";
}

double ComplexityModel::additions(std::uint64_t n, std::uint64_t order) const {
    if (method == Method::direct) return static_cast<double>(predict_direct_mults(n, order));
    return predict_fast(n, order, method == Method::fast_odd ? Parity::odd : Parity::even).additions;
}

double ComplexityModel::multiplications(std::uint64_t n, std::uint64_t order) const {
    if (method == Method::direct) return static_cast<double>(predict_direct_mults(n, order));
    return predict_fast(n, order, method == Method::fast_odd ? Parity::odd : Parity::even).multiplications;
}

} // namespace legmoment
