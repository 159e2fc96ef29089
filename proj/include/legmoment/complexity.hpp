#pragma once

#include "legmoment/folding.hpp"

#include <cstdint>
#include <string_view>

namespace legmoment {

/// N^2 (M+1)(M+2)/2: one multiplication per (pixel, moment) pair.
std::uint64_t predict_direct_mults(std::uint64_t n, std::uint64_t order);
std::uint64_t predict_direct_mults(std::uint64_t nx, std::uint64_t ny, std::uint64_t order);

struct FastPrediction {
    double additions = 0;      ///< M^2 N^2/2 + M^3 N/12 (odd), M^2 N^2 + M^3 N/6 (even)
    double multiplications = 0; ///< 2 N M^2 + 2 M^3/3
    std::uint64_t table_multiplications = 0; ///< 2 M (M-1) N, the form the printed table matches
};

FastPrediction predict_fast(std::uint64_t n, std::uint64_t order, Parity parity);
inline FastPrediction predict_fast(std::uint64_t n, std::uint64_t order) {
    return predict_fast(n, order, n % 2 ? Parity::odd : Parity::even);
}

enum class Method { direct, fast_odd, fast_even };

std::string_view method_name(Method m);

struct ComplexityModel {
    Method method = Method::direct;

    static ComplexityModel for_fast(std::uint64_t n) {
        return {n % 2 ? Method::fast_odd : Method::fast_even};
    }
    double additions(std::uint64_t n, std::uint64_t order) const;
    double multiplications(std::uint64_t n, std::uint64_t order) const;
};

} // namespace legmoment
