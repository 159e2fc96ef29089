#pragma once

#include "legmoment/image.hpp"
#include "legmoment/legendre2d.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace legmoment {

struct BenchConfig {
    int order = 8;
    int repetitions = 3;
    Moments2DOptions fast;
};

struct BenchRecord {
    std::string image;
    std::string method; ///< "direct" or "fast"
    std::size_t nx = 0;
    std::size_t ny = 0;
    int order = 0;
    std::uint64_t additions = 0;
    std::uint64_t multiplications = 0;
    /// Table-1-normalized view: direct counts one per (pixel, moment) pair.
    std::uint64_t table_multiplications = 0;
    double predicted_additions = 0;
    double predicted_multiplications = 0;
    std::uint64_t predicted_table_multiplications = 0;
    std::int64_t wall_ns = 0;         ///< median, counters disabled
    std::int64_t wall_ns_counted = 0; ///< one run with counters enabled
    double max_rel_error = 0;         ///< fast vs direct; 0 for the direct record
};

/// Runs direct then fast on `img`. Throws std::invalid_argument if
/// repetitions < 1 or order < 0.
std::vector<BenchRecord> run_bench(const Image& img, const std::string& label, const BenchConfig& cfg);

Image synthetic_checkerboard(std::size_t n, std::size_t cell = 8);
Image synthetic_constant(std::size_t n, double level = 128);
Image synthetic_random(std::size_t n, std::uint64_t seed = 1);

/// "# legmoment-bench v1", one key=value line per record, then a '#'-prefixed
/// human table.
std::string format_report(const std::vector<BenchRecord>& records);

} // namespace legmoment
