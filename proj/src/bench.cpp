#include "legmoment/bench.hpp"

#include "legmoment/complexity.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace legmoment {

namespace {

template <class F>
std::int64_t time_once(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
}

template <class F>
std::int64_t median_time(int reps, F&& f) {
    std::vector<std::int64_t> t;
    for (int r = 0; r < reps; ++r) t.push_back(time_once(f));
    std::sort(t.begin(), t.end());
    const std::size_t m = t.size() / 2;
    return t.size() % 2 ? t[m] : (t[m - 1] + t[m]) / 2;
}

} // namespace

std::vector<BenchRecord> run_bench(const Image& img, const std::string& label, const BenchConfig& cfg) {
    if (cfg.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
    if (cfg.order < 0) throw std::invalid_argument("moment order must be non-negative");
    const auto M = static_cast<std::uint64_t>(cfg.order);

    BenchRecord direct{label, "direct", img.nx(), img.ny(), cfg.order};
    OpCounter dc;
    MomentTable dt(cfg.order, img.nx(), img.ny());
    direct.wall_ns_counted = time_once([&] { dt = moments_2d_direct(img, cfg.order, &dc); });
    direct.wall_ns = median_time(cfg.repetitions, [&] { moments_2d_direct(img, cfg.order, nullptr); });
    direct.additions = dc.total().additions;
    direct.multiplications = dc.total().multiplications;
    direct.table_multiplications = dc.stage("direct.pixel").multiplications;
    direct.predicted_table_multiplications = predict_direct_mults(img.nx(), img.ny(), M);
    direct.predicted_additions = static_cast<double>(direct.predicted_table_multiplications);
    direct.predicted_multiplications = static_cast<double>(direct.predicted_table_multiplications);

    BenchRecord fast{label, "fast", img.nx(), img.ny(), cfg.order};
    OpCounter fc;
    MomentTable ft(cfg.order, img.nx(), img.ny());
    fast.wall_ns_counted = time_once([&] { ft = moments_2d_fast(img, cfg.order, &fc, cfg.fast); });
    fast.wall_ns = median_time(cfg.repetitions, [&] { moments_2d_fast(img, cfg.order, nullptr, cfg.fast); });
    fast.additions = fc.total().additions;
    fast.multiplications = fc.total().multiplications;
    fast.table_multiplications = fast.multiplications;
    // Square images use the formulas directly; otherwise the mean side.
    const std::uint64_t n = img.nx() == img.ny() ? img.nx() : (img.nx() + img.ny()) / 2;
    const FastPrediction pf = predict_fast(n, M);
    fast.predicted_additions = pf.additions;
    fast.predicted_multiplications = pf.multiplications;
    fast.predicted_table_multiplications = pf.table_multiplications;
    fast.max_rel_error = compare_tables(ft, dt, 0).max_rel_error;
    return {direct, fast};
}

Image synthetic_checkerboard(std::size_t n, std::size_t cell) {
    if (cell == 0) cell = 1;
    std::vector<double> px(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) px[j * n + i] = ((i / cell + j / cell) % 2) ? 255.0 : 0.0;
    return Image(n, n, std::move(px), 255.0, true);
}

Image synthetic_constant(std::size_t n, double level) {
    return Image(n, n, std::vector<double>(n * n, level), std::max(255.0, level), true);
}

Image synthetic_random(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    std::vector<double> px(n * n);
    for (auto& v : px) v = dist(rng);
    return Image(n, n, std::move(px), 255.0, true);
}

std::string format_report(const std::vector<BenchRecord>& records) {
    std::string out = "# legmoment-bench v1\n";
    char buf[512];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf,
                      "image=%s method=%s N=%zu Ny=%zu M=%d adds=%" PRIu64 " mults=%" PRIu64
                      " table_mults=%" PRIu64 " predicted_adds=%.0f predicted_mults=%.0f"
                      " predicted_table_mults=%" PRIu64 " wall_ns=%" PRId64 " wall_ns_counted=%" PRId64
                      " max_rel_error=%.3g\n",
                      r.image.c_str(), r.method.c_str(), r.nx, r.ny, r.order, r.additions, r.multiplications,
                      r.table_multiplications, r.predicted_additions, r.predicted_multiplications,
                      r.predicted_table_multiplications, r.wall_ns, r.wall_ns_counted, r.max_rel_error);
        out += buf;
    }
    out += "#\n";
    std::snprintf(buf, sizeof buf, "# %-14s %-6s %5s %3s %14s %14s %14s %12s\n", "image", "method", "N", "M",
                  "adds", "mults", "table mults", "ms");
    out += buf;
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "# %-14s %-6s %5zu %3d %14" PRIu64 " %14" PRIu64 " %14" PRIu64 " %12.3f\n",
                      r.image.c_str(), r.method.c_str(), r.nx, r.order, r.additions, r.multiplications,
                      r.table_multiplications, static_cast<double>(r.wall_ns) / 1e6);
        out += buf;
    }
    // Per image: fast/direct ratios and the two fast multiplication forms.
    for (std::size_t k = 0; k + 1 < records.size(); k += 2) {
        const auto& d = records[k];
        const auto& f = records[k + 1];
        if (d.method != "direct" || f.method != "fast") continue;
        const double mult_ratio = d.multiplications ? double(f.multiplications) / double(d.multiplications) : 0.0;
        const double speedup = f.wall_ns ? double(d.wall_ns) / double(f.wall_ns) : 0.0;
        std::snprintf(buf, sizeof buf,
                      "# %s: fast/direct mults %.4f, speedup %.2fx; fast mult formulas: 2NM^2+2M^3/3 = %.0f,"
                      " 2M(M-1)N = %" PRIu64 "%s\n",
                      f.image.c_str(), mult_ratio, speedup, f.predicted_multiplications,
                      f.predicted_table_multiplications,
                      double(f.predicted_table_multiplications) != f.predicted_multiplications ? " (differ)" : "");
        out += buf;
    }
    return out;
}

} // namespace legmoment
