// legmoment: Legendre moments of grey-level images.
//
// Exit codes: 0 ok, 1 usage, 2 input/output or parse failure, 3 verification failed.

#include "legmoment/bench.hpp"
#include "legmoment/complexity.hpp"
#include "legmoment/errors.hpp"
#include "legmoment/image.hpp"
#include "legmoment/legendre2d.hpp"
#include "legmoment/moment_file.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace lm = legmoment;

namespace {

enum Exit { ok = 0, usage = 1, io = 2, failed = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string input;
    std::string output;
    int order = -1;
    std::string method = "fast";
    std::string format = "auto";
    std::string schedule = "shared";
    int repetitions = 3;
    unsigned workers = 0;
    bool exact = false;
    std::string size;
    std::string reference;
    std::string csv;
    double threshold = 1e-8;
    std::size_t synthetic = 0;
};

lm::CascadeSchedule parse_schedule(const std::string& s) {
    if (s == "shared") return lm::CascadeSchedule::shared;
    if (s == "per-exponent") return lm::CascadeSchedule::per_exponent;
    throw UsageError("unknown schedule '" + s + "'");
}

lm::Moments2DOptions fast_options(const Config& c) {
    lm::Moments2DOptions o;
    o.schedule = parse_schedule(c.schedule);
    o.exact = c.exact;
    o.workers = c.workers;
    return o;
}

void warn_order(int order) {
    if (order > lm::kPrecisionWarnOrder)
        std::fprintf(stderr, "warning: order %d exceeds %d; high powers of x lose relative precision\n", order,
                     lm::kPrecisionWarnOrder);
}

lm::Image load(const Config& c) { return lm::load_image(c.input, lm::parse_image_format(c.format)); }

int cmd_moments(const Config& c) {
    if (c.method != "fast" && c.method != "direct") throw UsageError("method must be fast or direct");
    warn_order(c.order);
    const lm::Image img = load(c);
    const lm::MomentTable t = c.method == "fast" ? lm::moments_2d_fast(img, c.order, nullptr, fast_options(c))
                                                 : lm::moments_2d_direct(img, c.order);
    if (c.output.empty() || c.output == "-")
        std::cout << lm::write_moments(t, c.method);
    else
        lm::save_moments(t, c.method, c.output);
    return ok;
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& s) {
    std::size_t nx = 0, ny = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%zux%zu%c", &nx, &ny, &tail) == 2) return {nx, ny};
    if (std::sscanf(s.c_str(), "%zu%c", &nx, &tail) == 1) return {nx, nx};
    throw UsageError("size must be N or NXxNY, got '" + s + "'");
}

int cmd_reconstruct(const Config& c) {
    const lm::MomentFile mf = lm::load_moments(c.input);
    std::size_t nx = mf.table.nx();
    std::size_t ny = mf.table.ny();
    if (!c.size.empty()) std::tie(nx, ny) = parse_size(c.size);
    if (nx < 2 || ny < 2) throw UsageError("reconstruction size must be at least 2");
    const lm::RealGrid grid = lm::reconstruct(mf.table, nx, ny, c.workers);
    lm::save_pgm(grid.clamped(255), c.output);
    if (!c.csv.empty()) lm::save_csv(grid.nx, grid.ny, grid.values, c.csv);
    if (!c.reference.empty()) {
        const lm::Image ref = lm::load_image(c.reference);
        if (ref.nx() != nx || ref.ny() != ny) throw UsageError("reference image size differs from reconstruction");
        std::printf("rmse %.6g\n", lm::rmse(grid, ref));
    }
    return ok;
}

int cmd_verify(const Config& c) {
    warn_order(c.order);
    const lm::Image img = load(c);
    const lm::VerifyReport r = lm::verify(img, c.order, fast_options(c));
    std::printf("max_abs_error %.6g\nmax_rel_error %.6g\n", r.max_abs_error, r.max_rel_error);
    for (const auto& e : r.worst)
        std::printf("  L(%d,%d) fast %.17g direct %.17g rel %.3g\n", e.p, e.q, e.fast, e.direct, e.rel_error);
    const bool pass = r.max_rel_error <= c.threshold;
    std::printf("%s (threshold %.3g)\n", pass ? "ok" : "FAILED", c.threshold);
    return pass ? ok : failed;
}

int cmd_bench(const Config& c) {
    if (c.input.empty() == (c.synthetic == 0)) throw UsageError("bench needs an image or --synthetic N (not both)");
    warn_order(c.order);
    lm::BenchConfig cfg;
    cfg.order = c.order;
    cfg.repetitions = c.repetitions;
    cfg.fast = fast_options(c);
    if (c.workers == 0) cfg.fast.workers = 1; // timings default to one worker
    std::vector<lm::BenchRecord> records;
    if (c.synthetic) {
        if (c.synthetic < 2) throw UsageError("synthetic size must be at least 2");
        for (auto& [name, img] : {std::pair{"checkerboard", lm::synthetic_checkerboard(c.synthetic)},
                                  std::pair{"constant", lm::synthetic_constant(c.synthetic)},
                                  std::pair{"random", lm::synthetic_random(c.synthetic)}}) {
            const auto r = lm::run_bench(img, name, cfg);
            records.insert(records.end(), r.begin(), r.end());
        }
    } else {
        records = lm::run_bench(load(c), c.input, cfg);
    }
    const std::string report = lm::format_report(records);
    if (c.output.empty() || c.output == "-") {
        std::cout << report;
    } else {
        std::ofstream out(c.output, std::ios::binary);
        if (!(out << report)) throw lm::IoError("cannot write " + c.output);
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Legendre moments of grey-level images"};
    app.require_subcommand(1);
    Config c;

    auto add_order = [&](CLI::App* s) {
        s->add_option("--order", c.order, "maximum total order M")->required()->check(CLI::NonNegativeNumber);
    };
    auto add_common = [&](CLI::App* s) {
        s->add_option("--format", c.format, "image format: auto, pgm-ascii, pgm-binary, csv");
        s->add_option("--workers", c.workers, "worker threads (default: available parallelism)")
            ->check(CLI::PositiveNumber);
        s->add_flag("--exact", c.exact, "bigint cascades for integer images (M <= 20)");
        s->add_option("--schedule", c.schedule, "cascade schedule: shared, per-exponent");
    };

    auto* moments = app.add_subcommand("moments", "compute L_pq for p + q <= M");
    moments->add_option("input", c.input, "image file")->required();
    add_order(moments);
    add_common(moments);
    moments->add_option("--out", c.output, "moment file (default: stdout)");
    moments->add_option("--method", c.method, "fast or direct");

    auto* recon = app.add_subcommand("reconstruct", "rebuild an image from a moment file");
    recon->add_option("input", c.input, "moment file")->required();
    recon->add_option("--out", c.output, "output PGM")->required();
    recon->add_option("--size", c.size, "N or NXxNY (default: from the moment file)");
    recon->add_option("--csv", c.csv, "also write raw reconstructed values");
    recon->add_option("--reference", c.reference, "image to report RMSE against");
    recon->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);

    auto* ver = app.add_subcommand("verify", "compare fast and direct moments");
    ver->add_option("input", c.input, "image file")->required();
    add_order(ver);
    add_common(ver);
    ver->add_option("--threshold", c.threshold, "maximum relative error")->check(CLI::NonNegativeNumber);

    auto* bench = app.add_subcommand("bench", "operation counts and timings");
    bench->add_option("input", c.input, "image file");
    add_order(bench);
    add_common(bench);
    bench->add_option("--synthetic", c.synthetic, "use checkerboard, constant and random N x N images");
    bench->add_option("--reps", c.repetitions, "timing repetitions")->check(CLI::PositiveNumber);
    bench->add_option("--out", c.output, "report file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*moments) return cmd_moments(c);
        if (*recon) return cmd_reconstruct(c);
        if (*ver) return cmd_verify(c);
        return cmd_bench(c);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return usage;
    } catch (const lm::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return io;
    } catch (const lm::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return io;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return usage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return io;
    }
}
