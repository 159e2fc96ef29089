#include "legmoment/legendre2d.hpp"

#include "legmoment/simd.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace legmoment {

namespace {

struct LineTask {
    enum class Kind { general_pair, general_exact, constant, binary } kind;
    std::size_t first;
    std::size_t second; // general_pair only; == first when the pair is a single
};

bool integral_line(std::span<const double> v, std::vector<std::int64_t>& out) {
    out.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(std::abs(v[i]) < 9.0e15) || std::trunc(v[i]) != v[i]) return false;
        out[i] = static_cast<std::int64_t>(v[i]);
    }
    return true;
}

void store_line(RowMomentMatrix& Y, std::size_t line, const GVector& g, int order, OpCounter* counter) {
    const auto L = legendre_from_g(g, order, counter);
    for (int q = 0; q <= order; ++q) Y.at(line, q) = L[q];
}

} // namespace

RowMomentMatrix row_moments(const Image& img, int order, OpCounter* counter, const Moments2DOptions& opts) {
    if (order < 0) throw std::invalid_argument("moment order must be non-negative");
    const std::size_t nx = img.nx();
    const std::size_t ny = img.ny();
    RowMomentMatrix Y(nx, order);

    auto gather = [&](std::size_t i, auto& buf) {
        buf.resize(ny);
        for (std::size_t j = 0; j < ny; ++j) buf[j] = img.at(i, j);
    };

    // Classification pass; it decides which engine tables are needed.
    std::vector<SignalClass> classes(nx, GeneralClass{});
    std::vector<double> line;
    bool any_constant = false;
    bool any_binary = false;
    const bool exact = opts.exact && img.integral() && order <= kExactOrderLimit;
    std::vector<LineTask> tasks;
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < nx; ++i) {
        if (opts.dispatch) {
            gather(i, line);
            classes[i] = classify_signal(line);
        }
        if (const auto* c = std::get_if<ConstantClass>(&classes[i])) {
            if (c->level == 0.0) continue; // stays zero
            any_constant = true;
            tasks.push_back({LineTask::Kind::constant, i, i});
        } else if (std::holds_alternative<BinaryRunsClass>(classes[i])) {
            any_binary = true;
            tasks.push_back({LineTask::Kind::binary, i, i});
        } else if (exact) {
            tasks.push_back({LineTask::Kind::general_exact, i, i});
        } else {
            pending.push_back(i);
            if (pending.size() == GVectorEngine::kBatch) {
                tasks.push_back({LineTask::Kind::general_pair, pending[0], pending[1]});
                pending.clear();
            }
        }
    }
    if (!pending.empty()) tasks.push_back({LineTask::Kind::general_pair, pending[0], pending[0]});

    OpCounter local;
    OpCounter* lc = counter ? &local : nullptr;
    const GVectorEngine engine(ny, order, {opts.schedule, any_constant, any_binary}, lc);

    detail::parallel_chunks(tasks.size(), detail::resolve_workers(opts.workers), lc,
                            [&](std::size_t begin, std::size_t end, OpCounter* wc) {
        std::vector<Wide> a, b;
        std::vector<double> buf;
        std::vector<std::int64_t> ints;
        GVector g[GVectorEngine::kBatch];
        for (std::size_t t = begin; t < end; ++t) {
            const LineTask& task = tasks[t];
            switch (task.kind) {
            case LineTask::Kind::constant:
                store_line(Y, task.first, engine.constant(std::get<ConstantClass>(classes[task.first]).level, wc), order, wc);
                break;
            case LineTask::Kind::binary: {
                const auto& br = std::get<BinaryRunsClass>(classes[task.first]);
                store_line(Y, task.first, engine.binary_runs(br.runs, br.level, wc), order, wc);
                break;
            }
            case LineTask::Kind::general_exact:
                gather(task.first, buf);
                integral_line(buf, ints);
                store_line(Y, task.first, engine.general_exact(ints, wc), order, wc);
                break;
            case LineTask::Kind::general_pair: {
                gather(task.first, a);
                const bool pair = task.second != task.first;
                if (pair) gather(task.second, b);
                const std::span<const Wide> sig[2] = {a, b};
                engine.general(std::span(sig, pair ? 2 : 1), std::span(g, pair ? 2 : 1), wc);
                store_line(Y, task.first, g[0], order, wc);
                if (pair) store_line(Y, task.second, g[1], order, wc);
                break;
            }
            }
        }
    });
    if (counter) counter->merge_prefixed(local, "rows.");
    return Y;
}

MomentTable moments_from_rows(const RowMomentMatrix& Y, std::size_t nx, std::size_t ny, OpCounter* counter,
                              const Moments2DOptions& opts) {
    if (Y.lines() != nx) throw std::invalid_argument("row moment matrix does not match nx");
    const int order = Y.order();
    MomentTable out(order, nx, ny);

    // Columns q and q+1 share one kernel batch; the engine runs at the larger
    // depth, which leaves the shallower column's values unchanged.
    const std::size_t pairs = static_cast<std::size_t>(order) / 2 + 1;
    OpCounter local;
    OpCounter* lc = counter ? &local : nullptr;
    detail::parallel_chunks(pairs, detail::resolve_workers(opts.workers), lc,
                            [&](std::size_t begin, std::size_t end, OpCounter* wc) {
        std::vector<Wide> col[2];
        GVector g[2];
        for (std::size_t k = begin; k < end; ++k) {
            const int q0 = static_cast<int>(2 * k);
            const int width = (q0 + 1 <= order) ? 2 : 1;
            const GVectorEngine engine(nx, order - q0, {opts.schedule, false, false}, wc);
            std::span<const Wide> sig[2];
            for (int w = 0; w < width; ++w) {
                col[w].resize(nx);
                for (std::size_t i = 0; i < nx; ++i) col[w][i] = Y.at(i, q0 + w);
                sig[w] = col[w];
            }
            engine.general(std::span(sig, static_cast<std::size_t>(width)), std::span(g, static_cast<std::size_t>(width)), wc);
            for (int w = 0; w < width; ++w) {
                const int q = q0 + w;
                const auto L = legendre_from_g(g[w], order - q, wc);
                for (int p = 0; p <= order - q; ++p) out.at(p, q) = static_cast<double>(L[p]);
            }
        }
    });
    if (counter) counter->merge_prefixed(local, "columns.");
    return out;
}

MomentTable moments_2d_fast(const Image& img, int order, OpCounter* counter, const Moments2DOptions& opts) {
    const RowMomentMatrix Y = row_moments(img, order, counter, opts);
    return moments_from_rows(Y, img.nx(), img.ny(), counter, opts);
}

MomentTable moments_2d_direct(const Image& img, int order, OpCounter* counter) {
    if (order < 0) throw std::invalid_argument("moment order must be non-negative");
    const std::size_t nx = img.nx();
    const std::size_t ny = img.ny();
    const PolyTable Px = grid_poly_table(order, nx);
    const PolyTable Py = grid_poly_table(order, ny);
    const double denom = static_cast<double>(nx - 1) * static_cast<double>(ny - 1);
    MomentTable out(order, nx, ny);
    const auto pix = img.pixels();

    for (int p = 0; p <= order; ++p) {
        const auto px = Px.row(p);
        for (int q = 0; p + q <= order; ++q) {
            const auto py = Py.row(q);
            double acc = 0.0;
            for (std::size_t j = 0; j < ny; ++j) {
                const double* row = pix.data() + j * nx;
                double row_acc = 0.0;
                for (std::size_t i = 0; i < nx; ++i) row_acc += px[i] * row[i];
                acc += py[j] * row_acc;
            }
            out.at(p, q) = (2.0 * p + 1.0) * (2.0 * q + 1.0) / denom * acc;
        }
    }
    const std::uint64_t moments = MomentTable::count_for(order);
    count_mul(counter, "direct.pixel", moments * nx * ny);
    count_add(counter, "direct.pixel", moments * nx * ny);
    count_mul(counter, "direct.row", moments * ny);
    count_add(counter, "direct.row", moments * ny);
    count_mul(counter, "direct.normalize", moments * 3);
    return out;
}

Image RealGrid::clamped(int maxval) const {
    std::vector<double> px(values.size());
    for (std::size_t k = 0; k < values.size(); ++k)
        px[k] = std::clamp(std::round(values[k]), 0.0, static_cast<double>(maxval));
    return Image(nx, ny, std::move(px), static_cast<double>(maxval), true);
}

RealGrid reconstruct(const MomentTable& t, std::size_t nx, std::size_t ny, unsigned workers) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("reconstruction grid must be at least 2x2");
    const int order = t.order();
    const PolyTable Px = grid_poly_table(order, nx);
    const PolyTable Py = grid_poly_table(order, ny);
    RealGrid out{nx, ny, std::vector<double>(nx * ny, 0.0)};
    const auto& kern = simd::kernels();

    detail::parallel_chunks(ny, detail::resolve_workers(workers), nullptr,
                            [&](std::size_t begin, std::size_t end, OpCounter*) {
        std::vector<double> coeff(static_cast<std::size_t>(order) + 1);
        for (std::size_t j = begin; j < end; ++j) {
            for (int p = 0; p <= order; ++p) {
                double c = 0.0;
                for (int q = 0; p + q <= order; ++q) c += t.at(p, q) * Py(q, j);
                coeff[p] = c;
            }
            double* row = out.values.data() + j * nx;
            for (int p = 0; p <= order; ++p) kern.axpy(coeff[p], Px.row(p).data(), row, nx);
        }
    });
    return out;
}

double rmse(const RealGrid& a, const RealGrid& ref) {
    if (a.nx != ref.nx || a.ny != ref.ny) throw std::invalid_argument("rmse: size mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        const double d = a.values[k] - ref.values[k];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(a.values.size()));
}

double rmse(const RealGrid& a, const Image& ref) {
    return rmse(a, RealGrid{ref.nx(), ref.ny(), std::vector<double>(ref.pixels().begin(), ref.pixels().end())});
}

VerifyReport compare_tables(const MomentTable& fast, const MomentTable& direct, std::size_t keep) {
    if (fast.order() != direct.order()) throw std::invalid_argument("compare_tables: order mismatch");
    VerifyReport r;
    std::vector<VerifyReport::Entry> all;
    for (int p = 0; p <= fast.order(); ++p) {
        for (int q = 0; p + q <= fast.order(); ++q) {
            const double f = fast.at(p, q);
            const double d = direct.at(p, q);
            const double abs_err = std::abs(f - d);
            const double rel = moment_relative_error(f, d);
            r.max_abs_error = std::max(r.max_abs_error, abs_err);
            r.max_rel_error = std::max(r.max_rel_error, rel);
            all.push_back({p, q, f, d, abs_err, rel});
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.rel_error > b.rel_error; });
    all.resize(std::min(keep, all.size()));
    r.worst = std::move(all);
    return r;
}

VerifyReport verify(const Image& img, int order, const Moments2DOptions& opts) {
    return compare_tables(moments_2d_fast(img, order, nullptr, opts), moments_2d_direct(img, order, nullptr));
}

} // namespace legmoment
