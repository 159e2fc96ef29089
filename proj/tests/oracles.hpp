#pragma once

// Reference computations for the tests. Everything here is evaluated from
// the defining sums, in exact rationals where the inputs allow, and shares
// no code with the library beyond the Image container.

#include "legmoment/image.hpp"
#include "legmoment/moment_table.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Q = boost::multiprecision::cpp_rational;

inline Int ipow(Int b, int e) {
    Int r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
}

/// sum_{i=1}^{m} i^a
inline Int power_sum(std::int64_t m, int a) {
    Int s = 0;
    for (std::int64_t i = 1; i <= m; ++i) s += ipow(i, a);
    return s;
}

/// sum_{i=1}^{n} i^a g_i
inline Int weighted_power_sum(const std::vector<std::int64_t>& g, int a) {
    Int s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) s += ipow(static_cast<std::int64_t>(i + 1), a) * g[i];
    return s;
}

/// x_i = (2i - n - 1)/(n - 1), 1-based.
inline Q abscissa(std::size_t i, std::size_t n) {
    return Q(2 * static_cast<std::int64_t>(i) - static_cast<std::int64_t>(n) - 1, static_cast<std::int64_t>(n) - 1);
}

inline Q qpow(const Q& x, int e) {
    Q r = 1;
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

/// P_p(x) from Bonnet's recurrence in exact rationals.
inline Q legendre(int p, const Q& x) {
    if (p == 0) return 1;
    Q prev = 1, cur = x;
    for (int k = 1; k < p; ++k) {
        Q next = (Q(2 * k + 1) * x * cur - Q(k) * prev) / Q(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// P_p(x) in double from Bonnet's recurrence; for large grids where
/// rationals would be slow.
inline double legendre(int p, double x) {
    if (p == 0) return 1;
    double prev = 1, cur = x;
    for (int k = 1; k < p; ++k) {
        const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// G(a) = sum_i x_i^a f_i, exact for rational samples.
inline Q g_moment(const std::vector<Q>& f, int a) {
    Q s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += qpow(abscissa(i + 1, f.size()), a) * f[i];
    return s;
}

/// L_p = (2p+1)/(n-1) sum_i P_p(x_i) f_i
inline Q moment_1d(const std::vector<Q>& f, int p) {
    Q s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += legendre(p, abscissa(i + 1, f.size())) * f[i];
    return s * Q(2 * p + 1, static_cast<std::int64_t>(f.size()) - 1);
}

/// L_p(a) = (2p+1)/(n-1) sum_i x_i^a P_p(x_i) f_i
inline Q aux_moment(const std::vector<Q>& f, int p, int a) {
    Q s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Q x = abscissa(i + 1, f.size());
        s += qpow(x, a) * legendre(p, x) * f[i];
    }
    return s * Q(2 * p + 1, static_cast<std::int64_t>(f.size()) - 1);
}

/// Exact 2D moments of an integer-valued image.
inline legmoment::MomentTable moments_2d(const legmoment::Image& img, int order) {
    const std::size_t nx = img.nx(), ny = img.ny();
    std::vector<std::vector<Q>> px(order + 1, std::vector<Q>(nx)), py(order + 1, std::vector<Q>(ny));
    for (int p = 0; p <= order; ++p) {
        for (std::size_t i = 0; i < nx; ++i) px[p][i] = legendre(p, abscissa(i + 1, nx));
        for (std::size_t j = 0; j < ny; ++j) py[p][j] = legendre(p, abscissa(j + 1, ny));
    }
    legmoment::MomentTable t(order, nx, ny);
    for (int p = 0; p <= order; ++p)
        for (int q = 0; p + q <= order; ++q) {
            Q s = 0;
            for (std::size_t j = 0; j < ny; ++j) {
                Q row = 0;
                for (std::size_t i = 0; i < nx; ++i) row += px[p][i] * Q(static_cast<std::int64_t>(img.at(i, j)));
                s += py[q][j] * row;
            }
            s *= Q((2 * p + 1) * (2 * q + 1), static_cast<std::int64_t>((nx - 1) * (ny - 1)));
            t.at(p, q) = s.convert_to<double>();
        }
    return t;
}

/// Double-precision 2D moments summed in long double with pairwise
/// independent loops; used for images too large for rationals.
inline legmoment::MomentTable moments_2d_float(const legmoment::Image& img, int order) {
    const std::size_t nx = img.nx(), ny = img.ny();
    legmoment::MomentTable t(order, nx, ny);
    for (int p = 0; p <= order; ++p)
        for (int q = 0; p + q <= order; ++q) {
            long double s = 0;
            for (std::size_t j = 0; j < ny; ++j) {
                const long double py = legendre(q, static_cast<double>(abscissa(j + 1, ny)));
                for (std::size_t i = 0; i < nx; ++i)
                    s += py * legendre(p, static_cast<double>(abscissa(i + 1, nx))) * img.at(i, j);
            }
            t.at(p, q) = static_cast<double>(s * (2 * p + 1) * (2 * q + 1) / ((nx - 1) * (ny - 1)));
        }
    return t;
}

inline std::vector<Q> to_q(const std::vector<double>& v) {
    std::vector<Q> r;
    for (double x : v) r.emplace_back(static_cast<std::int64_t>(x));
    return r;
}

inline legmoment::Image random_image(std::mt19937_64& rng, std::size_t nx, std::size_t ny, int maxval = 255) {
    std::uniform_int_distribution<int> d(0, maxval);
    std::vector<double> px(nx * ny);
    for (auto& v : px) v = d(rng);
    return legmoment::Image(nx, ny, std::move(px), maxval, true);
}

inline legmoment::Image random_binary_image(std::mt19937_64& rng, std::size_t nx, std::size_t ny, double level = 255) {
    std::bernoulli_distribution d(0.5);
    std::vector<double> px(nx * ny);
    for (auto& v : px) v = d(rng) ? level : 0.0;
    return legmoment::Image(nx, ny, std::move(px), std::max(255.0, level), true);
}

inline double rel_error(double v, double ref) {
    const double d = v > ref ? v - ref : ref - v;
    const double r = ref < 0 ? -ref : ref;
    return d / (r > 1.0 ? r : 1.0);
}

} // namespace oracle
