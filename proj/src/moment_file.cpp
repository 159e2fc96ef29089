#include "legmoment/moment_file.hpp"

#include "legmoment/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace legmoment {

namespace {

constexpr std::string_view kMagic = "# legendre-moments v1";

std::string line_at(std::size_t n) { return "line " + std::to_string(n); }

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
T parse_number(std::string_view tok, const char* what, std::size_t line) {
    T v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(std::string("invalid ") + what + " '" + std::string(tok) + "'", line_at(line));
    return v;
}

} // namespace

std::string write_moments(const MomentTable& t, std::string_view method) {
    std::string out;
    out.reserve(32 * t.size() + 64);
    out += kMagic;
    out += ' ' + std::to_string(t.nx()) + ' ' + std::to_string(t.ny()) + ' ' +
           std::to_string(t.order()) + ' ' + std::string(method) + '\n';
    char buf[64];
    for (int p = 0; p <= t.order(); ++p) {
        for (int q = 0; p + q <= t.order(); ++q) {
            const double v = t.at(p, q);
            if (!std::isfinite(v))
                throw std::invalid_argument("non-finite moment at (" + std::to_string(p) + ", " +
                                            std::to_string(q) + ")");
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", p, q, v);
            out += buf;
        }
    }
    return out;
}

MomentFile read_moments(std::string_view text) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    auto next_line = [&](std::string_view& line) {
        if (pos >= text.size()) return false;
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        ++line_no;
        return true;
    };

    std::string_view header;
    if (!next_line(header)) throw ParseError("empty moment file", line_at(1));
    if (!header.starts_with(kMagic)) {
        if (header.starts_with("# legendre-moments"))
            throw ParseError("unsupported moment file version", line_at(1));
        throw ParseError("missing '# legendre-moments v1' header", line_at(1));
    }
    auto fields = split_ws(header.substr(kMagic.size()));
    if (fields.size() != 4) throw ParseError("header needs Nx Ny M method", line_at(1));
    const auto nx = parse_number<std::size_t>(fields[0], "Nx", 1);
    const auto ny = parse_number<std::size_t>(fields[1], "Ny", 1);
    const auto order = parse_number<int>(fields[2], "order", 1);
    if (order < 0) throw ParseError("negative order", line_at(1));

    MomentFile out{MomentTable(order, nx, ny), std::string(fields[3])};
    std::vector<bool> seen(out.table.size(), false);
    std::size_t records = 0;

    std::string_view line;
    while (next_line(line)) {
        auto tok = split_ws(line);
        if (tok.empty()) continue;
        if (tok.size() != 3) throw ParseError("expected 'p q value'", line_at(line_no));
        const int p = parse_number<int>(tok[0], "p", line_no);
        const int q = parse_number<int>(tok[1], "q", line_no);
        const double v = parse_number<double>(tok[2], "value", line_no);
        if (!std::isfinite(v)) throw ParseError("non-finite value", line_at(line_no));
        if (p < 0 || q < 0 || p + q > order)
            throw ParseError("index (" + std::to_string(p) + ", " + std::to_string(q) +
                                 ") outside order " + std::to_string(order),
                             line_at(line_no));
        const std::size_t idx = out.table.index(p, q);
        if (seen[idx])
            throw ParseError("duplicate record (" + std::to_string(p) + ", " + std::to_string(q) + ")",
                             line_at(line_no));
        seen[idx] = true;
        out.table.at(p, q) = v;
        ++records;
    }
    if (records != out.table.size()) {
        for (int p = 0; p <= order; ++p)
            for (int q = 0; p + q <= order; ++q)
                if (!seen[out.table.index(p, q)])
                    throw ParseError("missing record (" + std::to_string(p) + ", " +
                                         std::to_string(q) + ")",
                                     line_at(line_no));
    }
    return out;
}

void save_moments(const MomentTable& t, std::string_view method, const std::filesystem::path& path) {
    const std::string text = write_moments(t, method);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("write error on '" + path.string() + "'");
}

MomentFile load_moments(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_moments(ss.str());
}

} // namespace legmoment
