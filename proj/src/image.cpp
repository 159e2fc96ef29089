#include "legmoment/image.hpp"

#include "legmoment/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace legmoment {

Image::Image(std::size_t nx, std::size_t ny, std::vector<double> pixels, double max_value,
             bool integral)
    : nx_(nx), ny_(ny), pixels_(std::move(pixels)), max_value_(max_value), integral_(integral) {
    if (nx_ < 2 || ny_ < 2)
        throw std::invalid_argument("image dimensions must be at least 2x2, got " +
                                    std::to_string(nx_) + "x" + std::to_string(ny_));
    if (pixels_.size() != nx_ * ny_)
        throw std::invalid_argument("pixel count does not match dimensions");
    if (!(max_value_ > 0.0) || !std::isfinite(max_value_))
        throw std::invalid_argument("max value must be positive and finite");
    for (double v : pixels_) {
        if (!(v >= 0.0 && v <= max_value_))
            throw std::invalid_argument("pixel intensity outside [0, max value]");
    }
}

Image Image::transposed() const {
    std::vector<double> out(pixels_.size());
    for (std::size_t j = 0; j < ny_; ++j)
        for (std::size_t i = 0; i < nx_; ++i) out[i * ny_ + j] = pixels_[j * nx_ + i];
    return Image(ny_, nx_, std::move(out), max_value_, integral_);
}

Image Image::flipped_x() const {
    std::vector<double> out(pixels_.size());
    for (std::size_t j = 0; j < ny_; ++j)
        for (std::size_t i = 0; i < nx_; ++i)
            out[j * nx_ + i] = pixels_[j * nx_ + (nx_ - 1 - i)];
    return Image(nx_, ny_, std::move(out), max_value_, integral_);
}

Signal1D::Signal1D(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw std::invalid_argument("signal length must be at least 2");
}

SignalClass classify_signal(std::span<const double> values) {
    if (values.empty()) return GeneralClass{};
    const double first = values.front();
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == first; }))
        return ConstantClass{first};

    double level = 0.0;
    for (double v : values) {
        if (v == 0.0) continue;
        if (v < 0.0) return GeneralClass{};
        if (level == 0.0) level = v;
        else if (v != level) return GeneralClass{};
    }

    BinaryRunsClass out{level, {}};
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == 0.0) continue;
        if (!out.runs.empty() && out.runs.back().last == i) out.runs.back().last = i + 1;
        else out.runs.push_back({i + 1, i + 1});
    }
    return out;
}

void validate_runs(std::span<const Run> runs, std::size_t n) {
    std::size_t prev_last = 0;
    for (const Run& r : runs) {
        if (r.first < 1 || r.last < r.first || r.last > n)
            throw std::invalid_argument("run out of range");
        if (r.first <= prev_last) throw std::invalid_argument("runs overlap or are unsorted");
        prev_last = r.last;
    }
}

ImageFormat parse_image_format(std::string_view name) {
    if (name == "pgm-ascii") return ImageFormat::pgm_ascii;
    if (name == "pgm-binary") return ImageFormat::pgm_binary;
    if (name == "csv") return ImageFormat::csv;
    if (name == "auto") return ImageFormat::automatic;
    throw std::invalid_argument("unknown image format '" + std::string(name) + "'");
}

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::string at_byte(std::size_t pos) { return "byte " + std::to_string(pos); }

class PgmReader {
public:
    explicit PgmReader(std::span<const char> bytes) : b_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < b_.size()) {
            if (is_space(b_[pos_])) {
                ++pos_;
            } else if (b_[pos_] == '#') {
                while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    unsigned long read_uint(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        if (pos_ >= b_.size()) throw ParseError(std::string("truncated: expected ") + what, at_byte(start));
        unsigned long value = 0;
        auto [ptr, ec] = std::from_chars(b_.data() + pos_, b_.data() + b_.size(), value);
        if (ec != std::errc{} || ptr == b_.data() + pos_)
            throw ParseError(std::string("expected unsigned integer for ") + what, at_byte(start));
        pos_ = static_cast<std::size_t>(ptr - b_.data());
        if (pos_ < b_.size() && !is_space(b_[pos_]) && b_[pos_] != '#')
            throw ParseError(std::string("garbage after ") + what, at_byte(pos_));
        return value;
    }

    std::size_t pos() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }
    std::span<const char> bytes() const { return b_; }

private:
    std::span<const char> b_;
    std::size_t pos_ = 0;
};

Image parse_pgm(std::span<const char> bytes, ImageFormat expected) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw ParseError("bad PGM magic, expected P2 or P5", at_byte(0));
    const bool binary = bytes[1] == '5';
    if (expected == ImageFormat::pgm_ascii && binary)
        throw ParseError("expected ascii PGM (P2), found P5", at_byte(0));
    if (expected == ImageFormat::pgm_binary && !binary)
        throw ParseError("expected binary PGM (P5), found P2", at_byte(0));

    PgmReader rd(bytes);
    rd.advance(2);
    if (rd.pos() < bytes.size() && !is_space(bytes[rd.pos()]) && bytes[rd.pos()] != '#')
        throw ParseError("missing whitespace after magic", at_byte(rd.pos()));

    rd.skip_space_and_comments();
    const std::size_t dims_at = rd.pos();
    const unsigned long width = rd.read_uint("width");
    const unsigned long height = rd.read_uint("height");
    rd.skip_space_and_comments();
    const std::size_t maxval_at = rd.pos();
    const unsigned long maxval = rd.read_uint("maxval");
    if (maxval == 0 || maxval > 65535)
        throw ParseError("maxval must be in [1, 65535], got " + std::to_string(maxval),
                         at_byte(maxval_at));
    if (width < 2 || height < 2)
        throw ParseError("dimension < 2 (" + std::to_string(width) + "x" +
                             std::to_string(height) + ")",
                         at_byte(dims_at));

    const std::size_t count = static_cast<std::size_t>(width) * height;
    std::vector<double> pixels(count);

    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (rd.pos() >= bytes.size()) throw ParseError("truncated before raster", at_byte(rd.pos()));
        rd.advance(1);
        const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
        const std::size_t need = count * sample_bytes;
        if (bytes.size() - rd.pos() < need)
            throw ParseError("truncated raster: need " + std::to_string(need) + " bytes, have " +
                                 std::to_string(bytes.size() - rd.pos()),
                             at_byte(rd.pos()));
        const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data() + rd.pos());
        for (std::size_t k = 0; k < count; ++k) {
            unsigned v = sample_bytes == 1 ? raw[k] : (unsigned(raw[2 * k]) << 8) | raw[2 * k + 1];
            if (v > maxval)
                throw ParseError("sample " + std::to_string(v) + " exceeds maxval",
                                 at_byte(rd.pos() + k * sample_bytes));
            pixels[k] = static_cast<double>(v);
        }
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            rd.skip_space_and_comments();
            const std::size_t at = rd.pos();
            unsigned long v = rd.read_uint("sample");
            if (v > maxval)
                throw ParseError("sample " + std::to_string(v) + " exceeds maxval", at_byte(at));
            pixels[k] = static_cast<double>(v);
        }
    }
    return Image(width, height, std::move(pixels), static_cast<double>(maxval), true);
}

Image parse_csv(std::span<const char> bytes) {
    std::vector<double> pixels;
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    double maxv = 0.0;

    while (pos < bytes.size()) {
        std::size_t eol = pos;
        while (eol < bytes.size() && bytes[eol] != '\n') ++eol;
        ++line_no;
        std::string_view line(bytes.data() + pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        std::size_t fields = 0;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            std::string_view field = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
            while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
            while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            const std::string where = "line " + std::to_string(line_no) + ", field " + std::to_string(fields + 1);
            if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
                throw ParseError("invalid number '" + std::string(field) + "'", where);
            if (!std::isfinite(v) || v < 0.0)
                throw ParseError("intensity must be finite and non-negative", where);
            maxv = std::max(maxv, v);
            pixels.push_back(v);
            ++fields;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (height == 0) width = fields;
        else if (fields != width)
            throw ParseError("row has " + std::to_string(fields) + " values, expected " +
                                 std::to_string(width),
                             "line " + std::to_string(line_no));
        ++height;
    }
    if (width < 2 || height < 2)
        throw ParseError("dimension < 2 (" + std::to_string(width) + "x" + std::to_string(height) + ")",
                         "line " + std::to_string(line_no));
    return Image(width, height, std::move(pixels), std::max(maxv, 255.0), false);
}

} // namespace

Image parse_image(std::span<const char> bytes, ImageFormat format) {
    switch (format) {
    case ImageFormat::csv:
        return parse_csv(bytes);
    case ImageFormat::pgm_ascii:
    case ImageFormat::pgm_binary:
        return parse_pgm(bytes, format);
    case ImageFormat::automatic:
        // A leading 'P' can never start a numeric CSV, so report it as a bad PGM.
        if (!bytes.empty() && bytes[0] == 'P') return parse_pgm(bytes, format);
        return parse_csv(bytes);
    }
    throw std::invalid_argument("unknown image format");
}

Image load_image(const std::filesystem::path& path, ImageFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read error on '" + path.string() + "'");
    if (format == ImageFormat::automatic) {
        auto ext = path.extension().string();
        if (ext == ".csv") format = ImageFormat::csv;
    }
    return parse_image(std::span<const char>(data.data(), data.size()), format);
}

void save_pgm(const Image& img, const std::filesystem::path& path, int maxval, bool ascii) {
    if (maxval < 1 || maxval > 65535) throw std::invalid_argument("maxval out of range");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << (ascii ? "P2\n" : "P5\n") << img.nx() << ' ' << img.ny() << '\n' << maxval << '\n';
    auto quantize = [&](double v) {
        return static_cast<unsigned>(std::clamp(std::lround(v), 0L, static_cast<long>(maxval)));
    };
    for (std::size_t j = 0; j < img.ny(); ++j) {
        for (std::size_t i = 0; i < img.nx(); ++i) {
            const unsigned q = quantize(img.at(i, j));
            if (ascii) {
                out << q << (i + 1 == img.nx() ? '\n' : ' ');
            } else if (maxval < 256) {
                out.put(static_cast<char>(q));
            } else {
                out.put(static_cast<char>(q >> 8));
                out.put(static_cast<char>(q & 0xff));
            }
        }
    }
    if (!out) throw IoError("write error on '" + path.string() + "'");
}

void save_csv(std::size_t nx, std::size_t ny, std::span<const double> values,
              const std::filesystem::path& path) {
    if (values.size() != nx * ny) throw std::invalid_argument("value count does not match dimensions");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    char buf[40];
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", values[j * nx + i]);
            out << buf << (i + 1 == nx ? '\n' : ',');
        }
    }
    if (!out) throw IoError("write error on '" + path.string() + "'");
}

} // namespace legmoment
