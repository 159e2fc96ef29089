#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace legmoment {

/// Grey-level raster, row-major.
///
/// Axis convention: x runs along a raster row (column index i = 1..nx, the
/// width), y runs down the raster (row index j = 1..ny, the height). Sample
/// abscissas are x_i = (2i - nx - 1)/(nx - 1) and y_j = (2j - ny - 1)/(ny - 1),
/// so both axes map onto [-1, 1] independently.
class Image {
public:
    Image(std::size_t nx, std::size_t ny, std::vector<double> pixels, double max_value,
          bool integral = false);

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    double max_value() const { return max_value_; }
    /// True when every sample is an exact integer (e.g. loaded from PGM).
    bool integral() const { return integral_; }

    /// Pixel at column i, row j (both 0-based).
    double at(std::size_t i, std::size_t j) const { return pixels_[j * nx_ + i]; }
    std::span<const double> pixels() const { return pixels_; }
    std::span<const double> raster_row(std::size_t j) const {
        return std::span<const double>(pixels_).subspan(j * nx_, nx_);
    }

    Image transposed() const;
    Image flipped_x() const;

private:
    std::size_t nx_;
    std::size_t ny_;
    std::vector<double> pixels_;
    double max_value_;
    bool integral_;
};

/// One line of samples on the [-1,1] grid.
class Signal1D {
public:
    explicit Signal1D(std::vector<double> values);
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

/// Abscissa of 1-based sample `i` on an `n`-point grid.
inline double grid_abscissa(std::size_t i, std::size_t n) {
    return (2.0 * static_cast<double>(i) - static_cast<double>(n) - 1.0) /
           (static_cast<double>(n) - 1.0);
}

struct Run {
    std::size_t first; ///< 1-based, inclusive
    std::size_t last;  ///< 1-based, inclusive
    friend bool operator==(const Run&, const Run&) = default;
};

struct ConstantClass {
    double level;
};
struct BinaryRunsClass {
    double level;
    std::vector<Run> runs;
};
struct GeneralClass {};

using SignalClass = std::variant<ConstantClass, BinaryRunsClass, GeneralClass>;

SignalClass classify_signal(std::span<const double> values);
inline SignalClass classify_signal(const Signal1D& s) { return classify_signal(s.values()); }

/// Throws std::invalid_argument unless runs are sorted, disjoint and inside [1, n].
void validate_runs(std::span<const Run> runs, std::size_t n);

enum class ImageFormat { pgm_ascii, pgm_binary, csv, automatic };

ImageFormat parse_image_format(std::string_view name);

/// Parse an image from memory. `automatic` sniffs the PGM magic and falls
/// back to CSV.
Image parse_image(std::span<const char> bytes, ImageFormat format = ImageFormat::automatic);
Image load_image(const std::filesystem::path& path, ImageFormat format = ImageFormat::automatic);

/// Round and clamp every sample to [0, maxval] and write P5 (or P2 when ascii).
void save_pgm(const Image& img, const std::filesystem::path& path, int maxval = 255,
              bool ascii = false);
/// Raw reals, one raster row per line, 17 significant digits.
void save_csv(std::size_t nx, std::size_t ny, std::span<const double> values,
              const std::filesystem::path& path);
inline void save_csv(const Image& img, const std::filesystem::path& path) {
    save_csv(img.nx(), img.ny(), img.pixels(), path);
}

} // namespace legmoment
