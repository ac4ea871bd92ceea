#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmonic/winding.hpp"

namespace harmonic {

struct Window {
    Complex lower_left{-1.0, -1.0};
    Complex upper_right{1.0, 1.0};
    int width_px = 256;
    int height_px = 256;

    /// Throws PreconditionError unless upper_right dominates lower_left and
    /// both pixel counts are at least 16.
    void validate() const;
    Complex pixel_center(int col, int row) const;
    /// Fractional (col, row) of a point, rows counted from the top.
    std::array<double, 2> to_pixel(Complex z) const;
};

using Rgb = std::array<std::uint8_t, 3>;

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  ///< row-major, top row first
    int degenerate_pixels = 0;      ///< painted gray: |f| tiny or at a pole

    Rgb pixel(int col, int row) const;
    void set(int col, int row, Rgb c);
};

inline constexpr Rgb kGray{128, 128, 128};
inline constexpr Rgb kMarker{0, 0, 0};

/// Fully saturated HSV color with hue arg / 2pi: 0 is red, then yellow,
/// green, cyan, blue, magenta counterclockwise.
Rgb phase_color(double arg);
/// Inverse of phase_color up to quantization; empty for unsaturated pixels.
std::optional<double> phase_of(Rgb c);

struct RenderOptions {
    double marker_fraction = 0.01;
    /// 0: HARMONIC_INDEX_THREADS or hardware concurrency.
    unsigned threads = 0;
};

Image render(const ComplexFunction& f, const Window& window, const std::vector<Complex>& markers = {},
             const RenderOptions& opts = {});
Image render(const HarmonicMapping& f, const Window& window, const std::vector<Complex>& markers = {},
             const RenderOptions& opts = {});

/// "P6\n<w> <h>\n255\n" followed by the RGB bytes.
std::string encode_ppm(const Image& image);
void write_ppm(const Image& image, const std::string& path);

/// Net color-wheel turns along the pixel circle of the given radius,
/// traversed counterclockwise in the plane. Throws PreconditionError when
/// the circle leaves the image and PortraitError on an unsaturated pixel or
/// a hue step of more than pi/3.
int color_cycle_count(const Image& image, int center_col, int center_row, int radius_px);

}  // namespace harmonic
