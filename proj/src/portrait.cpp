#include "harmonic/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <thread>

#include "harmonic/zero_finder.hpp"

namespace harmonic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void Window::validate() const {
    if (!(upper_right.real() > lower_left.real() && upper_right.imag() > lower_left.imag()))
        throw PreconditionError("window corners must satisfy lower_left < upper_right componentwise");
    if (width_px < 16 || height_px < 16) throw PreconditionError("window needs at least 16 pixels per side");
}

Complex Window::pixel_center(int col, int row) const {
    const double w = upper_right.real() - lower_left.real();
    const double h = upper_right.imag() - lower_left.imag();
    return {lower_left.real() + (col + 0.5) * w / width_px, upper_right.imag() - (row + 0.5) * h / height_px};
}

std::array<double, 2> Window::to_pixel(Complex z) const {
    const double w = upper_right.real() - lower_left.real();
    const double h = upper_right.imag() - lower_left.imag();
    return {(z.real() - lower_left.real()) * width_px / w - 0.5, (upper_right.imag() - z.imag()) * height_px / h - 0.5};
}

Rgb Image::pixel(int col, int row) const {
    const std::size_t i = 3 * (static_cast<std::size_t>(row) * width + col);
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
}

void Image::set(int col, int row, Rgb c) {
    const std::size_t i = 3 * (static_cast<std::size_t>(row) * width + col);
    rgb[i] = c[0];
    rgb[i + 1] = c[1];
    rgb[i + 2] = c[2];
}

Rgb phase_color(double arg) {
    double h = std::fmod(arg / kTwoPi, 1.0);
    if (h < 0) h += 1.0;
    const double s = h * 6.0;
    const int sector = std::min(5, static_cast<int>(s));
    const double frac = s - sector;
    double r = 0, g = 0, b = 0;
    switch (sector) {
    case 0: r = 1; g = frac; break;
    case 1: r = 1 - frac; g = 1; break;
    case 2: g = 1; b = frac; break;
    case 3: g = 1 - frac; b = 1; break;
    case 4: r = frac; b = 1; break;
    default: r = 1; b = 1 - frac; break;
    }
    auto q = [](double v) { return static_cast<std::uint8_t>(std::lround(255.0 * v)); };
    return {q(r), q(g), q(b)};
}

std::optional<double> phase_of(Rgb c) {
    const int r = c[0], g = c[1], b = c[2];
    const int mx = std::max({r, g, b}), mn = std::min({r, g, b});
    if (mx == mn) return std::nullopt;
    const double d = mx - mn;
    double h;
    if (mx == r) h = (g - b) / d;
    else if (mx == g) h = 2.0 + (b - r) / d;
    else h = 4.0 + (r - g) / d;
    h *= kTwoPi / 6.0;
    if (h < 0) h += kTwoPi;
    return h;
}

Image render(const ComplexFunction& f, const Window& window, const std::vector<Complex>& markers,
             const RenderOptions& opts) {
    window.validate();
    Image img;
    img.width = window.width_px;
    img.height = window.height_px;
    img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);

    std::vector<int> gray_per_row(img.height, 0);
    auto render_row = [&](int row) {
        for (int col = 0; col < img.width; ++col) {
            Rgb c = kGray;
            try {
                const Complex v = f(window.pixel_center(col, row));
                if (std::isfinite(v.real()) && std::isfinite(v.imag()) && std::abs(v) >= 1e-300)
                    c = phase_color(std::arg(v));
            } catch (const Error&) {
            }
            if (c == kGray) ++gray_per_row[row];
            img.set(col, row, c);
        }
    };
    const unsigned threads =
        std::max(1u, std::min<unsigned>(opts.threads ? opts.threads : default_thread_count(), img.height));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int row = static_cast<int>(t); row < img.height; row += static_cast<int>(threads)) render_row(row);
        });
    for (auto& th : pool) th.join();
    for (int g : gray_per_row) img.degenerate_pixels += g;

    const double radius = std::max(1.0, opts.marker_fraction * std::min(img.width, img.height));
    for (Complex m : markers) {
        const auto [mc, mr] = window.to_pixel(m);
        const int c0 = static_cast<int>(std::floor(mc - radius)), c1 = static_cast<int>(std::ceil(mc + radius));
        const int r0 = static_cast<int>(std::floor(mr - radius)), r1 = static_cast<int>(std::ceil(mr + radius));
        for (int row = std::max(0, r0); row <= std::min(img.height - 1, r1); ++row)
            for (int col = std::max(0, c0); col <= std::min(img.width - 1, c1); ++col)
                if (std::hypot(col - mc, row - mr) <= radius) img.set(col, row, kMarker);
    }
    return img;
}

Image render(const HarmonicMapping& f, const Window& window, const std::vector<Complex>& markers,
             const RenderOptions& opts) {
    return render([&f](Complex z) { return f(z); }, window, markers, opts);
}

std::string encode_ppm(const Image& image) {
    std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.append(image.rgb.begin(), image.rgb.end());
    return out;
}

void write_ppm(const Image& image, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path + " for writing");
    const std::string bytes = encode_ppm(image);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw Error("failed writing " + path);
}

int color_cycle_count(const Image& image, int center_col, int center_row, int radius_px) {
    if (radius_px < 1) throw PreconditionError("radius must be at least one pixel");
    if (center_col - radius_px < 0 || center_row - radius_px < 0 || center_col + radius_px >= image.width ||
        center_row + radius_px >= image.height)
        throw PreconditionError("sampling circle leaves the image");

    const int samples = std::max(64, 8 * radius_px);
    auto phase_at = [&](int k) {
        const double t = kTwoPi * k / samples;
        const int col = static_cast<int>(std::lround(center_col + radius_px * std::cos(t)));
        const int row = static_cast<int>(std::lround(center_row - radius_px * std::sin(t)));
        const auto p = phase_of(image.pixel(col, row));
        if (!p) throw PortraitError("unsaturated pixel on the sampling circle");
        return *p;
    };
    double total = 0.0;
    double prev = phase_at(0);
    for (int k = 1; k <= samples; ++k) {
        const double cur = phase_at(k % samples);
        double d = std::remainder(cur - prev, kTwoPi);
        if (std::abs(d) > std::numbers::pi / 3.0) throw PortraitError("hue jump too large; increase the radius");
        total += d;
        prev = cur;
    }
    const double turns = total / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) >= 0.25) throw PortraitError("hue total is not close to a whole turn");
    return static_cast<int>(rounded);
}

}  // namespace harmonic
