#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "harmonic/portrait.hpp"
#include "harmonic/report.hpp"

using namespace harmonic;

namespace {

struct Common {
    std::string function;
    std::string format = "json";
    double tol_singular = -1;  // negative: command default
    double tol_eta = 1e-9;
    double tol_coeff = 1e-10;
    double tol_dedupe = 1e-7;
    double tol_newton = 1e-11;
    double tol_residual = 1e-9;
    int order = kDefaultTaylorOrder;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_real(const std::string& s) {
    const Complex c = parse_complex(s);
    if (c.imag() != 0.0) throw ParseError("expected a real number, got '" + s + "'", 0);
    return c.real();
}

SearchRegion parse_region(const std::string& text, int grid) {
    const auto parts = split(text, ',');
    SearchRegion r;
    r.grid = grid;
    if (parts.size() == 1) {
        r.half_width = parse_real(parts[0]);
    } else if (parts.size() == 2) {
        r.center = parse_complex(parts[0]);
        r.half_width = parse_real(parts[1]);
    } else if (parts.size() == 3) {
        r.center = {parse_real(parts[0]), parse_real(parts[1])};
        r.half_width = parse_real(parts[2]);
    } else {
        throw ParseError("region must be half_width, center,half_width or re,im,half_width", 0);
    }
    if (!(r.half_width > 0)) throw ParseError("region half width must be positive", 0);
    return r;
}

Window parse_window(const std::string& corners, const std::string& size) {
    const auto c = split(corners, ',');
    if (c.size() != 4) throw ParseError("window must be x0,y0,x1,y1", 0);
    Window w;
    w.lower_left = {parse_real(c[0]), parse_real(c[1])};
    w.upper_right = {parse_real(c[2]), parse_real(c[3])};
    const auto x = size.find('x');
    if (x == std::string::npos) throw ParseError("size must be WxH", 0);
    try {
        w.width_px = std::stoi(size.substr(0, x));
        w.height_px = std::stoi(size.substr(x + 1));
    } catch (const std::exception&) {
        throw ParseError("size must be WxH", 0);
    }
    try {
        w.validate();
    } catch (const PreconditionError& e) {
        throw ParseError(e.what(), 0);
    }
    return w;
}

ClassifierOptions classifier_options(const Common& c, double default_band) {
    ClassifierOptions o;
    o.singular_band = c.tol_singular >= 0 ? c.tol_singular : default_band;
    o.eta_tolerance = c.tol_eta;
    o.coefficient_zero = c.tol_coeff;
    o.zero_residual = c.tol_residual;
    o.order = c.order;
    return o;
}

FinderOptions finder_options(const Common& c) {
    FinderOptions o;
    o.classifier = classifier_options(c, 1e-9);
    if (c.tol_singular >= 0) o.singular_band = c.tol_singular;
    o.dedupe_radius = c.tol_dedupe;
    o.convergence = c.tol_newton;
    o.max_residual = c.tol_residual;
    return o;
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--h", c.function, "analytic part h(z), e.g. \"z/(z^2-1)\"")->required();
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--tol-singular", c.tol_singular, "half width of the singular band on |h'| - 1");
    cmd->add_option("--tol-eta", c.tol_eta, "|eta| at or below this is indeterminate");
    cmd->add_option("--tol-coeff", c.tol_coeff, "relative threshold for vanishing Taylor coefficients");
    cmd->add_option("--tol-dedupe", c.tol_dedupe, "distance under which located zeros are merged");
    cmd->add_option("--tol-newton", c.tol_newton, "Newton convergence: |f| <= tol (1 + |h'|)");
    cmd->add_option("--tol-residual", c.tol_residual, "largest |f| accepted at a zero");
    cmd->add_option("--order", c.order, "Taylor order for the series criteria")->check(CLI::Range(3, 64));
}

void emit(const Common& c, const Json& json, const std::string& text) {
    if (c.format == "json") std::cout << json.dump(2) << "\n";
    else std::cout << text;
}

std::vector<ExceptionalPoint> all_points(const ZeroSearch& s, const HarmonicMapping& f) {
    std::vector<ExceptionalPoint> pts = s.zeros;
    for (auto& p : pole_points(f)) pts.push_back(std::move(p));
    return pts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zeros, poles and Poincare indices of f(z) = h(z) - conj(z)"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    Common c;
    std::string at, region_text, window_text = "-2,-2,2,2", size_text = "512x512", out_path, circle_text;
    std::vector<std::string> marker_texts;
    int grid = 64;
    bool mark_exceptional = false;

    auto* analyze = app.add_subcommand("analyze", "canonical form, poles, zeros, indices and global audit");
    auto* zeros = app.add_subcommand("zeros", "list the zeros of f");
    auto* index_cmd = app.add_subcommand("index", "Poincare index at one point");
    auto* portrait = app.add_subcommand("portrait", "render a phase portrait as PPM");
    auto* verify = app.add_subcommand("verify", "argument-principle audit; exit 1 when inconsistent");
    for (auto* cmd : {analyze, zeros, index_cmd, portrait, verify}) add_common(cmd, c);
    for (auto* cmd : {analyze, zeros, verify}) {
        cmd->add_option("--region", region_text, "search square: half_width | center,half_width | re,im,half_width");
        cmd->add_option("--grid", grid, "seed grid nodes per axis")->check(CLI::Range(8, 4096));
    }
    index_cmd->add_option("--at", at, "point as a+bi")->required();
    portrait->add_option("--window", window_text, "x0,y0,x1,y1");
    portrait->add_option("--size", size_text, "WxH in pixels");
    portrait->add_option("--out", out_path, "output .ppm path")->required();
    portrait->add_option("--marker", marker_texts, "point to mark, as a+bi (repeatable)");
    portrait->add_flag("--mark-exceptional", mark_exceptional, "mark zeros and poles inside the window");
    verify->add_option("--circle", circle_text, "audit circle re,im,radius instead of the automatic large circle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const HarmonicMapping f = HarmonicMapping::parse(c.function);
        const FinderOptions fopts = finder_options(c);
        auto region = [&] {
            if (!region_text.empty()) return parse_region(region_text, grid);
            return default_region(f, grid);
        };

        if (*index_cmd) {
            const Complex z0 = parse_complex(at);
            const IndexVerdict v = index(f, z0, classifier_options(c, 1e-9));
            Json j;
            j["function"] = to_json(f.h());
            j["z"] = to_json(z0);
            j["verdict"] = to_json(v);
            emit(c, j, to_text(v) + "\n");
            return 0;
        }

        if (*zeros) {
            const ZeroSearch s = find_zeros(f, region(), fopts);
            std::string text;
            for (const auto& p : s.zeros) text += to_text(p) + "\n";
            for (const auto& n : s.notes) text += "note: " + n + "\n";
            Json j = to_json(s);
            j["function"] = to_json(f.h());
            emit(c, j, text);
            return 0;
        }

        if (*analyze) {
            Json j;
            j["function"] = to_json(f.h());
            std::string text = "h(z) = " + canonical_text(f.h()) + "\n";
            const auto poles = pole_points(f);
            Json pj = Json::array();
            for (const auto& p : poles) {
                pj.push_back(to_json(p));
                text += to_text(p) + "\n";
            }
            j["poles"] = pj;
            const ZeroSearch s = find_zeros(f, region(), fopts);
            j["zeros"] = to_json(s);
            for (const auto& p : s.zeros) text += to_text(p) + "\n";
            if (f.h().is_rational() && f.h().rational()->degree() >= 2 && region_text.empty()) {
                try {
                    const AuditReport r = audit_global(f, fopts);
                    j["audit"] = to_json(r);
                    text += "audit: " + to_text(r);
                } catch (const Error& e) {
                    j["audit"] = Json{{"error", e.what()}};
                    text += std::string("audit failed: ") + e.what() + "\n";
                }
            }
            emit(c, j, text);
            return 0;
        }

        if (*verify) {
            AuditReport r;
            if (!circle_text.empty()) {
                const auto parts = split(circle_text, ',');
                if (parts.size() != 3) throw ParseError("circle must be re,im,radius", 0);
                const Complex center{parse_real(parts[0]), parse_real(parts[1])};
                const double radius = parse_real(parts[2]);
                if (!(radius > 0)) throw ParseError("circle radius must be positive", 0);
                SearchRegion sr = region_text.empty() ? SearchRegion{center, 1.05 * radius, grid}
                                                      : parse_region(region_text, grid);
                const ZeroSearch s = find_zeros(f, sr, fopts);
                r = audit_curve(f, ClosedCurve::circle(center, radius), all_points(s, f));
                r.radius = radius;
                for (const auto& n : s.notes) r.notes.push_back(n);
                if (s.non_isolated || s.budget_exceeded) r.consistent = false;
            } else {
                r = audit_global(f, fopts);
            }
            Json j = to_json(r);
            j["function"] = to_json(f.h());
            emit(c, j, to_text(r));
            return r.consistent ? 0 : 1;
        }

        if (*portrait) {
            const Window w = parse_window(window_text, size_text);
            std::vector<Complex> markers;
            for (const auto& m : marker_texts) markers.push_back(parse_complex(m));
            if (mark_exceptional) {
                const Complex center = 0.5 * (w.lower_left + w.upper_right);
                const Complex half = 0.5 * (w.upper_right - w.lower_left);
                SearchRegion sr{center, std::max(half.real(), half.imag()), grid};
                for (const auto& p : all_points(find_zeros(f, sr, fopts), f)) {
                    const Complex z = p.location;
                    if (z.real() >= w.lower_left.real() && z.real() <= w.upper_right.real() &&
                        z.imag() >= w.lower_left.imag() && z.imag() <= w.upper_right.imag())
                        markers.push_back(z);
                }
            }
            const Image img = render(f, w, markers);
            write_ppm(img, out_path);
            Json j;
            j["function"] = to_json(f.h());
            j["path"] = out_path;
            j["width"] = img.width;
            j["height"] = img.height;
            j["degenerate_pixels"] = img.degenerate_pixels;
            Json mj = Json::array();
            for (Complex m : markers) mj.push_back(to_json(m));
            j["markers"] = mj;
            emit(c, j, "wrote " + out_path + "\n");
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
