#pragma once

// Deterministic SVG 1.1 output for the three figure families: the
// fundamental domain with its half-circles, tessellations of circle
// images under group words, the flat slit pictures with geodesic traces,
// and the exponential-sum curve.  Numbers are formatted with to_chars
// (shortest round-trip form), so identical inputs give byte-identical
// files.

#include <charconv>
#include <complex>
#include <fstream>
#include <string>
#include <vector>

#include "curve.hpp"
#include "monster_group.hpp"
#include "slit_plane.hpp"

namespace nessie {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_number(double v) {
    if (v == 0.0) return "0";  // avoid the "-0" spelling
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

//! Math-coordinate canvas (y up) mapped onto SVG pixels (y down).
class SvgCanvas {
public:
    SvgCanvas(double xmin, double xmax, double ymin, double ymax, double px_per_unit = 40.0)
        : xmin_(xmin), ymax_(ymax), scale_(px_per_unit),
          width_((xmax - xmin) * px_per_unit), height_((ymax - ymin) * px_per_unit) {}

    double sx(double x) const { return (x - xmin_) * scale_; }
    double sy(double y) const { return (ymax_ - y) * scale_; }
    double scale() const { return scale_; }
    double width() const { return width_; }
    double height() const { return height_; }

    void line(double x1, double y1, double x2, double y2, const std::string& style) {
        body_ += "<line x1=\"" + format_number(sx(x1)) + "\" y1=\"" + format_number(sy(y1)) +
                 "\" x2=\"" + format_number(sx(x2)) + "\" y2=\"" + format_number(sy(y2)) +
                 "\" " + style + "/>\n";
    }

    void path(const std::string& d, const std::string& style) {
        body_ += "<path d=\"" + d + "\" " + style + "/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
        std::string d;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            d += (i == 0 ? "M" : " L");
            d += format_number(sx(pts[i].first)) + " " + format_number(sy(pts[i].second));
        }
        path(d, style);
    }

    //! Upper half-circle over [center - r, center + r] on the axis.
    //! Sweep flag 1 walks from the west foot over the top to the east
    //! foot in SVG pixel coordinates.
    std::string half_circle_d(double center, double radius) const {
        const std::string r = format_number(radius * scale_);
        return "M" + format_number(sx(center - radius)) + " " + format_number(sy(0.0)) +
               " A" + r + " " + r + " 0 0 1 " + format_number(sx(center + radius)) + " " +
               format_number(sy(0.0));
    }

    void half_circle(double center, double radius, const std::string& style) {
        path(half_circle_d(center, radius), style);
    }

    void raw(const std::string& element) { body_ += element + "\n"; }

    std::string document() const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
               "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
               format_number(width_) + "\" height=\"" + format_number(height_) +
               "\" viewBox=\"0 0 " + format_number(width_) + " " + format_number(height_) +
               "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ +
               "</svg>\n";
    }

private:
    double xmin_, ymax_, scale_, width_, height_;
    std::string body_;
};

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

inline const char* palette(std::size_t i) {
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};
    return kColors[i % (sizeof kColors / sizeof kColors[0])];
}

//! Optional view-box override for the scene renderers; the defaults
//! enclose all constructed geometry at default parameters.
struct SceneView {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool valid() const { return xmax > xmin && ymax > ymin; }
};

// -------------------------------------------------------------- figures

//! The axis, the circles at 4n for |n| <= window, and the fundamental
//! domain shaded above them.
inline std::string domain_svg(long long window, const SceneView& view = {}) {
    if (window < 0) throw std::invalid_argument("domain_svg: window must be >= 0");
    const double xmin = view.valid() ? view.xmin : -4.0 * window - 3.0;
    const double xmax = view.valid() ? view.xmax : 4.0 * window + 3.0;
    const double ytop = view.valid() ? view.ymax : 4.0;
    SvgCanvas canvas(xmin, xmax, view.valid() ? view.ymin : 0.0, ytop);

    // Shaded region: along the axis, over every bump, around the frame.
    std::string d = "M" + format_number(canvas.sx(xmin)) + " " + format_number(canvas.sy(0.0));
    for (long long n = -window; n <= window; ++n) {
        const double c = 4.0 * n;
        d += " L" + format_number(canvas.sx(c - 1.0)) + " " + format_number(canvas.sy(0.0));
        const std::string r = format_number(canvas.scale());
        d += " A" + r + " " + r + " 0 0 1 " + format_number(canvas.sx(c + 1.0)) + " " +
             format_number(canvas.sy(0.0));
    }
    d += " L" + format_number(canvas.sx(xmax)) + " " + format_number(canvas.sy(0.0));
    d += " L" + format_number(canvas.sx(xmax)) + " " + format_number(canvas.sy(ytop));
    d += " L" + format_number(canvas.sx(xmin)) + " " + format_number(canvas.sy(ytop));
    d += " Z";
    canvas.path(d, "fill=\"#dbeafe\" stroke=\"none\"");

    canvas.line(xmin, 0.0, xmax, 0.0, "stroke=\"#444444\" stroke-width=\"1\"");
    for (long long n = -window; n <= window; ++n)
        canvas.half_circle(4.0 * n, 1.0,
                           "fill=\"none\" stroke=\"" + std::string(palette(0)) +
                               "\" stroke-width=\"2\" class=\"geodesic\"");
    return canvas.document();
}

inline void render_domain_svg(long long window, const std::string& out_path) {
    write_text_file(out_path, domain_svg(window));
}

struct TessellationStats {
    long long arcs_total = 0;    // words x in-view base circles
    long long arcs_drawn = 0;
    long long arcs_clipped = 0;  // image circles smaller than eps
};

//! Images of the in-view base circles under every reduced word of
//! length <= depth.  Image circles shallower than eps are clipped away;
//! vertical-line images are drawn from eps up to the frame top.
inline TessellationStats tessellation_svg(long long window, int depth, std::string& out_doc,
                                          double eps = 1e-3,
                                          std::size_t max_words = 1'000'000,
                                          const SceneView& view = {}) {
    const double xmin = view.valid() ? view.xmin : -2.0;
    const double xmax = view.valid() ? view.xmax : 16.0 * window + 14.0;
    const double ytop = view.valid() ? view.ymax : 4.0;
    SvgCanvas canvas(xmin, xmax, view.valid() ? view.ymin : 0.0, ytop);
    canvas.line(xmin, 0.0, xmax, 0.0, "stroke=\"#444444\" stroke-width=\"1\"");

    std::vector<GeneralizedCircle> base;
    for (long long n = -(static_cast<long long>(xmax) / 4 + 1);
         4.0 * n - 1.0 < xmax; ++n) {
        if (4.0 * n + 1.0 <= xmin) continue;
        base.push_back(pairing_circle(4 * n));
    }

    TessellationStats stats;
    for_each_word(window, depth, [&](const Word& w, const MobiusMap& mat) {
        const std::string style = "fill=\"none\" stroke=\"" +
                                  std::string(palette(w.size())) +
                                  "\" stroke-width=\"1\" class=\"geodesic\"";
        for (const auto& circle : base) {
            const GeneralizedCircle img = circle_image(mat, circle);
            ++stats.arcs_total;
            if (img.is_circle()) {
                if (img.radius < eps) {
                    ++stats.arcs_clipped;
                    continue;
                }
                canvas.half_circle(img.center, img.radius, style);
            } else {
                canvas.line(img.center, eps, img.center, ytop, style);
            }
            ++stats.arcs_drawn;
        }
    }, max_words);

    out_doc = canvas.document();
    return stats;
}

inline TessellationStats render_tessellation_svg(long long window, int depth,
                                                 const std::string& out_path,
                                                 double eps = 1e-3,
                                                 std::size_t max_words = 1'000'000) {
    std::string doc;
    const auto stats = tessellation_svg(window, depth, doc, eps, max_words);
    write_text_file(out_path, doc);
    return stats;
}

//! The slit family on the plane, pairs marked by color and by a tick
//! count (pair p carries p+1 ticks at each slit midpoint), with an
//! optional geodesic trace: solid flight segments, dashed gluing jumps.
inline std::string flat_svg(const SlitSurface& surf, const GeodesicTrace* trace = nullptr,
                            const SceneView& view = {}) {
    const int k = static_cast<int>(surf.slits().size()) / 2;
    const double xmin = view.valid() ? view.xmin : 0.0;
    const double xmax = view.valid() ? view.xmax : 8.0 * k + 4.0;
    SvgCanvas canvas(xmin, xmax, view.valid() ? view.ymin : -4.0, view.valid() ? view.ymax : 4.0);

    canvas.line(xmin, 0.0, xmax, 0.0, "stroke=\"#dddddd\" stroke-width=\"1\"");
    for (std::size_t i = 0; i < surf.slits().size(); ++i) {
        const Slit& s = surf.slits()[i];
        const std::size_t pair = i / 2;
        const std::string color = palette(pair);
        canvas.line(s.x0, 0.0, s.x1, 0.0,
                    "stroke=\"" + color + "\" stroke-width=\"4\" class=\"slit\"");
        const double mid = 0.5 * (s.x0 + s.x1);
        for (std::size_t t = 0; t <= pair; ++t) {
            const double x = mid + 0.12 * (static_cast<double>(t) - 0.5 * static_cast<double>(pair));
            canvas.line(x, -0.15, x, 0.15, "stroke=\"" + color + "\" stroke-width=\"1.5\"");
        }
    }

    if (trace != nullptr) {
        for (std::size_t i = 0; i < trace->polyline.size(); ++i) {
            const auto& [a, b] = trace->polyline[i];
            canvas.line(a.x, a.y, b.x, b.y,
                        "stroke=\"#111111\" stroke-width=\"1.5\" class=\"flight\"");
            if (i + 1 < trace->polyline.size()) {
                const auto& next = trace->polyline[i + 1].first;
                canvas.line(b.x, b.y, next.x, next.y,
                            "stroke=\"#888888\" stroke-width=\"1\" "
                            "stroke-dasharray=\"5 4\" class=\"jump\"");
            }
        }
    }
    return canvas.document();
}

inline void render_flat_svg(const SlitSurface& surf, const GeodesicTrace* trace,
                            const std::string& out_path) {
    write_text_file(out_path, flat_svg(surf, trace));
}

//! Polyline through 0 and the partial sums, unit coordinate scale.
inline std::string curve_svg(const std::vector<std::complex<double>>& sums) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    for (const auto& s : sums) {
        xmin = std::min(xmin, s.real());
        xmax = std::max(xmax, s.real());
        ymin = std::min(ymin, s.imag());
        ymax = std::max(ymax, s.imag());
    }
    SvgCanvas canvas(xmin - 2.0, xmax + 2.0, ymin - 2.0, ymax + 2.0, 1.0);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(sums.size() + 1);
    pts.emplace_back(0.0, 0.0);
    for (const auto& s : sums) pts.emplace_back(s.real(), s.imag());
    canvas.polyline(pts, "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"0.5\"");
    return canvas.document();
}

inline void render_curve_svg(const std::vector<std::complex<double>>& sums,
                             const std::string& out_path) {
    write_text_file(out_path, curve_svg(sums));
}

}  // namespace nessie
