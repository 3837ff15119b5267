#pragma once

#include <string>
#include <vector>

#include "gct/curve.hpp"

namespace gct {

/// Minimal self-contained SVG writer on a fixed complex-plane viewport.
class SvgPlot {
  public:
    SvgPlot(double x_min, double x_max, double y_min, double y_max, int width_px = 800);

    void polyline(const std::vector<cplx>& pts, const std::string& color, double width = 1.0);
    void circle(cplx center, double radius, const std::string& stroke,
                const std::string& fill = "none", double width = 1.0);
    void dot(cplx p, double px_radius, const std::string& color);
    void text(cplx anchor, const std::string& s, int px_size = 12);
    void comment(const std::string& s);

    /// Embeds a grayscale raster (values 0..255, row-major, top row first) as a
    /// base64 PNG covering the full viewport, drawn beneath later elements.
    void raster_background(const std::vector<unsigned char>& gray, int w, int h);

    std::string finish() const;

  private:
    double sx(double x) const;
    double sy(double y) const;

    double x_min_, x_max_, y_min_, y_max_;
    int wpx_, hpx_;
    std::string background_;
    std::vector<std::string> elements_;
};

/// Grayscale PNG bytes (8-bit), zlib-compressed.
std::string encode_png_gray(const std::vector<unsigned char>& gray, int w, int h);
std::string base64(const std::string& bytes);

} // namespace gct
