#include "gct/svg.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include <zlib.h>

#include "gct/error.hpp"

namespace gct {

std::string encode_png_gray(const std::vector<unsigned char>& gray, int w, int h) {
    if (int(gray.size()) != w * h) throw Error("raster size mismatch");

    // Filter byte 0 per scanline.
    std::string raw;
    raw.reserve(size_t(h) * (size_t(w) + 1));
    for (int y = 0; y < h; ++y) {
        raw.push_back('\0');
        raw.append(reinterpret_cast<const char*>(gray.data() + size_t(y) * size_t(w)), size_t(w));
    }
    uLongf bound = compressBound(uLong(raw.size()));
    std::string compressed(bound, '\0');
    if (compress2(reinterpret_cast<Bytef*>(compressed.data()), &bound,
                  reinterpret_cast<const Bytef*>(raw.data()), uLong(raw.size()), 9) != Z_OK)
        throw Error("zlib compression failed");
    compressed.resize(bound);

    auto be32 = [](uint32_t v) {
        std::string s(4, '\0');
        s[0] = char(v >> 24);
        s[1] = char(v >> 16);
        s[2] = char(v >> 8);
        s[3] = char(v);
        return s;
    };
    auto chunk = [&](const char type[5], const std::string& data) {
        std::string body = std::string(type, 4) + data;
        uint32_t crc = uint32_t(crc32(0, reinterpret_cast<const Bytef*>(body.data()),
                                      uInt(body.size())));
        return be32(uint32_t(data.size())) + body + be32(crc);
    };

    std::string ihdr = be32(uint32_t(w)) + be32(uint32_t(h));
    ihdr += char(8);  // bit depth
    ihdr += char(0);  // grayscale
    ihdr += char(0);  // compression
    ihdr += char(0);  // filter
    ihdr += char(0);  // no interlace

    std::string png = "\x89PNG\r\n\x1a\n";
    png += chunk("IHDR", ihdr);
    png += chunk("IDAT", compressed);
    png += chunk("IEND", "");
    return png;
}

std::string base64(const std::string& bytes) {
    static const char tbl[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    size_t i = 0;
    while (i + 2 < bytes.size()) {
        uint32_t v = (uint8_t(bytes[i]) << 16) | (uint8_t(bytes[i + 1]) << 8) | uint8_t(bytes[i + 2]);
        out += tbl[(v >> 18) & 63];
        out += tbl[(v >> 12) & 63];
        out += tbl[(v >> 6) & 63];
        out += tbl[v & 63];
        i += 3;
    }
    if (i + 1 == bytes.size()) {
        uint32_t v = uint8_t(bytes[i]) << 16;
        out += tbl[(v >> 18) & 63];
        out += tbl[(v >> 12) & 63];
        out += "==";
    } else if (i + 2 == bytes.size()) {
        uint32_t v = (uint8_t(bytes[i]) << 16) | (uint8_t(bytes[i + 1]) << 8);
        out += tbl[(v >> 18) & 63];
        out += tbl[(v >> 12) & 63];
        out += tbl[(v >> 6) & 63];
        out += "=";
    }
    return out;
}

SvgPlot::SvgPlot(double x_min, double x_max, double y_min, double y_max, int width_px)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), wpx_(width_px) {
    hpx_ = int(std::lround(width_px * (y_max - y_min) / (x_max - x_min)));
}

double SvgPlot::sx(double x) const { return (x - x_min_) / (x_max_ - x_min_) * wpx_; }
double SvgPlot::sy(double y) const { return (y_max_ - y) / (y_max_ - y_min_) * hpx_; }

void SvgPlot::polyline(const std::vector<cplx>& pts, const std::string& color, double width) {
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
       << "\" points=\"";
    for (const cplx& p : pts) os << sx(p.real()) << "," << sy(p.imag()) << " ";
    os << "\"/>";
    elements_.push_back(os.str());
}

void SvgPlot::circle(cplx center, double radius, const std::string& stroke,
                     const std::string& fill, double width) {
    std::ostringstream os;
    os << "<circle cx=\"" << sx(center.real()) << "\" cy=\"" << sy(center.imag()) << "\" r=\""
       << radius / (x_max_ - x_min_) * wpx_ << "\" stroke=\"" << stroke << "\" fill=\"" << fill
       << "\" stroke-width=\"" << width << "\"/>";
    elements_.push_back(os.str());
}

void SvgPlot::dot(cplx p, double px_radius, const std::string& color) {
    std::ostringstream os;
    os << "<circle cx=\"" << sx(p.real()) << "\" cy=\"" << sy(p.imag()) << "\" r=\"" << px_radius
       << "\" fill=\"" << color << "\"/>";
    elements_.push_back(os.str());
}

void SvgPlot::text(cplx anchor, const std::string& s, int px_size) {
    std::ostringstream os;
    os << "<text x=\"" << sx(anchor.real()) << "\" y=\"" << sy(anchor.imag()) << "\" font-size=\""
       << px_size << "\">" << s << "</text>";
    elements_.push_back(os.str());
}

void SvgPlot::comment(const std::string& s) { elements_.push_back("<!-- " + s + " -->"); }

void SvgPlot::raster_background(const std::vector<unsigned char>& gray, int w, int h) {
    std::string png = encode_png_gray(gray, w, h);
    std::ostringstream os;
    os << "<image x=\"0\" y=\"0\" width=\"" << wpx_ << "\" height=\"" << hpx_
       << "\" preserveAspectRatio=\"none\" href=\"data:image/png;base64," << base64(png)
       << "\"/>";
    background_ = os.str();
}

std::string SvgPlot::finish() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << wpx_ << "\" height=\"" << hpx_
       << "\" viewBox=\"0 0 " << wpx_ << " " << hpx_ << "\">\n";
    if (!background_.empty()) os << background_ << "\n";
    for (const auto& e : elements_) os << e << "\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace gct
