#include "psycholex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace psycholex {

std::string fmt_num(double v, int decimals) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    // avoid "-0.00"
    std::string s(buf);
    bool all_zero = true;
    for (char c : s)
        if (c >= '1' && c <= '9') all_zero = false;
    if (all_zero && !s.empty() && s[0] == '-') s.erase(0, 1);
    return s;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

SvgCanvas::SvgCanvas() = default;

void SvgCanvas::line(double x1, double y1, double x2, double y2,
                     const std::string& stroke, double width,
                     const std::string& dash) {
    body_ += "<line x1=\"" + fmt_num(x1) + "\" y1=\"" + fmt_num(y1) +
             "\" x2=\"" + fmt_num(x2) + "\" y2=\"" + fmt_num(y2) +
             "\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt_num(width, 1) +
             "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += "/>\n";
}

void SvgCanvas::rect(double x, double y, double w, double h,
                     const std::string& fill, const std::string& stroke,
                     double opacity) {
    body_ += "<rect x=\"" + fmt_num(x) + "\" y=\"" + fmt_num(y) + "\" width=\"" +
             fmt_num(w) + "\" height=\"" + fmt_num(h) + "\" fill=\"" + fill + "\"";
    if (!stroke.empty()) body_ += " stroke=\"" + stroke + "\"";
    if (opacity < 1.0) body_ += " fill-opacity=\"" + fmt_num(opacity) + "\"";
    body_ += "/>\n";
}

void SvgCanvas::circle(double cx, double cy, double r, const std::string& fill) {
    body_ += "<circle cx=\"" + fmt_num(cx) + "\" cy=\"" + fmt_num(cy) +
             "\" r=\"" + fmt_num(r, 1) + "\" fill=\"" + fill + "\"/>\n";
}

void SvgCanvas::polygon(const std::vector<std::pair<double, double>>& pts,
                        const std::string& fill, const std::string& stroke,
                        double fill_opacity) {
    body_ += "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ += " ";
        body_ += fmt_num(pts[i].first) + "," + fmt_num(pts[i].second);
    }
    body_ += "\" fill=\"" + fill + "\" stroke=\"" + stroke +
             "\" fill-opacity=\"" + fmt_num(fill_opacity) + "\"/>\n";
}

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& stroke, double width) {
    body_ += "<polyline points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ += " ";
        body_ += fmt_num(pts[i].first) + "," + fmt_num(pts[i].second);
    }
    body_ += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
             fmt_num(width, 1) + "\"/>\n";
}

void SvgCanvas::path(const std::string& d, const std::string& fill,
                     const std::string& stroke, double fill_opacity) {
    body_ += "<path d=\"" + d + "\" fill=\"" + fill + "\" stroke=\"" + stroke +
             "\" fill-opacity=\"" + fmt_num(fill_opacity) + "\"/>\n";
}

void SvgCanvas::text(double x, double y, const std::string& s, int font_size,
                     const std::string& anchor, const std::string& fill) {
    body_ += "<text x=\"" + fmt_num(x) + "\" y=\"" + fmt_num(y) +
             "\" font-size=\"" + std::to_string(font_size) +
             "\" font-family=\"sans-serif\" text-anchor=\"" + anchor +
             "\" fill=\"" + fill + "\">" + xml_escape(s) + "</text>\n";
}

void SvgCanvas::comment(const std::string& s) {
    std::string safe = s;
    std::size_t pos;
    while ((pos = safe.find("--")) != std::string::npos) safe.replace(pos, 2, "- ");
    body_ += "<!-- " + safe + " -->\n";
}

void SvgCanvas::desc(const std::string& s) {
    body_ += "<desc>" + xml_escape(s) + "</desc>\n";
}

std::string SvgCanvas::finish() const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
           "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
           std::to_string(kHeight) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" fill=\"#ffffff\"/>\n";
    out += body_;
    out += "</svg>\n";
    return out;
}

const std::vector<std::string>& chart_palette() {
    // Wong color-blind-safe palette, extended to 12
    static const std::vector<std::string> palette = {
        "#0072B2", "#D55E00", "#009E73", "#CC79A7", "#E69F00", "#56B4E9",
        "#F0E442", "#000000", "#999999", "#882255", "#44AA99", "#332288"};
    return palette;
}

std::string diverging_color(double v) {
    v = std::clamp(v, -1.0, 1.0);
    // blue (-1) -> white (0) -> red (+1)
    int r, g, b;
    if (v < 0) {
        const double t = -v;
        r = static_cast<int>(std::lround(255 * (1 - t) + 33 * t));
        g = static_cast<int>(std::lround(255 * (1 - t) + 102 * t));
        b = static_cast<int>(std::lround(255 * (1 - t) + 172 * t));
    } else {
        const double t = v;
        r = static_cast<int>(std::lround(255 * (1 - t) + 178 * t));
        g = static_cast<int>(std::lround(255 * (1 - t) + 24 * t));
        b = static_cast<int>(std::lround(255 * (1 - t) + 43 * t));
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", r, g, b);
    return buf;
}

} // namespace psycholex
