#ifndef PSYCHOLEX_SVG_HPP
#define PSYCHOLEX_SVG_HPP

#include <string>
#include <vector>

namespace psycholex {

/// Fixed-precision number formatting so identical inputs give identical
/// output bytes.
std::string fmt_num(double v, int decimals = 2);
std::string xml_escape(const std::string& s);

/// Minimal SVG document builder. Canvas is fixed 800x500.
class SvgCanvas {
public:
    static constexpr int kWidth = 800;
    static constexpr int kHeight = 500;

    SvgCanvas();

    void line(double x1, double y1, double x2, double y2,
              const std::string& stroke, double width = 1.0,
              const std::string& dash = "");
    void rect(double x, double y, double w, double h,
              const std::string& fill, const std::string& stroke = "",
              double opacity = 1.0);
    void circle(double cx, double cy, double r, const std::string& fill);
    void polygon(const std::vector<std::pair<double, double>>& pts,
                 const std::string& fill, const std::string& stroke,
                 double fill_opacity);
    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& stroke, double width = 1.5);
    void path(const std::string& d, const std::string& fill,
              const std::string& stroke, double fill_opacity = 1.0);
    void text(double x, double y, const std::string& s, int font_size = 12,
              const std::string& anchor = "start",
              const std::string& fill = "#333333");
    void comment(const std::string& s);
    /// Embeds the chart's source data table as a <desc> element.
    void desc(const std::string& s);

    std::string finish() const;

private:
    std::string body_;
};

/// Color-blind-safe categorical palette (Wong).
const std::vector<std::string>& chart_palette();

/// Diverging scale for correlations: maps [-1,1] to blue-white-red hex.
std::string diverging_color(double v);

} // namespace psycholex

#endif
