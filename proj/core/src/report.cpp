#include "psycholex/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "psycholex/svg.hpp"

namespace psycholex {

using nlohmann::json;

const char* to_string(SectionKind k) {
    switch (k) {
        case SectionKind::table: return "table";
        case SectionKind::boxplot: return "boxplot";
        case SectionKind::radar: return "radar";
        case SectionKind::heatmap: return "heatmap";
        case SectionKind::lineplot: return "lineplot";
        default: return "lmplot";
    }
}

namespace {

constexpr double kMarginLeft = 70;
constexpr double kMarginRight = 30;
constexpr double kMarginTop = 50;
constexpr double kMarginBottom = 70;
constexpr double kPlotW = SvgCanvas::kWidth - kMarginLeft - kMarginRight;
constexpr double kPlotH = SvgCanvas::kHeight - kMarginTop - kMarginBottom;

struct YScale {
    double lo = 0.0, hi = 1.0;
    double to_px(double v) const {
        if (hi == lo) return kMarginTop + kPlotH / 2.0;
        return kMarginTop + kPlotH * (1.0 - (v - lo) / (hi - lo));
    }
};

void draw_frame(SvgCanvas& c, const std::string& title) {
    c.text(SvgCanvas::kWidth / 2.0, 24, title, 15, "middle");
    c.line(kMarginLeft, kMarginTop, kMarginLeft, kMarginTop + kPlotH, "#333333");
    c.line(kMarginLeft, kMarginTop + kPlotH, kMarginLeft + kPlotW,
           kMarginTop + kPlotH, "#333333");
}

void draw_y_ticks(SvgCanvas& c, const YScale& ys, int n = 5, int decimals = 2) {
    for (int i = 0; i <= n; ++i) {
        const double v = ys.lo + (ys.hi - ys.lo) * i / n;
        const double y = ys.to_px(v);
        c.line(kMarginLeft - 4, y, kMarginLeft, y, "#333333");
        c.line(kMarginLeft, y, kMarginLeft + kPlotW, y, "#DDDDDD", 0.5);
        c.text(kMarginLeft - 8, y + 4, fmt_num(v, decimals), 10, "end");
    }
}

} // namespace

std::string render_boxplot(const std::string& title,
                           const std::vector<BoxGroup>& groups) {
    if (groups.empty()) throw Error("render_boxplot: no groups");
    SvgCanvas c;
    std::string csv = "label,min,q1,median,q3,max,lower_whisker,upper_whisker,star,caret\n";
    YScale ys;
    ys.lo = groups[0].stats.min;
    ys.hi = groups[0].stats.max;
    for (const auto& g : groups) {
        ys.lo = std::min(ys.lo, g.stats.min);
        ys.hi = std::max(ys.hi, g.stats.max);
        csv += g.label + "," + fmt_num(g.stats.min, 6) + "," +
               fmt_num(g.stats.q1, 6) + "," + fmt_num(g.stats.median, 6) + "," +
               fmt_num(g.stats.q3, 6) + "," + fmt_num(g.stats.max, 6) + "," +
               fmt_num(g.stats.lower_whisker, 6) + "," +
               fmt_num(g.stats.upper_whisker, 6) + "," +
               (g.mark_star ? "1" : "0") + "," + (g.mark_caret ? "1" : "0") + "\n";
    }
    if (ys.hi == ys.lo) {
        ys.lo -= 0.5;
        ys.hi += 0.5;
    } else {
        const double pad = (ys.hi - ys.lo) * 0.08;
        ys.lo -= pad;
        ys.hi += pad;
    }
    c.desc(csv);
    draw_frame(c, title);
    draw_y_ticks(c, ys);

    const double slot = kPlotW / static_cast<double>(groups.size());
    const double box_w = std::min(slot * 0.5, 60.0);
    const auto& palette = chart_palette();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& g = groups[i];
        const double cx = kMarginLeft + slot * (static_cast<double>(i) + 0.5);
        const std::string& color = palette[g.color_index % palette.size()];
        const double yq1 = ys.to_px(g.stats.q1);
        const double yq3 = ys.to_px(g.stats.q3);
        const double ymed = ys.to_px(g.stats.median);
        const double ylw = ys.to_px(g.stats.lower_whisker);
        const double yuw = ys.to_px(g.stats.upper_whisker);
        c.line(cx, ylw, cx, yq1, "#333333");
        c.line(cx, yq3, cx, yuw, "#333333");
        c.line(cx - box_w / 4, ylw, cx + box_w / 4, ylw, "#333333");
        c.line(cx - box_w / 4, yuw, cx + box_w / 4, yuw, "#333333");
        c.rect(cx - box_w / 2, yq3, box_w, std::max(yq1 - yq3, 0.5), color,
               "#333333", 0.6);
        c.line(cx - box_w / 2, ymed, cx + box_w / 2, ymed, "#000000", 2.0);
        for (double o : g.stats.outliers) c.circle(cx, ys.to_px(o), 2.5, "#666666");
        std::string marks;
        if (g.mark_star) marks += "*";
        if (g.mark_caret) marks += "^";
        if (!marks.empty()) c.text(cx, yuw - 10, marks, 14, "middle");
        c.text(cx, kMarginTop + kPlotH + 16, g.label, 9, "middle");
    }
    return c.finish();
}

std::string render_radar(const std::string& title,
                         const std::vector<std::string>& axes,
                         const std::vector<RadarSeries>& series) {
    if (axes.empty()) throw Error("render_radar: no axes");
    SvgCanvas c;
    std::string csv = "class";
    for (const auto& a : axes) csv += "," + a;
    csv += "\n";
    double vmax = 0.0;
    for (const auto& s : series) {
        if (s.values.size() != axes.size())
            throw Error("render_radar: series/axes size mismatch");
        csv += s.label;
        for (double v : s.values) {
            if (v < 0.0) throw Error("render_radar: negative value");
            vmax = std::max(vmax, v);
            csv += "," + fmt_num(v, 6);
        }
        csv += "\n";
    }
    if (vmax == 0.0) vmax = 1.0;
    c.desc(csv);
    c.text(SvgCanvas::kWidth / 2.0, 24, title, 15, "middle");

    const double cx = 360, cy = 270, radius = 180;
    const std::size_t k = axes.size();
    auto point = [&](std::size_t axis, double v) {
        const double angle = 2.0 * M_PI * static_cast<double>(axis) /
                                 static_cast<double>(k) -
                             M_PI / 2.0;
        const double r = radius * v / vmax;
        return std::make_pair(cx + r * std::cos(angle), cy + r * std::sin(angle));
    };
    // grid rings and spokes
    for (int ring = 1; ring <= 4; ++ring) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t a = 0; a < k; ++a)
            pts.push_back(point(a, vmax * ring / 4.0));
        pts.push_back(pts.front());
        c.polyline(pts, "#DDDDDD", 0.8);
        c.text(cx + 4, point(0, vmax * ring / 4.0).second - 2,
               fmt_num(vmax * ring / 4.0), 9);
    }
    for (std::size_t a = 0; a < k; ++a) {
        auto [x, y] = point(a, vmax);
        c.line(cx, cy, x, y, "#CCCCCC", 0.8);
        auto [lx, ly] = point(a, vmax * 1.12);
        c.text(lx, ly + 4, axes[a], 11, "middle");
    }
    const auto& palette = chart_palette();
    for (const auto& s : series) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t a = 0; a < k; ++a) pts.push_back(point(a, s.values[a]));
        c.polygon(pts, palette[s.color_index % palette.size()],
                  palette[s.color_index % palette.size()], 0.25);
    }
    double ly = 50;
    for (const auto& s : series) {
        c.rect(660, ly - 9, 12, 12, palette[s.color_index % palette.size()]);
        c.text(678, ly + 1, s.label, 11);
        ly += 18;
    }
    return c.finish();
}

namespace {

void draw_heatmap_panel(SvgCanvas& c, const CorrelationMatrix& m, double x0,
                        double y0, double size, const std::string& label) {
    const std::size_t k = m.labels.size();
    const double cell = size / static_cast<double>(k);
    c.text(x0 + size / 2, y0 - 26, label, 12, "middle");
    for (std::size_t i = 0; i < k; ++i) {
        c.text(x0 - 4, y0 + cell * (static_cast<double>(i) + 0.65), m.labels[i], 8,
               "end");
        c.text(x0 + cell * (static_cast<double>(i) + 0.5), y0 - 4, m.labels[i], 8,
               "middle");
        for (std::size_t j = 0; j < k; ++j) {
            const double x = x0 + cell * static_cast<double>(j);
            const double y = y0 + cell * static_cast<double>(i);
            auto v = m.at(i, j);
            if (v) {
                c.rect(x, y, cell, cell, diverging_color(*v), "#FFFFFF");
            } else {
                c.rect(x, y, cell, cell, "none", "#CCCCCC");  // null -> blank
            }
        }
    }
}

} // namespace

std::string render_heatmap(const std::string& title,
                           const CorrelationMatrix& left,
                           const std::string& left_label,
                           const CorrelationMatrix& right,
                           const std::string& right_label) {
    if (left.labels != right.labels)
        throw Error("render_heatmap: matrices must share labels");
    SvgCanvas c;
    std::string csv = "panel,row,col,r\n";
    auto emit = [&](const CorrelationMatrix& m, const std::string& panel) {
        for (std::size_t i = 0; i < m.labels.size(); ++i)
            for (std::size_t j = 0; j < m.labels.size(); ++j) {
                auto v = m.at(i, j);
                csv += panel + "," + m.labels[i] + "," + m.labels[j] + "," +
                       (v ? fmt_num(*v, 6) : std::string("null")) + "\n";
            }
    };
    emit(left, left_label);
    emit(right, right_label);
    c.desc(csv);
    c.text(SvgCanvas::kWidth / 2.0, 24, title, 15, "middle");
    const double panel = 300;
    draw_heatmap_panel(c, left, 80, 90, panel, left_label);
    draw_heatmap_panel(c, right, 460, 90, panel, right_label);
    // color scale legend, fixed [-1,1]
    for (int i = 0; i < 100; ++i) {
        const double v = -1.0 + 2.0 * i / 99.0;
        c.rect(250 + 3.0 * i, 440, 3.0, 14, diverging_color(v));
    }
    c.text(246, 451, "-1", 10, "end");
    c.text(554, 451, "+1", 10);
    return c.finish();
}

std::string render_timegap(const std::string& title, const MonthlyGapTable& table) {
    bool any = false;
    for (const auto& [cls, months] : table.cells)
        if (!months.empty()) any = true;
    if (!any) throw Error("render_timegap: empty table");

    SvgCanvas c;
    std::string csv = "class,month,mean_hours,stddev_hours,count\n";
    double vmax = 0.0;
    for (const auto& [cls, months] : table.cells)
        for (const auto& [m, cell] : months) {
            const double mean_h = cell.mean / 3600.0;
            const double sd_h = cell.stddev / 3600.0;
            vmax = std::max(vmax, mean_h + sd_h);
            csv += cls + "," + std::to_string(m) + "," + fmt_num(mean_h, 6) + "," +
                   fmt_num(sd_h, 6) + "," + std::to_string(cell.count) + "\n";
        }
    if (vmax == 0.0) vmax = 1.0;
    c.desc(csv);
    YScale ys{0.0, vmax * 1.08};
    draw_frame(c, title);
    draw_y_ticks(c, ys, 5, 1);
    c.text(18, kMarginTop + kPlotH / 2, "hours", 11, "middle");

    static const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    auto x_of = [&](int month) {
        return kMarginLeft + kPlotW * (static_cast<double>(month) - 0.5) / 12.0;
    };
    for (int m = 1; m <= 12; ++m)
        c.text(x_of(m), kMarginTop + kPlotH + 16, kMonths[m - 1], 10, "middle");

    const auto& palette = chart_palette();
    int color = 0;
    double legend_y = 46;
    for (const auto& [cls, months] : table.cells) {
        const std::string& col = palette[color % palette.size()];
        // contiguous month runs; missing months break the line and band
        std::vector<std::pair<double, double>> run;
        std::vector<std::pair<double, double>> band_top, band_bot;
        auto flush = [&]() {
            if (run.size() >= 2) {
                std::vector<std::pair<double, double>> band = band_top;
                band.insert(band.end(), band_bot.rbegin(), band_bot.rend());
                c.polygon(band, col, "none", 0.15);
                c.polyline(run, col, 2.0);
            } else if (run.size() == 1) {
                c.circle(run[0].first, run[0].second, 3.0, col);
            }
            run.clear();
            band_top.clear();
            band_bot.clear();
        };
        for (int m = 1; m <= 12; ++m) {
            auto it = months.find(m);
            if (it == months.end()) {
                flush();
                continue;
            }
            const double mean_h = it->second.mean / 3600.0;
            const double sd_h = it->second.stddev / 3600.0;
            run.emplace_back(x_of(m), ys.to_px(mean_h));
            band_top.emplace_back(x_of(m), ys.to_px(mean_h + sd_h));
            band_bot.emplace_back(x_of(m), ys.to_px(std::max(mean_h - sd_h, 0.0)));
        }
        flush();
        c.rect(660, legend_y - 9, 12, 12, col);
        c.text(678, legend_y + 1, cls, 11);
        legend_y += 18;
        ++color;
    }
    return c.finish();
}

std::string render_lmplot(const std::string& title,
                          const std::vector<LmCurve>& curves) {
    if (curves.empty()) throw Error("render_lmplot: no curves");
    SvgCanvas c;
    std::string csv = "class,rank,prob\n";
    double pmin = 1.0, pmax = 0.0;
    std::size_t max_rank = 0;
    for (const auto& cu : curves) {
        max_rank = std::max(max_rank, cu.probs_sorted_desc.size());
        for (std::size_t i = 0; i < cu.probs_sorted_desc.size(); ++i) {
            const double p = cu.probs_sorted_desc[i];
            if (p > 0.0) pmin = std::min(pmin, p);
            pmax = std::max(pmax, p);
        }
    }
    if (pmax <= 0.0) throw Error("render_lmplot: all probabilities zero");
    const double log_lo = std::floor(std::log10(pmin));
    const double log_hi = std::ceil(std::log10(pmax));
    c.text(SvgCanvas::kWidth / 2.0, 24, title, 15, "middle");
    c.line(kMarginLeft, kMarginTop, kMarginLeft, kMarginTop + kPlotH, "#333333");
    c.line(kMarginLeft, kMarginTop + kPlotH, kMarginLeft + kPlotW,
           kMarginTop + kPlotH, "#333333");
    auto y_of = [&](double p) {
        const double l = std::log10(p);
        return kMarginTop + kPlotH * (log_hi - l) / (log_hi - log_lo);
    };
    auto x_of = [&](std::size_t rank) {
        return kMarginLeft +
               kPlotW * static_cast<double>(rank) /
                   std::max<double>(1.0, static_cast<double>(max_rank - 1));
    };
    for (int e = static_cast<int>(log_lo); e <= static_cast<int>(log_hi); ++e) {
        const double y = y_of(std::pow(10.0, e));
        c.line(kMarginLeft - 4, y, kMarginLeft, y, "#333333");
        c.text(kMarginLeft - 8, y + 4, "1e" + std::to_string(e), 10, "end");
    }
    c.text(kMarginLeft + kPlotW / 2, kMarginTop + kPlotH + 30,
           "word rank (by probability)", 11, "middle");

    const auto& palette = chart_palette();
    double legend_y = 46;
    for (const auto& cu : curves) {
        const std::string& col = palette[cu.color_index % palette.size()];
        // stride-decimated polyline; the embedded table keeps decimated points
        const std::size_t n = cu.probs_sorted_desc.size();
        const std::size_t stride = std::max<std::size_t>(1, n / 400);
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < n; i += stride) {
            const double p = cu.probs_sorted_desc[i];
            if (p <= 0.0) continue;
            pts.emplace_back(x_of(i), y_of(p));
            csv += cu.label + "," + std::to_string(i) + "," + fmt_num(p, 9) + "\n";
        }
        if (!pts.empty()) c.polyline(pts, col, 1.5);
        c.rect(660, legend_y - 9, 12, 12, col);
        c.text(678, legend_y + 1, cu.label, 11);
        legend_y += 18;
    }
    c.desc(csv);
    return c.finish();
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file for digest: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return fnv1a_hex(bytes);
}

namespace {

// created_utc goes only to metadata.json; report.json stays byte-identical
// across reruns of the same config.
json metadata_to_json(const ReportMetadata& md, bool include_created) {
    json j;
    j["corpus_digest"] = md.corpus_digest;
    j["artifact_version"] = md.artifact_version;
    j["lambda"] = md.lambda;
    j["log_base"] = md.log_base;
    j["alpha"] = md.alpha;
    j["seed"] = md.seed;
    j["lexicon_digests"] = md.lexicon_digests;
    j["notes"] = md.notes;
    j["tests_performed"] = md.tests_performed;
    if (include_created) j["created_utc"] = md.created_utc;
    return j;
}

} // namespace

std::string report_to_json(const AnalysisReport& report) {
    json j;
    j["metadata"] = metadata_to_json(report.metadata, false);
    j["sections"] = json::array();
    for (const auto& s : report.sections) {
        json sec;
        sec["kind"] = to_string(s.kind);
        sec["name"] = s.name;
        sec["csv"] = s.csv;
        sec["svg"] = s.svg;
        j["sections"].push_back(std::move(sec));
    }
    return j.dump(2) + "\n";
}

void write_report_dir(const AnalysisReport& report, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(dir) / "tables");
    fs::create_directories(fs::path(dir) / "charts");
    auto write = [](const fs::path& p, const std::string& content) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error("cannot write " + p.string());
        out << content;
    };
    write(fs::path(dir) / "metadata.json",
          metadata_to_json(report.metadata, true).dump(2) + "\n");
    for (const auto& s : report.sections) {
        if (!s.csv.empty())
            write(fs::path(dir) / "tables" / (s.name + ".csv"), s.csv);
        if (!s.svg.empty())
            write(fs::path(dir) / "charts" / (s.name + ".svg"), s.svg);
    }
    write(fs::path(dir) / "report.json", report_to_json(report));
}

} // namespace psycholex
