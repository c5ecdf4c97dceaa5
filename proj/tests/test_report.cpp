#include <doctest.h>

#include <algorithm>
#include <stack>

#include "psycholex/report.hpp"
#include "psycholex/svg.hpp"

using namespace psycholex;

namespace {

// Minimal well-formedness check: tags balance, attributes are quoted,
// no stray '<' or '&' outside entities.
bool well_formed_xml(const std::string& s) {
    std::stack<std::string> open;
    std::size_t i = 0;
    bool seen_root = false;
    while (i < s.size()) {
        const char c = s[i];
        if (c == '<') {
            std::size_t end = s.find('>', i);
            if (end == std::string::npos) return false;
            std::string tag = s.substr(i + 1, end - i - 1);
            if (tag.empty()) return false;
            if (tag[0] == '?' || tag[0] == '!') {
                i = end + 1;
                continue;
            }
            if (tag[0] == '/') {
                if (open.empty()) return false;
                const std::string name = tag.substr(1);
                if (open.top() != name) return false;
                open.pop();
                if (open.empty()) seen_root = true;
            } else {
                const bool self_closing = tag.back() == '/';
                if (self_closing) tag.pop_back();
                std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
                // quotes inside the tag must pair up
                if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
                if (!self_closing) open.push(name);
                else if (open.empty()) seen_root = true;
            }
            i = end + 1;
        } else if (c == '&') {
            std::size_t semi = s.find(';', i);
            if (semi == std::string::npos || semi - i > 6) return false;
            i = semi + 1;
        } else if (c == '>') {
            return false;
        } else {
            ++i;
        }
    }
    return open.empty() && seen_root;
}

std::vector<BoxGroup> sample_groups() {
    std::vector<BoxGroup> groups;
    BoxGroup a;
    a.label = "i / depression";
    a.stats = box_stats({0.1, 0.2, 0.3, 0.4, 0.9});
    a.mark_star = true;
    a.color_index = 0;
    BoxGroup b;
    b.label = "i / control";
    b.stats = box_stats({0.05, 0.1, 0.15, 0.2});
    b.mark_caret = true;
    b.color_index = 1;
    groups.push_back(a);
    groups.push_back(b);
    return groups;
}

} // namespace

TEST_CASE("fmt_num fixes precision and normalizes negative zero") {
    CHECK(fmt_num(1.23456, 2) == "1.23");
    CHECK(fmt_num(-0.0000001, 2) == "0.00");
    CHECK(fmt_num(2.0, 0) == "2");
    CHECK(fmt_num(-3.456, 1) == "-3.5");
}

TEST_CASE("fnv1a digest: frozen known values") {
    // classic FNV-1a 64 test vectors
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("xml_escape handles the five specials") {
    CHECK(xml_escape("a<b>&\"c'") == "a&lt;b&gt;&amp;&quot;c&apos;");
}

TEST_CASE("boxplot svg is well-formed and carries markers") {
    const std::string svg = render_boxplot("category i", sample_groups());
    CHECK(well_formed_xml(svg));
    CHECK(svg.find('*') != std::string::npos);
    CHECK(svg.find('^') != std::string::npos);
    CHECK(svg.find("category i") != std::string::npos);
    CHECK(svg.find("<desc>") != std::string::npos);
}

TEST_CASE("boxplot svg is byte-identical across renders") {
    CHECK(render_boxplot("t", sample_groups()) ==
          render_boxplot("t", sample_groups()));
}

TEST_CASE("radar svg renders one polygon per series") {
    std::vector<std::string> axes{"joy", "sadness", "anger", "fear"};
    RadarSeries s1{"depression", {3.0, 8.0, 5.0, 6.0}, 0};
    RadarSeries s2{"control", {6.0, 2.0, 3.0, 2.0}, 1};
    const std::string svg = render_radar("emotions", axes, {s1, s2});
    CHECK(well_formed_xml(svg));
    std::size_t polys = 0, pos = 0;
    while ((pos = svg.find("<polygon", pos)) != std::string::npos) {
        ++polys;
        ++pos;
    }
    CHECK(polys >= 2);  // at least the two data polygons
    for (const auto& axis : axes) CHECK(svg.find(axis) != std::string::npos);
}

TEST_CASE("heatmap svg: null cells stay blank, escaped title survives") {
    CorrelationMatrix left, right;
    left.labels = {"joy", "sadness"};
    left.values = {1.0, -1.0, -1.0, 1.0};
    right.labels = left.labels;
    right.values = {1.0, std::nullopt, std::nullopt, 1.0};
    const std::string svg =
        render_heatmap("r < 1 & more", left, "depression", right, "control");
    CHECK(well_formed_xml(svg));
    CHECK(svg.find("&lt;") != std::string::npos);
    CHECK(svg.find("&amp;") != std::string::npos);
}

TEST_CASE("timegap svg: renders and rejects empty tables") {
    MonthlyGapTable table;
    table.cells["a"][1] = {200.0, 100.0, 4};
    table.cells["a"][2] = {300.0, 50.0, 3};
    table.cells["a"][4] = {250.0, 10.0, 2};  // March missing: line breaks
    table.cells["b"][1] = {150.0, 20.0, 5};
    const std::string svg = render_timegap("gaps", table);
    CHECK(well_formed_xml(svg));
    MonthlyGapTable empty;
    CHECK_THROWS_AS(render_timegap("gaps", empty), Error);
}

TEST_CASE("lmplot svg: strides long curves down to a bounded point count") {
    LmCurve big;
    big.label = "p";
    for (int i = 1; i <= 20000; ++i) big.probs_sorted_desc.push_back(1.0 / i);
    const std::string svg = render_lmplot("lm", {big});
    CHECK(well_formed_xml(svg));
    CHECK(svg.size() < 200 * 1024);  // stays compact despite 20k input points
}

TEST_CASE("report_to_json excludes created_utc for byte determinism") {
    AnalysisReport r;
    r.metadata.corpus_digest = "deadbeef";
    r.metadata.created_utc = "2020-01-01T00:00:00Z";
    ReportSection s;
    s.kind = SectionKind::table;
    s.name = "summary";
    s.csv = "a,b\n1,2\n";
    r.sections.push_back(s);
    const std::string json = report_to_json(r);
    CHECK(json.find("created_utc") == std::string::npos);
    AnalysisReport r2 = r;
    r2.metadata.created_utc = "2021-06-06T06:06:06Z";
    CHECK(report_to_json(r2) == json);
}
