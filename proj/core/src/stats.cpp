#include "psycholex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psycholex/corpus.hpp"

namespace psycholex {

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size() - 1);
}

double lgamma_impl(double x) {
    // Lanczos approximation, g = 7, n = 9
    static const double coeffs[] = {
        0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,  12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5)
        return std::log(M_PI / std::sin(M_PI * x)) - lgamma_impl(1.0 - x);
    x -= 1.0;
    double a = coeffs[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += coeffs[i] / (x + i);
    return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(a);
}

namespace {

// Continued fraction for I_x(a,b), modified Lentz.
double beta_cf(double a, double b, double x) {
    constexpr double eps = 1e-12;
    constexpr double tiny = 1e-300;
    constexpr int max_iter = 300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = lgamma_impl(a + b) - lgamma_impl(a) - lgamma_impl(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) return 1.0;
    const double x = df / (df + t * t);
    return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

WelchResult welch_t_test(const std::vector<double>& a,
                         const std::vector<double>& b, double alpha) {
    if (a.size() < 2 || b.size() < 2)
        throw Error("welch_t_test: each sample needs >= 2 observations");
    WelchResult r;
    r.alpha = alpha;
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = sample_variance(a);
    const double vb = sample_variance(b);
    const double diff = mean(a) - mean(b);
    const double se2 = va / na + vb / nb;
    if (se2 == 0.0) {
        r.degenerate = true;
        r.t_statistic = 0.0;
        r.degrees_of_freedom = 0.0;
        r.p_value = diff == 0.0 ? 1.0 : 0.0;
        return r;
    }
    r.t_statistic = diff / std::sqrt(se2);
    r.degrees_of_freedom =
        se2 * se2 /
        ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
    r.p_value = student_t_two_sided_p(r.t_statistic, r.degrees_of_freedom);
    return r;
}

std::optional<double> pearson(const std::vector<double>& x,
                              const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("pearson: samples must be equal length >= 2");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

namespace {

std::vector<double> ranks_with_ties(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

} // namespace

std::optional<double> spearman(const std::vector<double>& x,
                               const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("spearman: samples must be equal length >= 2");
    return pearson(ranks_with_ties(x), ranks_with_ties(y));
}

CorrelationMatrix correlation_matrix(const std::vector<std::string>& labels,
                                     const std::vector<std::vector<double>>& columns,
                                     CorrelationKind kind) {
    if (labels.size() != columns.size())
        throw Error("correlation_matrix: labels/columns size mismatch");
    CorrelationMatrix m;
    m.labels = labels;
    const std::size_t k = labels.size();
    m.values.assign(k * k, std::nullopt);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            std::optional<double> r;
            if (columns[i].size() >= 2) {
                r = kind == CorrelationKind::pearson
                        ? pearson(columns[i], columns[j])
                        : spearman(columns[i], columns[j]);
            }
            m.values[i * k + j] = r;
            m.values[j * k + i] = r;
        }
    }
    return m;
}

double quantile_type7(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw Error("quantile of empty sample");
    if (sorted.size() == 1) return sorted[0];
    const double h = q * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxStats box_stats(std::vector<double> sample) {
    if (sample.empty()) throw Error("box_stats: empty sample");
    std::sort(sample.begin(), sample.end());
    BoxStats b;
    b.min = sample.front();
    b.max = sample.back();
    b.q1 = quantile_type7(sample, 0.25);
    b.median = quantile_type7(sample, 0.5);
    b.q3 = quantile_type7(sample, 0.75);
    const double iqr = b.q3 - b.q1;
    const double lo_fence = b.q1 - 1.5 * iqr;
    const double hi_fence = b.q3 + 1.5 * iqr;
    b.lower_whisker = b.q1;
    b.upper_whisker = b.q3;
    for (double x : sample) {
        if (x >= lo_fence) {
            b.lower_whisker = x;  // first point inside the fence
            break;
        }
    }
    for (auto it = sample.rbegin(); it != sample.rend(); ++it) {
        if (*it <= hi_fence) {
            b.upper_whisker = *it;
            break;
        }
    }
    for (double x : sample)
        if (x < lo_fence || x > hi_fence) b.outliers.push_back(x);
    return b;
}

} // namespace psycholex
