// Brute-force reference implementations written straight from the formulas,
// kept independent of the library code paths they check.
#ifndef PSYCHOLEX_TEST_ORACLES_HPP
#define PSYCHOLEX_TEST_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracles {

inline double jaccard(const std::set<std::string>& p,
                      const std::set<std::string>& c) {
    std::size_t inter = 0;
    for (const auto& w : p)
        if (c.count(w)) ++inter;
    const std::size_t uni = p.size() + c.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

// prob(w) = (1-lambda) * count_D(w)/|D| + lambda * count_S(w)/|S|
inline std::map<std::string, double> language_model(
    const std::map<std::string, std::uint64_t>& target,
    const std::map<std::string, std::uint64_t>& collection, double lambda) {
    std::uint64_t d_total = 0, s_total = 0;
    for (const auto& [w, c] : target) d_total += c;
    for (const auto& [w, c] : collection) s_total += c;
    std::map<std::string, double> probs;
    for (const auto& [w, sc] : collection) {
        const auto it = target.find(w);
        const double ml =
            it == target.end()
                ? 0.0
                : static_cast<double>(it->second) / static_cast<double>(d_total);
        probs[w] = (1.0 - lambda) * ml +
                   lambda * static_cast<double>(sc) / static_cast<double>(s_total);
    }
    return probs;
}

inline double kl(const std::map<std::string, double>& p,
                 const std::map<std::string, double>& c, bool base2 = false) {
    double sum = 0.0;
    for (const auto& [w, pw] : p) {
        const double cw = c.at(w);
        sum += pw * (base2 ? std::log2(pw / cw) : std::log(pw / cw));
    }
    return sum;
}

inline double mean_time_gap(const std::vector<std::int64_t>& timestamps) {
    double sum = 0.0;
    for (std::size_t i = 1; i < timestamps.size(); ++i)
        sum += static_cast<double>(timestamps[i] - timestamps[i - 1]);
    return sum / static_cast<double>(timestamps.size() - 1);
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// Student-t density
inline double t_pdf(double x, double df) {
    const double c = std::exp(std::lgamma((df + 1.0) / 2.0) -
                              std::lgamma(df / 2.0)) /
                     std::sqrt(df * M_PI);
    return c * std::pow(1.0 + x * x / df, -(df + 1.0) / 2.0);
}

inline double simpson(double (*f)(double, double), double df, double a, double b,
                      int n) {
    const double h = (b - a) / n;
    double sum = f(a, df) + f(b, df);
    for (int i = 1; i < n; ++i)
        sum += f(a + i * h, df) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Two-sided p by quadrature of the t density; independent of the
// incomplete-beta route used by the library.
inline double welch_p(const std::vector<double>& a, const std::vector<double>& b) {
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double ma = 0.0, mb = 0.0;
    for (double v : a) ma += v;
    for (double v : b) mb += v;
    ma /= na;
    mb /= nb;
    double va = 0.0, vb = 0.0;
    for (double v : a) va += (v - ma) * (v - ma);
    for (double v : b) vb += (v - mb) * (v - mb);
    va /= (na - 1.0);
    vb /= (nb - 1.0);
    const double se2 = va / na + vb / nb;
    if (se2 == 0.0) return ma == mb ? 1.0 : 0.0;
    const double t = std::fabs((ma - mb) / std::sqrt(se2));
    const double df = se2 * se2 / ((va / na) * (va / na) / (na - 1.0) +
                                   (vb / nb) * (vb / nb) / (nb - 1.0));
    // central mass on [0, t], fine fixed grid
    const double central = simpson(&t_pdf, df, 0.0, t, 20000);
    return std::max(0.0, 1.0 - 2.0 * central);
}

// Portable uniform helpers on mt19937_64 raw output.
template <typename Engine>
double u01(Engine& eng) {
    return (eng() >> 11) * (1.0 / 9007199254740992.0);
}

} // namespace oracles

#endif
