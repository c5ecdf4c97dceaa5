#ifndef PSYCHOLEX_STATS_HPP
#define PSYCHOLEX_STATS_HPP

#include <optional>
#include <string>
#include <vector>

namespace psycholex {

double mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v);

struct WelchResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 1.0;           // two-sided
    double alpha = 0.001;
    bool degenerate = false;        // both variances zero
    bool significant() const { return p_value < alpha; }
};

/// Welch two-sample t-test, unequal variances, Welch-Satterthwaite df,
/// two-sided p via the regularized incomplete beta function.
WelchResult welch_t_test(const std::vector<double>& a,
                         const std::vector<double>& b, double alpha = 0.001);

/// Student-t two-sided survival: P(|T| > |t|) with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// Regularized incomplete beta I_x(a, b), Lentz continued fraction,
/// 1e-12 tolerance, 300-iteration cap.
double regularized_incomplete_beta(double a, double b, double x);

double lgamma_impl(double x);

/// Pearson product-moment coefficient; null on zero variance.
std::optional<double> pearson(const std::vector<double>& x,
                              const std::vector<double>& y);

/// Spearman rank correlation (average ranks for ties), for sensitivity runs.
std::optional<double> spearman(const std::vector<double>& x,
                               const std::vector<double>& y);

enum class CorrelationKind { pearson, spearman };

struct CorrelationMatrix {
    std::vector<std::string> labels;
    // row-major; null cells mean zero variance somewhere
    std::vector<std::optional<double>> values;

    std::optional<double> at(std::size_t i, std::size_t j) const {
        return values[i * labels.size() + j];
    }
};

/// Pairwise correlation of column vectors: one row per observation (user),
/// one column per label.
CorrelationMatrix correlation_matrix(const std::vector<std::string>& labels,
                                     const std::vector<std::vector<double>>& columns,
                                     CorrelationKind kind = CorrelationKind::pearson);

struct BoxStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double lower_whisker = 0.0;  // furthest point within 1.5*IQR
    double upper_whisker = 0.0;
    std::vector<double> outliers;
};

/// Quartiles by type-7 linear interpolation.
BoxStats box_stats(std::vector<double> sample);

/// Type-7 quantile of a sorted sample, q in [0,1].
double quantile_type7(const std::vector<double>& sorted, double q);

} // namespace psycholex

#endif
