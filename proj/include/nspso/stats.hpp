#pragma once

#include <span>

namespace nspso {

struct WilcoxonResult {
    int h = 0; // 1 when the samples differ at the given alpha
    double statistic = 0.0; // rank sum of the first sample
    double p_value = 1.0;
};

/// Two-sided Wilcoxon rank-sum test using the normal approximation with
/// average ranks (and the variance correction) for ties. Requires at least
/// five observations per sample and alpha in (0, 0.5].
WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                 double alpha = 0.05);

double mean(std::span<const double> values);

/// Sample standard deviation (n - 1 normalization); 0 for a single value.
double sample_stddev(std::span<const double> values);

double median(std::span<const double> values);

} // namespace nspso
