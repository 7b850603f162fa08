#include "nspso/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace nspso {

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                 double alpha)
{
    if (a.size() < 5 || b.size() < 5)
        throw std::invalid_argument("wilcoxon_rank_sum: each sample needs at least 5 values");
    if (!(alpha > 0.0 && alpha <= 0.5))
        throw std::invalid_argument("wilcoxon_rank_sum: alpha must lie in (0, 0.5]");

    struct Tagged {
        double value;
        bool from_a;
    };
    std::vector<Tagged> pool;
    pool.reserve(a.size() + b.size());
    for (double v : a)
        pool.push_back({v, true});
    for (double v : b)
        pool.push_back({v, false});
    std::sort(pool.begin(), pool.end(),
              [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double n = n1 + n2;

    // Average ranks within tie groups; accumulate sum(t^3 - t) for the
    // variance correction.
    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < pool.size()) {
        std::size_t j = i;
        while (j < pool.size() && pool[j].value == pool[i].value)
            ++j;
        const double t = static_cast<double>(j - i);
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (pool[k].from_a)
                rank_sum_a += avg_rank;
        tie_term += t * t * t - t;
        i = j;
    }

    const double mu = n1 * (n + 1.0) / 2.0;
    const double variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));

    WilcoxonResult result;
    result.statistic = rank_sum_a;
    if (variance <= 0.0) {
        // Everything tied: no rank separation is possible.
        result.p_value = 1.0;
        result.h = 0;
        return result;
    }
    const double z = (rank_sum_a - mu) / std::sqrt(variance);
    result.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
    result.h = result.p_value < alpha ? 1 : 0;
    return result;
}

double mean(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("mean: empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0)
        / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("sample_stddev: empty sample");
    if (values.size() < 2)
        return 0.0;
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values)
        ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double median(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("median: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n % 2 == 1)
        return sorted[n / 2];
    return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

} // namespace nspso
