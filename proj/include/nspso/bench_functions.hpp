#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>

// Raw benchmark kernels, usable on any dense Eigen expression. The Problem
// front end in bench.hpp handles rotation, bounds and dispatch; these only
// compute function values.
namespace nspso::functions {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

template <typename Derived>
double sphere(const Eigen::MatrixBase<Derived>& x)
{
    return x.squaredNorm();
}

template <typename Derived>
double rosenbrock(const Eigen::MatrixBase<Derived>& x)
{
    double sum = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i] * x[i] - x[i + 1];
        const double b = x[i] - 1.0;
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

template <typename Derived>
double ackley(const Eigen::MatrixBase<Derived>& x)
{
    const double d = static_cast<double>(x.size());
    const double mean_sq = x.squaredNorm() / d;
    const double mean_cos = (x.derived().array() * two_pi).cos().sum() / d;
    return -20.0 * std::exp(-0.2 * std::sqrt(mean_sq)) - std::exp(mean_cos) + 20.0
        + std::numbers::e;
}

template <typename Derived>
double griewank(const Eigen::MatrixBase<Derived>& x)
{
    double prod = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    return x.squaredNorm() / 4000.0 - prod + 1.0;
}

/// Inner Weierstrass series sum_{k=0}^{20} a^k cos(2 pi b^k (xi + 0.5)) with
/// a = 0.5, b = 3.
inline double weierstrass_term(double xi)
{
    double sum = 0.0;
    double ak = 1.0;
    double bk = 1.0;
    for (int k = 0; k <= 20; ++k) {
        sum += ak * std::cos(two_pi * bk * (xi + 0.5));
        ak *= 0.5;
        bk *= 3.0;
    }
    return sum;
}

template <typename Derived>
double weierstrass(const Eigen::MatrixBase<Derived>& x)
{
    // Constant center term, shared by every call.
    static const double center = weierstrass_term(0.0);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        sum += weierstrass_term(x[i]);
    return sum - static_cast<double>(x.size()) * center;
}

template <typename Derived>
double rastrigin(const Eigen::MatrixBase<Derived>& x)
{
    const auto a = x.derived().array();
    return (a.square() - 10.0 * (a * two_pi).cos() + 10.0).sum();
}

/// Rounds coordinates with |xi| >= 1/2 to the nearest half-integer
/// (half away from zero).
inline double noncontinuous_coordinate(double xi)
{
    return std::abs(xi) < 0.5 ? xi : std::round(2.0 * xi) / 2.0;
}

template <typename Derived>
double rastrigin_noncontinuous(const Eigen::MatrixBase<Derived>& x)
{
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double y = noncontinuous_coordinate(x[i]);
        sum += y * y - 10.0 * std::cos(two_pi * y) + 10.0;
    }
    return sum;
}

template <typename Derived>
double schwefel(const Eigen::MatrixBase<Derived>& x)
{
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        sum += x[i] * std::sin(std::sqrt(std::abs(x[i])));
    return 418.9829 * static_cast<double>(x.size()) - sum;
}

/// Schwefel term with the out-of-range branch used by the rotated variant:
/// coordinates beyond |y| = 500 contribute the squared distance to the bound
/// scaled by 0.001 instead of the sine term.
inline double schwefel_bounded_term(double yi)
{
    if (std::abs(yi) <= 500.0)
        return yi * std::sin(std::sqrt(std::abs(yi)));
    const double over = std::abs(yi) - 500.0;
    return 0.001 * over * over;
}

template <typename Derived>
double schwefel_bounded(const Eigen::MatrixBase<Derived>& y)
{
    double sum = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i)
        sum += schwefel_bounded_term(y[i]);
    return 418.9829 * static_cast<double>(y.size()) - sum;
}

} // namespace nspso::functions
