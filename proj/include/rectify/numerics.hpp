#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rectify/errors.hpp"

namespace rectify {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Closed parameter interval [lo, hi]. Unbounded by default.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return x >= lo && x <= hi; }
    double length() const { return hi - lo; }
    /// Distance from x to the nearer endpoint (negative outside).
    double room(double x) const { return std::min(x - lo, hi - x); }
};

/// A real-parameter map into T (double, Vec3, Mat3, ...) defined on a closed interval.
template <class T>
struct Sampler {
    std::function<T(double)> eval;
    Interval domain;

    T operator()(double x) const { return eval(x); }
};

template <class F>
Sampler(F, Interval) -> Sampler<std::invoke_result_t<F, double>>;

namespace detail {

inline double stencil_reach(int order) { return order == 3 ? 2.0 : 1.0; }

template <class T, class F>
T central_difference(const F& f, double x, int order, double h) {
    switch (order) {
        case 1:
            return T((f(x + h) - f(x - h)) / (2.0 * h));
        case 2:
            return T((f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h));
        default:
            return T((f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
                     (2.0 * h * h * h));
    }
}

} // namespace detail

/// Default finite-difference step: larger for higher orders so that roundoff
/// (which grows like eps / h^order) stays below the Richardson truncation error.
inline double default_step(double x, int order = 1) {
    static constexpr double base[] = {1e-4, 1e-3, 1e-2};
    const int idx = std::clamp(order, 1, 3) - 1;
    return base[idx] * std::max(1.0, std::abs(x));
}

/// Central difference of the given order (1..3) with one level of Richardson
/// extrapolation, so the truncation error is O(h^4).
template <class T>
T fd_derivative(const Sampler<T>& f, double x, int order, std::optional<double> step = std::nullopt) {
    if (order < 1 || order > 3) {
        throw BadParameter("finite-difference order must be 1, 2 or 3, got " + std::to_string(order));
    }
    const double h = step.value_or(default_step(x, order));
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw BadParameter("finite-difference step must be positive");
    }
    const double reach = detail::stencil_reach(order) * h;
    if (!f.domain.contains(x - reach) || !f.domain.contains(x + reach)) {
        throw DomainExceeded("stencil [" + std::to_string(x - reach) + ", " +
                             std::to_string(x + reach) + "] leaves the sampler domain");
    }
    const T coarse = detail::central_difference<T>(f.eval, x, order, h);
    const T fine = detail::central_difference<T>(f.eval, x, order, 0.5 * h);
    return T((4.0 * fine - coarse) / 3.0);
}

/// Finite-difference weights for the order-th derivative at x0 on arbitrary
/// distinct nodes (Fornberg's recursion).
inline std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order) {
    const std::size_t n = nodes.size();
    const std::size_t m = static_cast<std::size_t>(order);
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w;
    w.reserve(n);
    for (const auto& row : c) w.push_back(row[m]);
    return w;
}

/// One-sided difference on order + 4 equally spaced nodes x, x + dir h, ...,
/// used where a central stencil would leave the domain. Error O(h^5).
template <class T>
T fd_one_sided(const Sampler<T>& f, double x, int order, double h, int direction) {
    const int count = order + 4;
    const double far = x + direction * (count - 1) * h;
    if (!f.domain.contains(x) || !f.domain.contains(far)) {
        throw DomainExceeded("one-sided stencil leaves the sampler domain at x = " + std::to_string(x));
    }
    std::vector<double> nodes;
    for (int i = 0; i < count; ++i) nodes.push_back(x + direction * i * h);
    const std::vector<double> w = fd_weights(x, nodes, order);
    T acc = T(w[0] * f(nodes[0]));
    for (std::size_t i = 1; i < nodes.size(); ++i) acc = T(acc + w[i] * f(nodes[i]));
    return acc;
}

/// Derivative that uses the central Richardson stencil when it fits inside the
/// domain and falls back to a one-sided stencil toward the interior otherwise.
template <class T>
T fd_derivative_bounded(const Sampler<T>& f, double x, int order, std::optional<double> step = std::nullopt) {
    const double h = step.value_or(default_step(x, order));
    if (f.domain.room(x) >= detail::stencil_reach(order) * h) return fd_derivative(f, x, order, h);
    const int direction = (x - f.domain.lo) < (f.domain.hi - x) ? 1 : -1;
    return fd_one_sided(f, x, order, h, direction);
}

/// Shrinks `h` so that an order-`order` stencil centred at x fits in `domain`.
/// Throws DomainExceeded when the available room is negligible.
inline double fit_step(const Interval& domain, double x, int order, double h) {
    const double room = domain.room(x);
    const double reach = detail::stencil_reach(order);
    const double fitted = std::min(h, room / reach);
    if (!(fitted > 1e-9 * std::max(1.0, std::abs(x)))) {
        throw DomainExceeded("no room for a finite-difference stencil at x = " + std::to_string(x));
    }
    return fitted;
}

/// Mixed second partial d^2 f / du dv by the four-point cross stencil with one
/// Richardson level.
template <class F>
auto fd_mixed(const F& f, double u, double v, std::optional<double> step = std::nullopt) {
    using T = std::decay_t<decltype(f(u, v))>;
    const double h = step.value_or(default_step(std::max(std::abs(u), std::abs(v)), 2));
    auto cross = [&](double hh) {
        return T((f(u + hh, v + hh) - f(u + hh, v - hh) - f(u - hh, v + hh) + f(u - hh, v - hh)) /
                 (4.0 * hh * hh));
    };
    const T coarse = cross(h);
    const T fine = cross(0.5 * h);
    return T((4.0 * fine - coarse) / 3.0);
}

/// ||M^T M - I||_inf (max absolute entry).
inline double orthogonality_defect(const Mat3& m) {
    return (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
}

inline bool is_rotation(const Mat3& m, double tol) {
    return m.allFinite() && orthogonality_defect(m) <= tol && std::abs(m.determinant() - 1.0) <= tol;
}

} // namespace rectify
