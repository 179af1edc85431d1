#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "rectify/param_curve.hpp"
#include "rectify/tolerances.hpp"

namespace rectify {

namespace detail {

using SpeedRule = boost::math::quadrature::gauss<double, 20>;

inline double integrate_speed(const ParamCurve& c, double a, double b) {
    if (b <= a) return 0.0;
    return SpeedRule::integrate([&c](double t) { return c.velocity(t).norm(); }, a, b);
}

/// Cumulative arc length on a fixed panel partition of the parameter domain.
struct ArcLengthTable {
    ParamCurve base;
    std::vector<double> knots;      // parameter values t_0 < ... < t_P
    std::vector<double> cumulative; // S(t_i)

    double total() const { return cumulative.back(); }

    /// Parameter t with S(t) = s: panel lookup, linear guess, Newton refinement.
    double invert(double s) const {
        if (s <= 0.0) return knots.front();
        if (s >= total()) return knots.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
        const std::size_t i = static_cast<std::size_t>(std::distance(cumulative.begin(), it)) - 1;
        const double t0 = knots[i];
        const double t1 = knots[i + 1];
        const double s0 = cumulative[i];
        const double s1 = cumulative[i + 1];
        const double guess = t0 + (t1 - t0) * (s - s0) / (s1 - s0);
        auto residual = [&](double t) {
            const double g = s0 + integrate_speed(base, t0, t) - s;
            return std::make_pair(g, base.velocity(t).norm());
        };
        std::uintmax_t iterations = 50;
        return boost::math::tools::newton_raphson_iterate(residual, guess, t0, t1, 50, iterations);
    }
};

} // namespace detail

/// Arc length of c over [a, b] by composite 20-point Gauss-Legendre quadrature.
inline double arc_length(const ParamCurve& c, double a, double b, int panels = 32) {
    double total = 0.0;
    const double w = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        total += detail::integrate_speed(c, a + i * w, a + (i + 1) * w);
    }
    return total;
}

/// Returns the unit-speed reparametrization gamma(s) = c(t(s)), s in [0, L].
///
/// t(s) inverts the quadrature-built arc-length table with Newton's method, and
/// the derivatives of gamma follow from those of c by the chain rule:
///   gamma'   = T,                  T = c' / |c'|
///   gamma''  = p / |c'|^2,          p = c'' - T (T . c'')
///   gamma''' = (p' / |c'|^2 - 2 p (T . c'') / |c'|^3) / |c'|
inline ParamCurve arc_length_reparametrize(const ParamCurve& c, std::optional<Interval> t_domain = std::nullopt,
                                           const Tolerances& tol = {}, int panels = 64) {
    const Interval dom = t_domain.value_or(c.domain);
    if (!(dom.length() > 0.0) || !std::isfinite(dom.length())) {
        throw BadParameter("arc-length reparametrization needs a bounded, non-empty domain");
    }

    auto table = std::make_shared<detail::ArcLengthTable>();
    table->base = c;
    table->knots.resize(static_cast<std::size_t>(panels) + 1);
    table->cumulative.assign(static_cast<std::size_t>(panels) + 1, 0.0);
    for (int i = 0; i <= panels; ++i) {
        table->knots[static_cast<std::size_t>(i)] = dom.lo + dom.length() * i / panels;
    }
    table->knots.back() = dom.hi;

    // Speed floor is enforced at every quadrature node and knot.
    const auto& nodes = detail::SpeedRule::abscissa();
    for (std::size_t i = 0; i < table->knots.size(); ++i) {
        const double t = table->knots[i];
        if (c.velocity(t).norm() <= tol.eps_speed) {
            throw DegenerateSpeed("curve speed vanishes at t = " + std::to_string(t));
        }
        if (i + 1 == table->knots.size()) break;
        const double mid = 0.5 * (t + table->knots[i + 1]);
        const double half = 0.5 * (table->knots[i + 1] - t);
        for (double x : nodes) {
            for (double tt : {mid - half * x, mid + half * x}) {
                if (c.velocity(tt).norm() <= tol.eps_speed) {
                    throw DegenerateSpeed("curve speed vanishes near t = " + std::to_string(tt));
                }
            }
        }
        table->cumulative[i + 1] = table->cumulative[i] + detail::integrate_speed(c, t, table->knots[i + 1]);
    }

    ParamCurve out;
    out.name = c.name + "@arclength";
    out.domain = {0.0, table->total()};
    out.position = [table](double s) -> Vec3 { return table->base.at(table->invert(s)); };
    out.d1 = [table](double s) -> Vec3 { return table->base.velocity(table->invert(s)).normalized(); };
    out.d2 = [table](double s) -> Vec3 {
        const double t = table->invert(s);
        const Vec3 v = table->base.derivative(1, t);
        const Vec3 a = table->base.derivative(2, t);
        const double speed = v.norm();
        const Vec3 unit = v / speed;
        return (a - unit * unit.dot(a)) / (speed * speed);
    };
    out.d3 = [table](double s) -> Vec3 {
        const double t = table->invert(s);
        const Vec3 v = table->base.derivative(1, t);
        const Vec3 a = table->base.derivative(2, t);
        const Vec3 j = table->base.derivative(3, t);
        const double speed = v.norm();
        const Vec3 unit = v / speed;
        const double along = unit.dot(a);
        const Vec3 p = a - unit * along;
        const Vec3 unit_t = p / speed;
        const Vec3 p_t = j - unit_t * along - unit * (unit_t.dot(a) + unit.dot(j));
        return (p_t / (speed * speed) - 2.0 * p * along / (speed * speed * speed)) / speed;
    };
    return out;
}

} // namespace rectify
