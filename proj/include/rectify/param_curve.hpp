#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rectify/numerics.hpp"

namespace rectify {

/// A space curve s -> R^3 with derivative access up to order 3. Any of the
/// analytic derivatives may be left empty; the missing ones are obtained by
/// differentiating the highest analytic lower-order derivative numerically.
struct ParamCurve {
    using VecFn = std::function<Vec3(double)>;

    std::string name;
    VecFn position;
    VecFn d1;
    VecFn d2;
    VecFn d3;
    Interval domain;

    Vec3 at(double s) const {
        check_domain(s);
        return position(s);
    }

    bool has_analytic(int order) const {
        switch (order) {
            case 0: return static_cast<bool>(position);
            case 1: return static_cast<bool>(d1);
            case 2: return static_cast<bool>(d2);
            case 3: return static_cast<bool>(d3);
            default: return false;
        }
    }

    /// order-th derivative (0..3) at s.
    Vec3 derivative(int order, double s) const {
        if (order < 0 || order > 3) throw BadParameter("curve derivative order must be 0..3");
        check_domain(s);
        if (const VecFn* f = analytic(order); f && *f) return (*f)(s);

        int base = order - 1;
        while (base > 0 && !has_analytic(base)) --base;
        const VecFn& g = *analytic(base);
        const int fd_order = order - base;
        return fd_derivative_bounded(Sampler<Vec3>{g, domain}, s, fd_order);
    }

    Vec3 velocity(double s) const { return derivative(1, s); }

private:
    const VecFn* analytic(int order) const {
        switch (order) {
            case 0: return &position;
            case 1: return &d1;
            case 2: return &d2;
            case 3: return &d3;
            default: return nullptr;
        }
    }

    void check_domain(double s) const {
        if (!domain.contains(s)) {
            throw DomainExceeded("parameter " + std::to_string(s) + " outside curve domain [" +
                                 std::to_string(domain.lo) + ", " + std::to_string(domain.hi) + "]");
        }
    }
};

/// Applies x -> R x + offset to the curve (derivatives transform by R only).
inline ParamCurve rigidly_moved(const ParamCurve& c, const Mat3& rotation, const Vec3& offset) {
    ParamCurve out;
    out.name = c.name + "+rigid";
    out.domain = c.domain;
    out.position = [c, rotation, offset](double s) -> Vec3 { return rotation * c.at(s) + offset; };
    const auto lift = [&](int order) -> ParamCurve::VecFn {
        if (!c.has_analytic(order)) return {};
        return [c, rotation, order](double s) -> Vec3 { return rotation * c.derivative(order, s); };
    };
    out.d1 = lift(1);
    out.d2 = lift(2);
    out.d3 = lift(3);
    return out;
}

inline ParamCurve translated(const ParamCurve& c, const Vec3& offset) {
    ParamCurve out = rigidly_moved(c, Mat3::Identity(), offset);
    out.name = c.name + "+translated";
    return out;
}

/// Same geometric curve with the parameter origin moved: s -> s + shift.
inline ParamCurve shifted_parameter(const ParamCurve& c, double shift) {
    ParamCurve out;
    out.name = c.name;
    out.domain = {c.domain.lo - shift, c.domain.hi - shift};
    out.position = [c, shift](double s) -> Vec3 { return c.at(s + shift); };
    const auto lift = [&](int order) -> ParamCurve::VecFn {
        if (!c.has_analytic(order)) return {};
        return [c, shift, order](double s) -> Vec3 { return c.derivative(order, s + shift); };
    };
    out.d1 = lift(1);
    out.d2 = lift(2);
    out.d3 = lift(3);
    return out;
}

/// n cell-centred samples of an interval: lo + (i + 1/2) (hi - lo) / n.
inline std::vector<double> centred_samples(const Interval& domain, int n) {
    if (n < 1) throw BadParameter("sample count must be positive");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    const double step = domain.length() / n;
    for (int i = 0; i < n; ++i) out.push_back(domain.lo + (i + 0.5) * step);
    return out;
}

} // namespace rectify
