#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "rectify/param_curve.hpp"
#include "rectify/tolerances.hpp"

namespace rectify {

/// Orthonormal Frenet triple with curvature and torsion, following
///   t' = k n,   n' = -k t + tau b,   b' = -tau n.
struct FrenetFrame {
    Vec3 t;
    Vec3 n;
    Vec3 b;
    double k = 0.0;
    double tau = 0.0;
};

/// Which sign the torsion is reported with relative to b' = -tau n.
enum class TorsionSign {
    Standard, // b' = -tau n
    Flipped,  // b' = +tau n; residuals against the standard system expose the flip
};

struct FrenetResiduals {
    double r_t = 0.0; // |t' - k n|
    double r_n = 0.0; // |n' + k t - tau b|
    double r_b = 0.0; // |b' + tau n|

    double max() const { return std::max({r_t, r_n, r_b}); }
};

/// Position split into the rectifying plane plus the osculating-normal leak.
struct RectifyingDecomposition {
    double lambda = 0.0;          // gamma . t
    double mu = 0.0;              // gamma . b
    double normal_residual = 0.0; // gamma . n, zero for a rectifying curve
};

struct RectifyingCheck {
    bool verdict = false;
    double worst_residual = 0.0;
    std::vector<double> samples;
    std::vector<RectifyingDecomposition> decomposition;
};

/// Throws NotUnitSpeed unless |velocity| is 1 within tol.unit_speed.
inline void require_unit_speed(const Vec3& velocity, double s, const Tolerances& tol) {
    const double speed = velocity.norm();
    if (std::abs(speed - 1.0) > tol.unit_speed) {
        throw NotUnitSpeed("|gamma'(" + std::to_string(s) + ")| = " + std::to_string(speed) +
                           "; reparametrize by arc length first");
    }
}

/// Frenet frame of a unit-speed curve at s. n is Gram-Schmidt orthogonalized
/// against t and b = t x n, so the frame is right-handed and orthonormal to
/// rounding even when the input is only unit speed to tolerance.
inline FrenetFrame frenet_apparatus(const ParamCurve& c, double s, const Tolerances& tol = {}) {
    const Vec3 d1 = c.derivative(1, s);
    require_unit_speed(d1, s, tol);
    const double speed = d1.norm();
    const Vec3 d2 = c.derivative(2, s);
    const double k = d2.norm();
    if (k <= tol.eps_curv) {
        throw VanishingCurvature("|gamma''(" + std::to_string(s) + ")| = " + std::to_string(k));
    }
    FrenetFrame f;
    f.t = d1 / speed;
    f.n = (d2 - f.t * f.t.dot(d2)).normalized();
    f.b = f.t.cross(f.n);
    f.k = k;
    const Vec3 d3 = c.derivative(3, s);
    const Vec3 d1xd2 = d1.cross(d2);
    f.tau = d1xd2.dot(d3) / d1xd2.squaredNorm();
    return f;
}

/// Largest deviation of the frame from an orthonormal right-handed triple.
inline double frame_defect(const FrenetFrame& f) {
    return std::max({std::abs(f.t.norm() - 1.0), std::abs(f.n.norm() - 1.0), std::abs(f.b.norm() - 1.0),
                     std::abs(f.t.dot(f.n)), std::abs(f.n.dot(f.b)), std::abs(f.b.dot(f.t)),
                     (f.b - f.t.cross(f.n)).norm()});
}

/// Residuals of the Frenet-Serret system at s, with frame derivatives taken by
/// finite differences of the frame field along the curve.
inline FrenetResiduals frenet_residuals(const ParamCurve& c, double s, const Tolerances& tol = {},
                                        TorsionSign sign = TorsionSign::Standard) {
    using Frame9 = Eigen::Matrix<double, 9, 1>;
    const auto frame_field = [&c, &tol](double x) -> Frame9 {
        const FrenetFrame f = frenet_apparatus(c, x, tol);
        Frame9 out;
        out << f.t, f.n, f.b;
        return out;
    };
    const FrenetFrame f = frenet_apparatus(c, s, tol);
    const double h = fit_step(c.domain, s, 1, default_step(s, 1));
    const Frame9 dframe = fd_derivative(Sampler<Frame9>{frame_field, c.domain}, s, 1, h);
    const Vec3 dt = dframe.segment<3>(0);
    const Vec3 dn = dframe.segment<3>(3);
    const Vec3 db = dframe.segment<3>(6);
    const double tau = sign == TorsionSign::Standard ? f.tau : -f.tau;

    FrenetResiduals r;
    r.r_t = (dt - f.k * f.n).norm();
    r.r_n = (dn + f.k * f.t - tau * f.b).norm();
    r.r_b = (db + tau * f.n).norm();
    return r;
}

inline RectifyingDecomposition rectifying_decomposition(const ParamCurve& c, double s, const Tolerances& tol = {}) {
    const FrenetFrame f = frenet_apparatus(c, s, tol);
    const Vec3 p = c.at(s);
    return {p.dot(f.t), p.dot(f.b), p.dot(f.n)};
}

/// A curve is rectifying when its position vector stays in the span of t and b,
/// i.e. gamma . n = 0. Verdict is max |gamma . n| <= rectifying_tol.
inline RectifyingCheck rectifying_check(const ParamCurve& c, std::span<const double> samples, double rectifying_tol,
                                        const Tolerances& tol = {}) {
    RectifyingCheck out;
    out.samples.assign(samples.begin(), samples.end());
    out.decomposition.reserve(samples.size());
    for (double s : samples) {
        out.decomposition.push_back(rectifying_decomposition(c, s, tol));
        out.worst_residual = std::max(out.worst_residual, std::abs(out.decomposition.back().normal_residual));
    }
    out.verdict = out.worst_residual <= rectifying_tol;
    return out;
}

} // namespace rectify
