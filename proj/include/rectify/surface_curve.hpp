#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "rectify/frenet.hpp"
#include "rectify/param_curve.hpp"
#include "rectify/surface.hpp"

namespace rectify {

/// Chart coordinates of a curve and their first two arc-length derivatives.
struct CurveCoordinates {
    double u = 0.0;
    double v = 0.0;
    double du = 0.0;
    double dv = 0.0;
    double ddu = 0.0;
    double ddv = 0.0;
};

/// gamma(s) = phi(u(s), v(s)) on a host patch, s an arc-length parameter.
struct SurfaceCurveSpec {
    std::string name;
    SurfacePatch host;
    std::function<CurveCoordinates(double)> coords;
    Interval domain;

    CurveCoordinates at(double s) const {
        if (!domain.contains(s)) {
            throw DomainExceeded(name + ": s = " + std::to_string(s) + " outside the curve domain");
        }
        return coords(s);
    }
};

/// Same coordinate functions on a different host, e.g. the image patch of an isometry.
inline SurfaceCurveSpec retarget(const SurfaceCurveSpec& spec, const SurfacePatch& host) {
    SurfaceCurveSpec out = spec;
    out.host = host;
    out.name = spec.name + "@" + host.name;
    return out;
}

/// | E u'^2 + 2F u'v' + G v'^2 - 1 |
inline double unit_speed_defect(const SurfaceCurveSpec& spec, double s) {
    const CurveCoordinates c = spec.at(s);
    const FirstFundamentalForm I = fundamental_form_of(spec.host.du(c.u, c.v), spec.host.dv(c.u, c.v));
    return std::abs(I.apply(c.du, c.dv) - 1.0);
}

namespace detail {

inline ParamCurve compose_unchecked(const SurfaceCurveSpec& spec) {
    ParamCurve out;
    out.name = spec.name;
    out.domain = spec.domain;
    out.position = [spec](double s) -> Vec3 {
        const CurveCoordinates c = spec.at(s);
        return spec.host.position(c.u, c.v);
    };
    out.d1 = [spec](double s) -> Vec3 {
        const CurveCoordinates c = spec.at(s);
        return spec.host.du(c.u, c.v) * c.du + spec.host.dv(c.u, c.v) * c.dv;
    };
    out.d2 = [spec](double s) -> Vec3 {
        const CurveCoordinates c = spec.at(s);
        const PatchJet j = spec.host.jet(c.u, c.v);
        return c.ddu * j.pu + c.ddv * j.pv + c.du * c.du * j.puu + 2.0 * c.du * c.dv * j.puv +
               c.dv * c.dv * j.pvv;
    };
    // Third derivative comes from differentiating d2 numerically.
    return out;
}

} // namespace detail

/// Composes the chart curve into a space curve with
///   gamma'  = phi_u u' + phi_v v'
///   gamma'' = u'' phi_u + v'' phi_v + u'^2 phi_uu + 2 u'v' phi_uv + v'^2 phi_vv.
/// Unit speed is verified on `probes` evenly spaced parameters.
inline ParamCurve compose_curve(const SurfaceCurveSpec& spec, const Tolerances& tol = {}, int probes = 33) {
    const double step = spec.domain.length() / (probes - 1);
    for (int i = 0; i < probes; ++i) {
        const double s = i + 1 == probes ? spec.domain.hi : spec.domain.lo + i * step;
        const double defect = unit_speed_defect(spec, s);
        if (!(defect <= tol.unit_speed)) {
            throw NotUnitSpeed(spec.name + ": |E u'^2 + 2F u'v' + G v'^2 - 1| = " + std::to_string(defect) +
                               " at s = " + std::to_string(s));
        }
    }
    return detail::compose_unchecked(spec);
}

/// gamma(s) . N where N = phi_u x phi_v (or its unit version).
inline double normal_component_direct(const SurfaceCurveSpec& spec, double s, bool normalized,
                                      const Tolerances& tol = {}) {
    const CurveCoordinates c = spec.at(s);
    return spec.host.position(c.u, c.v).dot(surface_normal(spec.host, c.u, c.v, normalized, tol));
}

/// The bracket multiplying mu/k in the normal-component expansion:
///   (u'v'' - u''v')(EG - F^2)
///   + u'^3   {E(phi_uu.phi_v) - F(phi_uu.phi_u)} + 2u'^2v' {E(phi_uv.phi_v) - F(phi_uv.phi_u)}
///   + u'v'^2 {E(phi_vv.phi_v) - F(phi_vv.phi_u)} + u'^2v'  {F(phi_uu.phi_v) - G(phi_uu.phi_u)}
///   + 2u'v'^2{F(phi_uv.phi_v) - G(phi_uv.phi_u)} + v'^3    {F(phi_vv.phi_v) - G(phi_vv.phi_u)}
/// It equals (t x t') . (phi_u x phi_v), i.e. k (b . (phi_u x phi_v)).
inline double normal_component_bracket(const SurfaceCurveSpec& spec, double s, const Tolerances& tol = {}) {
    const CurveCoordinates c = spec.at(s);
    const PatchJet j = spec.host.jet(c.u, c.v);
    const FirstFundamentalForm I = fundamental_form_of(j.pu, j.pv);
    require_regular(I, spec.host.name, tol);
    const double E = I.E;
    const double F = I.F;
    const double G = I.G;
    const double u1 = c.du;
    const double v1 = c.dv;

    const auto u_side = [&](const Vec3& second) { return E * second.dot(j.pv) - F * second.dot(j.pu); };
    const auto v_side = [&](const Vec3& second) { return F * second.dot(j.pv) - G * second.dot(j.pu); };

    return (c.du * c.ddv - c.ddu * c.dv) * I.det()
           + u1 * u1 * u1 * u_side(j.puu)
           + 2.0 * u1 * u1 * v1 * u_side(j.puv)
           + u1 * v1 * v1 * u_side(j.pvv)
           + u1 * u1 * v1 * v_side(j.puu)
           + 2.0 * u1 * v1 * v1 * v_side(j.puv)
           + v1 * v1 * v1 * v_side(j.pvv);
}

/// mu / k at s from the Frenet decomposition of the composed curve (mu = gamma . b).
inline double mu_over_k(const SurfaceCurveSpec& spec, double s, const Tolerances& tol = {}) {
    const ParamCurve gamma = detail::compose_unchecked(spec);
    const FrenetFrame f = frenet_apparatus(gamma, s, tol);
    return gamma.at(s).dot(f.b) / f.k;
}

/// gamma . (phi_u x phi_v) from the rectifying expansion, (mu/k) times the bracket.
/// The expansion presumes gamma = lambda t + mu b, so a non-rectifying point is rejected.
inline double normal_component_formula(const SurfaceCurveSpec& spec, double s, double mu_over_k_value,
                                       const Tolerances& tol = {}) {
    const ParamCurve gamma = detail::compose_unchecked(spec);
    const FrenetFrame f = frenet_apparatus(gamma, s, tol);
    const double leak = gamma.at(s).dot(f.n);
    if (!(std::abs(leak) <= tol.rectifying)) {
        throw NotRectifying(spec.name + ": gamma . n = " + std::to_string(leak) + " at s = " + std::to_string(s));
    }
    return mu_over_k_value * normal_component_bracket(spec, s, tol);
}

} // namespace rectify
