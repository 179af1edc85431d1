#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rectify/isometry.hpp"
#include "rectify/param_curve.hpp"
#include "rectify/surface.hpp"
#include "rectify/surface_curve.hpp"

namespace rectify::fixtures {

using std::cos;
using std::cosh;
using std::sin;
using std::sinh;

inline constexpr double kPi = std::numbers::pi;
/// Cones are cut off at this distance from the apex.
inline constexpr double kConeApexCutoff = 1e-3;
/// Keeps cone geodesics this far (in unrolled polar angle) from their asymptotes.
inline constexpr double kAsymptoteMargin = 0.05;

// ---------------------------------------------------------------- surfaces

/// (u, v, 0); phi_u x phi_v = +z.
inline SurfacePatch make_plane() {
    SurfacePatch p;
    p.name = "plane";
    p.phi = [](double u, double v) { return Vec3(u, v, 0.0); };
    p.phi_u = [](double, double) { return Vec3(1.0, 0.0, 0.0); };
    p.phi_v = [](double, double) { return Vec3(0.0, 1.0, 0.0); };
    p.phi_uu = p.phi_uv = p.phi_vv = [](double, double) { return Vec3::Zero().eval(); };
    p.u_domain = {-4.0, 4.0};
    p.v_domain = {-4.0, 4.0};
    p.orientation = "phi_u x phi_v = +z";
    return p;
}

/// (cos u, sin u, v); phi_u x phi_v = (cos u, sin u, 0), outward.
inline SurfacePatch make_cylinder() {
    SurfacePatch p;
    p.name = "cylinder";
    p.phi = [](double u, double v) { return Vec3(cos(u), sin(u), v); };
    p.phi_u = [](double u, double) { return Vec3(-sin(u), cos(u), 0.0); };
    p.phi_v = [](double, double) { return Vec3(0.0, 0.0, 1.0); };
    p.phi_uu = [](double u, double) { return Vec3(-cos(u), -sin(u), 0.0); };
    p.phi_uv = p.phi_vv = [](double, double) { return Vec3::Zero().eval(); };
    p.u_domain = {-2.0 * kPi, 2.0 * kPi};
    p.v_domain = {-8.0, 8.0};
    p.orientation = "phi_u x phi_v = (cos u, sin u, 0), outward";
    return p;
}

/// (v sin a cos u, v sin a sin u, v cos a) with apex at the origin, v >= 1e-3.
/// phi_u x phi_v = v sin a (cos a cos u, cos a sin u, -sin a): away from the axis, toward -z.
inline SurfacePatch make_cone(double alpha = kPi / 4.0) {
    if (!(alpha > 0.0 && alpha < kPi / 2.0)) {
        throw BadParameter("cone half-angle must lie in (0, pi/2)");
    }
    const double sa = sin(alpha);
    const double ca = cos(alpha);
    SurfacePatch p;
    p.name = "cone";
    p.phi = [sa, ca](double u, double v) { return Vec3(v * sa * cos(u), v * sa * sin(u), v * ca); };
    p.phi_u = [sa](double u, double v) { return Vec3(-v * sa * sin(u), v * sa * cos(u), 0.0); };
    p.phi_v = [sa, ca](double u, double) { return Vec3(sa * cos(u), sa * sin(u), ca); };
    p.phi_uu = [sa](double u, double v) { return Vec3(-v * sa * cos(u), -v * sa * sin(u), 0.0); };
    p.phi_uv = [sa](double u, double) { return Vec3(-sa * sin(u), sa * cos(u), 0.0); };
    p.phi_vv = [](double, double) { return Vec3::Zero().eval(); };
    p.u_domain = {-kPi, kPi};
    p.v_domain = {kConeApexCutoff, 4.0};
    p.orientation = "phi_u x phi_v = v sin(a) (cos a cos u, cos a sin u, -sin a)";
    return p;
}

/// (sinh v cos u, sinh v sin u, u); E = G = cosh^2 v, F = 0.
/// phi_u x phi_v = (-cosh v sin u, cosh v cos u, -sinh v cosh v).
inline SurfacePatch make_helicoid() {
    SurfacePatch p;
    p.name = "helicoid";
    p.phi = [](double u, double v) { return Vec3(sinh(v) * cos(u), sinh(v) * sin(u), u); };
    p.phi_u = [](double u, double v) { return Vec3(-sinh(v) * sin(u), sinh(v) * cos(u), 1.0); };
    p.phi_v = [](double u, double v) { return Vec3(cosh(v) * cos(u), cosh(v) * sin(u), 0.0); };
    p.phi_uu = [](double u, double v) { return Vec3(-sinh(v) * cos(u), -sinh(v) * sin(u), 0.0); };
    p.phi_uv = [](double u, double v) { return Vec3(-cosh(v) * sin(u), cosh(v) * cos(u), 0.0); };
    p.phi_vv = [](double u, double v) { return Vec3(sinh(v) * cos(u), sinh(v) * sin(u), 0.0); };
    p.u_domain = {-kPi, kPi};
    p.v_domain = {-1.5, 1.5};
    p.orientation = "phi_u x phi_v = (-cosh v sin u, cosh v cos u, -sinh v cosh v)";
    return p;
}

/// (cosh v cos u, cosh v sin u, v); E = G = cosh^2 v, F = 0.
/// phi_u x phi_v = (cosh v cos u, cosh v sin u, -sinh v cosh v), outward.
inline SurfacePatch make_catenoid() {
    SurfacePatch p;
    p.name = "catenoid";
    p.phi = [](double u, double v) { return Vec3(cosh(v) * cos(u), cosh(v) * sin(u), v); };
    p.phi_u = [](double u, double v) { return Vec3(-cosh(v) * sin(u), cosh(v) * cos(u), 0.0); };
    p.phi_v = [](double u, double v) { return Vec3(sinh(v) * cos(u), sinh(v) * sin(u), 1.0); };
    p.phi_uu = [](double u, double v) { return Vec3(-cosh(v) * cos(u), -cosh(v) * sin(u), 0.0); };
    p.phi_uv = [](double u, double v) { return Vec3(-sinh(v) * sin(u), sinh(v) * cos(u), 0.0); };
    p.phi_vv = [](double u, double v) { return Vec3(cosh(v) * cos(u), cosh(v) * sin(u), 0.0); };
    p.u_domain = {-kPi, kPi};
    p.v_domain = {-1.5, 1.5};
    p.orientation = "phi_u x phi_v = (cosh v cos u, cosh v sin u, -sinh v cosh v), outward";
    return p;
}

/// (r cos v cos u, r cos v sin u, r sin v), latitude v kept away from the poles.
/// phi_u x phi_v = r cos v * phi, outward.
inline SurfacePatch make_sphere(double r = 1.0) {
    if (!(r > 0.0)) throw BadParameter("sphere radius must be positive");
    SurfacePatch p;
    p.name = "sphere";
    p.phi = [r](double u, double v) { return Vec3(r * cos(v) * cos(u), r * cos(v) * sin(u), r * sin(v)); };
    p.phi_u = [r](double u, double v) { return Vec3(-r * cos(v) * sin(u), r * cos(v) * cos(u), 0.0); };
    p.phi_v = [r](double u, double v) { return Vec3(-r * sin(v) * cos(u), -r * sin(v) * sin(u), r * cos(v)); };
    p.phi_uu = [r](double u, double v) { return Vec3(-r * cos(v) * cos(u), -r * cos(v) * sin(u), 0.0); };
    p.phi_uv = [r](double u, double v) { return Vec3(r * sin(v) * sin(u), -r * sin(v) * cos(u), 0.0); };
    p.phi_vv = [r](double u, double v) { return Vec3(-r * cos(v) * cos(u), -r * cos(v) * sin(u), -r * sin(v)); };
    p.u_domain = {-kPi, kPi};
    p.v_domain = {-1.2, 1.2};
    p.orientation = "phi_u x phi_v = r cos(v) phi, outward";
    return p;
}

/// The cone of half-angle alpha flattened into z = 0:
/// (v cos(u sin a), v sin(u sin a), 0). Same (u, v) chart, so E = v^2 sin^2 a, G = 1.
inline SurfacePatch make_unrolled_cone(double alpha = kPi / 4.0) {
    const SurfacePatch cone = make_cone(alpha);
    const double sa = sin(alpha);
    SurfacePatch p;
    p.name = "cone-unrolled";
    p.phi = [sa](double u, double v) { return Vec3(v * cos(u * sa), v * sin(u * sa), 0.0); };
    p.phi_u = [sa](double u, double v) { return Vec3(-v * sa * sin(u * sa), v * sa * cos(u * sa), 0.0); };
    p.phi_v = [sa](double u, double) { return Vec3(cos(u * sa), sin(u * sa), 0.0); };
    p.phi_uu = [sa](double u, double v) {
        return Vec3(-v * sa * sa * cos(u * sa), -v * sa * sa * sin(u * sa), 0.0);
    };
    p.phi_uv = [sa](double u, double) { return Vec3(-sa * sin(u * sa), sa * cos(u * sa), 0.0); };
    p.phi_vv = [](double, double) { return Vec3::Zero().eval(); };
    p.u_domain = cone.u_domain;
    p.v_domain = cone.v_domain;
    p.orientation = "phi_u x phi_v = (0, 0, -v sin a)";
    return p;
}

/// x -> R x applied to a patch (partials rotate with it).
inline SurfacePatch rotated(const SurfacePatch& src, const Mat3& rotation, std::string name) {
    SurfacePatch p = src;
    p.name = std::move(name);
    const auto lift = [&rotation](const SurfacePatch::Fn& f) -> SurfacePatch::Fn {
        if (!f) return {};
        return [f, rotation](double u, double v) -> Vec3 { return rotation * f(u, v); };
    };
    p.phi = lift(src.phi);
    p.phi_u = lift(src.phi_u);
    p.phi_v = lift(src.phi_v);
    p.phi_uu = lift(src.phi_uu);
    p.phi_uv = lift(src.phi_uv);
    p.phi_vv = lift(src.phi_vv);
    p.orientation = "rotated image of: " + src.orientation;
    return p;
}

/// phi(u + du, v) over the same parameter rectangle.
inline SurfacePatch shifted_in_u(const SurfacePatch& src, double du, std::string name) {
    SurfacePatch p = src;
    p.name = std::move(name);
    const auto lift = [du](const SurfacePatch::Fn& f) -> SurfacePatch::Fn {
        if (!f) return {};
        return [f, du](double u, double v) -> Vec3 { return f(u + du, v); };
    };
    p.phi = lift(src.phi);
    p.phi_u = lift(src.phi_u);
    p.phi_v = lift(src.phi_v);
    p.phi_uu = lift(src.phi_uu);
    p.phi_uv = lift(src.phi_uv);
    p.phi_vv = lift(src.phi_vv);
    return p;
}

inline SurfacePatch with_domain(SurfacePatch p, Interval u, Interval v) {
    p.u_domain = u;
    p.v_domain = v;
    return p;
}

// ---------------------------------------------------------------- curves

struct CurveFixture {
    std::string name;
    ParamCurve curve;      // unit-speed space curve
    SurfaceCurveSpec spec; // the same curve as a chart curve on its host
    bool rectifying = false;
};

/// Circle of radius r about the origin in z = 0, unit speed:
/// (r cos(s/r), r sin(s/r), 0), hosted on the plane.
inline CurveFixture make_circle(double r = 2.0) {
    if (!(r > 0.0)) throw BadParameter("circle radius must be positive");
    CurveFixture f;
    f.name = "circle";
    f.curve.name = "circle";
    f.curve.domain = {0.0, 2.0 * kPi * r};
    f.curve.position = [r](double s) { return Vec3(r * cos(s / r), r * sin(s / r), 0.0); };
    f.curve.d1 = [r](double s) { return Vec3(-sin(s / r), cos(s / r), 0.0); };
    f.curve.d2 = [r](double s) { return Vec3(-cos(s / r) / r, -sin(s / r) / r, 0.0); };
    f.curve.d3 = [r](double s) { return Vec3(sin(s / r) / (r * r), -cos(s / r) / (r * r), 0.0); };

    f.spec.name = "circle";
    f.spec.host = make_plane();
    f.spec.domain = f.curve.domain;
    f.spec.coords = [r](double s) {
        return CurveCoordinates{r * cos(s / r), r * sin(s / r), -sin(s / r), cos(s / r), -cos(s / r) / r,
                                -sin(s / r) / r};
    };
    return f;
}

/// (cos t, sin t, t) at unit speed, t = s / sqrt 2; on the cylinder with u = v = s / sqrt 2.
/// Curvature and torsion are both 1/2.
inline CurveFixture make_helix() {
    const double c = 1.0 / std::numbers::sqrt2;
    CurveFixture f;
    f.name = "helix";
    f.curve.name = "helix";
    f.curve.domain = {0.0, 2.0 * kPi * std::numbers::sqrt2};
    f.curve.position = [c](double s) { return Vec3(cos(c * s), sin(c * s), c * s); };
    f.curve.d1 = [c](double s) { return Vec3(-c * sin(c * s), c * cos(c * s), c); };
    f.curve.d2 = [c](double s) { return Vec3(-c * c * cos(c * s), -c * c * sin(c * s), 0.0); };
    f.curve.d3 = [c](double s) { return Vec3(c * c * c * sin(c * s), -c * c * c * cos(c * s), 0.0); };

    f.spec.name = "helix";
    f.spec.host = make_cylinder();
    f.spec.domain = f.curve.domain;
    f.spec.coords = [c](double s) { return CurveCoordinates{c * s, c * s, c, c, 0.0, 0.0}; };
    return f;
}

/// The straight line (s, 0, 0) on the plane; its curvature vanishes.
inline CurveFixture make_line() {
    CurveFixture f;
    f.name = "line";
    f.curve.name = "line";
    f.curve.domain = {-1.0, 1.0};
    f.curve.position = [](double s) { return Vec3(s, 0.0, 0.0); };
    f.curve.d1 = [](double) { return Vec3(1.0, 0.0, 0.0); };
    f.curve.d2 = f.curve.d3 = [](double) { return Vec3::Zero().eval(); };
    f.spec.name = "line";
    f.spec.host = make_plane();
    f.spec.domain = f.curve.domain;
    f.spec.coords = [](double s) { return CurveCoordinates{s, 0.0, 1.0, 0.0, 0.0, 0.0}; };
    return f;
}

/// Geodesic of the cone obtained by unrolling: in the flattened cone (polar
/// radius v, polar angle u sin a) it is the straight line at distance d from
/// the apex whose foot point has polar angle theta0, i.e.
/// v(u) = d / cos(u sin a - theta0). Parametrized by signed arc length s from
/// the foot point, s in [-half_length, half_length]:
///   v = sqrt(d^2 + s^2),   u = (theta0 + atan(s / d)) / sin a.
/// Because the cone apex is the origin, the curve is rectifying.
inline CurveFixture make_cone_geodesic(double alpha = kPi / 4.0, double d = 1.0, double theta0 = 0.0,
                                       double half_length = 2.0) {
    const SurfacePatch cone = make_cone(alpha);
    if (!(d > 0.0) || !(half_length > 0.0)) {
        throw BadParameter("cone geodesic needs d > 0 and a positive half length");
    }
    const double sa = sin(alpha);
    const double sweep = std::atan(half_length / d);
    if (std::abs(theta0) + sweep >= kPi / 2.0 - kAsymptoteMargin) {
        throw DomainExceeded("cone geodesic reaches within the asymptote margin of the unrolled line");
    }
    const double u_lo = (theta0 - sweep) / sa;
    const double u_hi = (theta0 + sweep) / sa;
    const double v_hi = std::hypot(d, half_length);
    if (!cone.u_domain.contains(u_lo) || !cone.u_domain.contains(u_hi) || !cone.v_domain.contains(v_hi) ||
        !cone.v_domain.contains(d)) {
        throw DomainExceeded("cone geodesic leaves the cone patch domain");
    }

    CurveFixture f;
    f.name = "cone-geodesic";
    f.spec.name = "cone-geodesic";
    f.spec.host = cone;
    f.spec.domain = {-half_length, half_length};
    f.spec.coords = [sa, d, theta0](double s) {
        const double r2 = d * d + s * s;
        const double r = std::sqrt(r2);
        CurveCoordinates c;
        c.u = (theta0 + std::atan2(s, d)) / sa;
        c.v = r;
        c.du = d / r2 / sa;
        c.dv = s / r;
        c.ddu = -2.0 * d * s / (r2 * r2) / sa;
        c.ddv = d * d / (r2 * r);
        return c;
    };
    f.curve = compose_curve(f.spec);
    f.rectifying = true;
    return f;
}

/// The same cone geodesic as a chart curve parametrized by u (not unit speed):
/// u -> phi(u, d / cos(u sin a - theta0)).
inline ParamCurve cone_geodesic_by_angle(double alpha, double d, double theta0, Interval u_range) {
    const SurfacePatch cone = make_cone(alpha);
    const double sa = sin(alpha);
    ParamCurve c;
    c.name = "cone-geodesic(u)";
    c.domain = u_range;
    c.position = [cone, sa, d, theta0](double u) { return cone.phi(u, d / cos(u * sa - theta0)); };
    return c;
}

// ---------------------------------------------------------------- pairs

inline IsometryPair make_pair_identity(const SurfacePatch& p) { return {"identity:" + p.name, p, p}; }

/// Plane strip wrapped onto the unit cylinder.
inline IsometryPair make_pair_plane_cylinder() {
    const Interval u{-kPi, kPi};
    const Interval v{-1.0, 1.0};
    return {"plane-cylinder", with_domain(make_plane(), u, v), with_domain(make_cylinder(), u, v)};
}

/// The classical bending of the helicoid onto the catenoid (same chart).
inline IsometryPair make_pair_helicoid_catenoid() {
    return {"helicoid-catenoid", make_helicoid(), make_catenoid()};
}

/// Cone rotated about its axis: phibar(u, v) = phi(u + beta, v).
inline IsometryPair make_pair_cone_rotation(double beta = 0.9, double alpha = kPi / 4.0) {
    const SurfacePatch cone = make_cone(alpha);
    return {"cone-rotation", cone, shifted_in_u(cone, beta, "cone@rotated")};
}

/// phibar = R phi for a proper rotation R about the origin.
inline IsometryPair make_pair_rigid(const Mat3& rotation, const SurfacePatch& source = make_cone()) {
    if (!is_rotation(rotation, 1e-10)) {
        throw BadParameter("rigid pair needs an orthogonal matrix with determinant +1");
    }
    return {"rigid", source, rotated(source, rotation, source.name + "@rigid")};
}

inline Mat3 default_rigid_rotation() {
    return Eigen::AngleAxisd(0.7, Vec3(1.0, 2.0, 2.0).normalized()).toRotationMatrix();
}

/// Negative control: the plane is not isometric to the sphere.
inline IsometryPair make_pair_plane_sphere() {
    const Interval u{-kPi, kPi};
    const Interval v{-1.0, 1.0};
    return {"plane-sphere", with_domain(make_plane(), u, v), with_domain(make_sphere(1.0), u, v)};
}

/// The cone flattened into the plane; geodesics become straight lines.
inline IsometryPair make_pair_cone_unroll(double alpha = kPi / 4.0) {
    return {"cone-unroll", make_cone(alpha), make_unrolled_cone(alpha)};
}

// ---------------------------------------------------------------- catalog

inline constexpr std::array<std::string_view, 6> kSurfaceNames = {"plane",    "cylinder", "cone",
                                                                  "helicoid", "catenoid", "sphere"};
inline constexpr std::array<std::string_view, 3> kCurveNames = {"circle", "helix", "cone-geodesic"};
inline constexpr std::array<std::string_view, 4> kPairNames = {"plane-cylinder", "helicoid-catenoid",
                                                               "cone-rotation", "rigid"};

inline std::optional<SurfacePatch> surface_by_name(std::string_view name) {
    if (name == "plane") return make_plane();
    if (name == "cylinder") return make_cylinder();
    if (name == "cone") return make_cone();
    if (name == "helicoid") return make_helicoid();
    if (name == "catenoid") return make_catenoid();
    if (name == "sphere") return make_sphere();
    return std::nullopt;
}

inline std::optional<CurveFixture> curve_by_name(std::string_view name) {
    if (name == "circle") return make_circle();
    if (name == "helix") return make_helix();
    if (name == "cone-geodesic") return make_cone_geodesic();
    return std::nullopt;
}

/// Accepts both "cone-rotation" and "pair:cone-rotation".
inline std::optional<IsometryPair> pair_by_name(std::string_view name) {
    if (name.starts_with("pair:")) name.remove_prefix(5);
    if (name == "plane-cylinder") return make_pair_plane_cylinder();
    if (name == "helicoid-catenoid") return make_pair_helicoid_catenoid();
    if (name == "cone-rotation") return make_pair_cone_rotation();
    if (name == "rigid") return make_pair_rigid(default_rigid_rotation());
    return std::nullopt;
}

} // namespace rectify::fixtures
