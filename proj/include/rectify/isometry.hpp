#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rectify/check_report.hpp"
#include "rectify/frenet.hpp"
#include "rectify/surface.hpp"
#include "rectify/surface_curve.hpp"

namespace rectify {

/// Two patches over a shared (u, v) domain with target = F o source pointwise.
/// Whether F is an isometry is checked by verify_isometry, never assumed.
struct IsometryPair {
    std::string name;
    SurfacePatch source;
    SurfacePatch target;

    ParameterGrid grid(int nu, int nv) const {
        return ParameterGrid::cell_centred(source.u_domain, source.v_domain, nu, nv);
    }
};

/// The pushforward F_* as a pointwise 3x3 matrix field: the unique linear map
/// sending (phi_u, phi_v, N) to (phibar_u, phibar_v, Nbar), N and Nbar unit
/// normals. Its u- and v-partials are taken by finite differences.
class DifferentialField {
public:
    explicit DifferentialField(IsometryPair pair, Tolerances tol = {}, std::optional<double> step = std::nullopt)
        : pair_(std::move(pair)), tol_(tol), step_(step) {}

    const IsometryPair& pair() const { return pair_; }

    Mat3 matrix(double u, double v) const {
        const Mat3 from = frame(pair_.source, u, v);
        const Mat3 to = frame(pair_.target, u, v);
        Mat3 unit_columns = from;
        unit_columns.col(0).normalize();
        unit_columns.col(1).normalize();
        if (!(std::abs(unit_columns.determinant()) > tol_.singular_frame)) {
            throw SingularFrame(pair_.source.name + ": tangent frame is numerically singular at (" +
                                std::to_string(u) + ", " + std::to_string(v) + ")");
        }
        if (to == from) return Mat3::Identity();
        return to * from.inverse();
    }

    Mat3 partial_u(double u, double v) const {
        const double h = fit_step(pair_.source.u_domain, u, 1, step_.value_or(default_step(u, 1)));
        return fd_derivative(Sampler<Mat3>{[this, v](double x) { return matrix(x, v); }, pair_.source.u_domain},
                             u, 1, h);
    }

    Mat3 partial_v(double u, double v) const {
        const double h = fit_step(pair_.source.v_domain, v, 1, step_.value_or(default_step(v, 1)));
        return fd_derivative(Sampler<Mat3>{[this, u](double y) { return matrix(u, y); }, pair_.source.v_domain},
                             v, 1, h);
    }

private:
    Mat3 frame(const SurfacePatch& p, double u, double v) const {
        Mat3 m;
        m.col(0) = p.du(u, v);
        m.col(1) = p.dv(u, v);
        m.col(2) = surface_normal(p, u, v, true, tol_);
        return m;
    }

    IsometryPair pair_;
    Tolerances tol_;
    std::optional<double> step_;
};

inline Mat3 differential_field(const IsometryPair& pair, double u, double v, const Tolerances& tol = {}) {
    return DifferentialField(pair, tol).matrix(u, v);
}

/// |E - Ebar|, |F - Fbar|, |G - Gbar| on each grid point.
inline CheckReport verify_isometry(const IsometryPair& pair, const ParameterGrid& grid, double tolerance,
                                   const Tolerances& tol = {}) {
    CheckReport report("isometry", pair.name, {"u", "v"}, tolerance);
    for (const auto& [u, v] : grid.points) {
        const FirstFundamentalForm a = first_fundamental_form(pair.source, u, v, tol);
        const FirstFundamentalForm b = first_fundamental_form(pair.target, u, v, tol);
        report.add({u, v}, {{"E", std::abs(a.E - b.E)}, {"F", std::abs(a.F - b.F)}, {"G", std::abs(a.G - b.G)}});
    }
    return report.finalize();
}

/// ||M^T M - I||_inf of the differential field on each grid point.
inline CheckReport field_orthogonality(const IsometryPair& pair, const ParameterGrid& grid, double tolerance,
                                       const Tolerances& tol = {}) {
    CheckReport report("differential_field_orthogonality", pair.name, {"u", "v"}, tolerance);
    const DifferentialField field(pair, tol);
    for (const auto& [u, v] : grid.points) {
        report.add({u, v}, {{"orthogonality", orthogonality_defect(field.matrix(u, v))}});
    }
    return report.finalize();
}

/// The six identities
///   F_*phi_a x (dF_*/dc) phi_b = phibar_a x phibar_cb - F_*(phi_a x phi_cb)
/// for (a; c, b) in {(u; u,u), (u; u,v), (u; v,v), (v; u,u), (v; u,v), (v; v,v)}.
/// They hold whenever F_* is a rotation and phibar_u = F_* phi_u, phibar_v = F_* phi_v.
inline CheckReport cross_product_identities(const DifferentialField& field, const ParameterGrid& grid,
                                            double tolerance) {
    const IsometryPair& pair = field.pair();
    CheckReport report("cross_product_identities", pair.name, {"u", "v"}, tolerance);
    for (const auto& [u, v] : grid.points) {
        const PatchJet s = pair.source.jet(u, v);
        const PatchJet t = pair.target.jet(u, v);
        const Mat3 M = field.matrix(u, v);
        const Mat3 Mu = field.partial_u(u, v);
        const Mat3 Mv = field.partial_v(u, v);
        const Vec3 Mpu = M * s.pu;
        const Vec3 Mpv = M * s.pv;
        const auto residual = [&](const Vec3& lhs, const Vec3& rhs) { return (lhs - rhs).norm(); };
        report.add({u, v},
                   {
                       {"u_uu", residual(Mpu.cross(Mu * s.pu), t.pu.cross(t.puu) - M * s.pu.cross(s.puu))},
                       {"u_uv", residual(Mpu.cross(Mu * s.pv), t.pu.cross(t.puv) - M * s.pu.cross(s.puv))},
                       {"u_vv", residual(Mpu.cross(Mv * s.pv), t.pu.cross(t.pvv) - M * s.pu.cross(s.pvv))},
                       {"v_uu", residual(Mpv.cross(Mu * s.pu), t.pv.cross(t.puu) - M * s.pv.cross(s.puu))},
                       {"v_uv", residual(Mpv.cross(Mu * s.pv), t.pv.cross(t.puv) - M * s.pv.cross(s.puv))},
                       {"v_vv", residual(Mpv.cross(Mv * s.pv), t.pv.cross(t.pvv) - M * s.pv.cross(s.pvv))},
                   });
    }
    return report.finalize();
}

/// Second partials of the image patch from the pushforward:
///   phibar_uu = (dF_*/du) phi_u + F_* phi_uu,   phibar_vv = (dF_*/dv) phi_v + F_* phi_vv,
///   phibar_uv = (dF_*/du) phi_v + F_* phi_uv = (dF_*/dv) phi_u + F_* phi_uv  (both routes checked).
inline CheckReport pushforward_identities(const DifferentialField& field, const ParameterGrid& grid,
                                          double tolerance) {
    const IsometryPair& pair = field.pair();
    CheckReport report("pushforward_identities", pair.name, {"u", "v"}, tolerance);
    for (const auto& [u, v] : grid.points) {
        const PatchJet s = pair.source.jet(u, v);
        const PatchJet t = pair.target.jet(u, v);
        const Mat3 M = field.matrix(u, v);
        const Mat3 Mu = field.partial_u(u, v);
        const Mat3 Mv = field.partial_v(u, v);
        report.add({u, v},
                   {
                       {"uu", (t.puu - (Mu * s.pu + M * s.puu)).norm()},
                       {"vv", (t.pvv - (Mv * s.pv + M * s.pvv)).norm()},
                       {"uv_via_u", (t.puv - (Mu * s.pv + M * s.puv)).norm()},
                       {"uv_via_v", (t.puv - (Mv * s.pu + M * s.puv)).norm()},
                   });
    }
    return report.finalize();
}

/// Dot products of second and first partials that a metric-preserving pair
/// must share: phi_uu.phi_u, phi_uv.phi_u, phi_uv.phi_v, phi_vv.phi_v,
/// phi_uu.phi_v, phi_vv.phi_u.
inline CheckReport metric_dot_identities(const IsometryPair& pair, const ParameterGrid& grid, double tolerance,
                                         const Tolerances& tol = {}) {
    CheckReport report("metric_dot_identities", pair.name, {"u", "v"}, tolerance);
    for (const auto& [u, v] : grid.points) {
        first_fundamental_form(pair.source, u, v, tol);
        first_fundamental_form(pair.target, u, v, tol);
        const PatchJet s = pair.source.jet(u, v);
        const PatchJet t = pair.target.jet(u, v);
        const auto gap = [](double a, double b) { return std::abs(a - b); };
        report.add({u, v},
                   {
                       {"uu.u", gap(t.puu.dot(t.pu), s.puu.dot(s.pu))},
                       {"uv.u", gap(t.puv.dot(t.pu), s.puv.dot(s.pu))},
                       {"uv.v", gap(t.puv.dot(t.pv), s.puv.dot(s.pv))},
                       {"vv.v", gap(t.pvv.dot(t.pv), s.pvv.dot(s.pv))},
                       {"uu.v", gap(t.puu.dot(t.pv), s.puu.dot(s.pv))},
                       {"vv.u", gap(t.pvv.dot(t.pu), s.pvv.dot(s.pu))},
                   });
    }
    return report.finalize();
}

/// What happened when the image curve itself was tested for rectifiability.
enum class TargetStatus { Rectifying, NotRectifying, VanishingCurvature };

constexpr std::string_view to_string(TargetStatus s) {
    switch (s) {
        case TargetStatus::Rectifying: return "rectifying";
        case TargetStatus::NotRectifying: return "not-rectifying";
        case TargetStatus::VanishingCurvature: return "degenerate:VanishingCurvature";
    }
    return "unknown";
}

struct Thm1Report {
    CheckReport condition; // residual of gammabar - F_* gamma against the cross-term sum
    TargetStatus target = TargetStatus::NotRectifying;
    double target_worst_residual = 0.0;

    /// The condition is only sufficient: a violation is condition-met with a
    /// non-rectifying image.
    bool consistent() const { return !condition.verdict || target == TargetStatus::Rectifying; }
};

namespace detail {

inline void require_host(const SurfaceCurveSpec& spec, const IsometryPair& pair) {
    if (spec.host.name != pair.source.name) {
        throw BadParameter("curve " + spec.name + " lives on " + spec.host.name + ", not on the source patch " +
                           pair.source.name + " of " + pair.name);
    }
}

inline void require_isometric_along(const IsometryPair& pair, const SurfaceCurveSpec& spec,
                                    std::span<const double> samples, const Tolerances& tol) {
    ParameterGrid along;
    for (double s : samples) {
        const CurveCoordinates c = spec.at(s);
        along.points.emplace_back(c.u, c.v);
    }
    const CheckReport r = verify_isometry(pair, along, tol.isometry_fd, tol);
    if (!r.verdict) {
        throw BadParameter(pair.name + " does not preserve the first fundamental form along " + spec.name +
                           " (max gap " + std::to_string(r.max_residual) + ")");
    }
}

inline RectifyingDecomposition require_rectifying(const ParamCurve& c, double s, const Tolerances& tol) {
    const RectifyingDecomposition d = rectifying_decomposition(c, s, tol);
    if (!(std::abs(d.normal_residual) <= tol.rectifying)) {
        throw NotRectifying(c.name + ": gamma . n = " + std::to_string(d.normal_residual) + " at s = " +
                            std::to_string(s));
    }
    return d;
}

} // namespace detail

/// Evaluates the sufficient condition
///   gammabar - F_* gamma = (mu/k) [ u'^3 (F_*phi_u x F_u phi_u) + 2u'^2v' (F_*phi_u x F_u phi_v)
///                                 + u'v'^2 (F_*phi_u x F_v phi_v) + u'^2v' (F_*phi_v x F_u phi_u)
///                                 + 2u'v'^2 (F_*phi_v x F_u phi_v) + v'^3 (F_*phi_v x F_v phi_v) ]
/// (F_u, F_v the partials of the field, F_* gamma a plain matrix-vector product)
/// on each sample, then tests the image curve for rectifiability.
inline Thm1Report thm1_condition(const IsometryPair& pair, const SurfaceCurveSpec& spec,
                                 std::span<const double> samples, double tolerance, const Tolerances& tol = {},
                                 std::optional<double> field_step = std::nullopt) {
    detail::require_host(spec, pair);
    detail::require_isometric_along(pair, spec, samples, tol);
    const ParamCurve gamma = compose_curve(spec, tol);
    const ParamCurve gamma_bar = compose_curve(retarget(spec, pair.target), tol);
    const DifferentialField field(pair, tol, field_step);

    Thm1Report out;
    out.condition = CheckReport("thm1_condition", pair.name + " / " + spec.name, {"s"}, tolerance);
    for (double s : samples) {
        detail::require_rectifying(gamma, s, tol);
        const FrenetFrame f = frenet_apparatus(gamma, s, tol);
        const Vec3 position = gamma.at(s);
        const double scale = position.dot(f.b) / f.k;

        const CurveCoordinates c = spec.at(s);
        const PatchJet src = pair.source.jet(c.u, c.v);
        const Mat3 M = field.matrix(c.u, c.v);
        const Mat3 Mu = field.partial_u(c.u, c.v);
        const Mat3 Mv = field.partial_v(c.u, c.v);
        const Vec3 Mpu = M * src.pu;
        const Vec3 Mpv = M * src.pv;
        const double u1 = c.du;
        const double v1 = c.dv;
        const Vec3 rhs = scale * (u1 * u1 * u1 * Mpu.cross(Mu * src.pu) + 2.0 * u1 * u1 * v1 * Mpu.cross(Mu * src.pv) +
                                  u1 * v1 * v1 * Mpu.cross(Mv * src.pv) + u1 * u1 * v1 * Mpv.cross(Mu * src.pu) +
                                  2.0 * u1 * v1 * v1 * Mpv.cross(Mu * src.pv) + v1 * v1 * v1 * Mpv.cross(Mv * src.pv));
        const Vec3 lhs = gamma_bar.at(s) - M * position;
        out.condition.add({s}, {{"condition", (lhs - rhs).norm()}});
    }
    out.condition.finalize();

    try {
        const RectifyingCheck image = rectifying_check(gamma_bar, samples, tol.rectifying, tol);
        out.target = image.verdict ? TargetStatus::Rectifying : TargetStatus::NotRectifying;
        out.target_worst_residual = image.worst_residual;
    } catch (const VanishingCurvature&) {
        out.target = TargetStatus::VanishingCurvature;
    }
    out.condition.note("target_status", std::string(to_string(out.target)));
    out.condition.note("theorem_consistent", out.consistent() ? "true" : "false");
    return out;
}

/// |gamma . N - gammabar . Nbar| per sample, with N = phi_u x phi_v or its unit
/// version. Both curves must be rectifying.
inline CheckReport thm2_invariance(const IsometryPair& pair, const SurfaceCurveSpec& spec,
                                   std::span<const double> samples, double tolerance, bool normalized,
                                   const Tolerances& tol = {}) {
    detail::require_host(spec, pair);
    const SurfaceCurveSpec image = retarget(spec, pair.target);
    const ParamCurve gamma = compose_curve(spec, tol);
    const ParamCurve gamma_bar = compose_curve(image, tol);
    CheckReport report("thm2_invariance", pair.name + " / " + spec.name, {"s"}, tolerance);
    report.note("normal", normalized ? "unit" : "unnormalized");
    for (double s : samples) {
        detail::require_rectifying(gamma, s, tol);
        detail::require_rectifying(gamma_bar, s, tol);
        const double a = normal_component_direct(spec, s, normalized, tol);
        const double b = normal_component_direct(image, s, normalized, tol);
        report.add({s}, {{"normal_component", std::abs(a - b)}});
    }
    return report.finalize();
}

/// |lambdabar - lambda| and |mubar/kbar - mu/k| per sample.
inline CheckReport note_mu_over_k(const IsometryPair& pair, const SurfaceCurveSpec& spec,
                                  std::span<const double> samples, double tolerance, const Tolerances& tol = {}) {
    detail::require_host(spec, pair);
    const ParamCurve gamma = compose_curve(spec, tol);
    const ParamCurve gamma_bar = compose_curve(retarget(spec, pair.target), tol);
    CheckReport report("note_lambda_mu_over_k", pair.name + " / " + spec.name, {"s"}, tolerance);
    for (double s : samples) {
        const RectifyingDecomposition a = detail::require_rectifying(gamma, s, tol);
        const RectifyingDecomposition b = detail::require_rectifying(gamma_bar, s, tol);
        const double k = frenet_apparatus(gamma, s, tol).k;
        const double k_bar = frenet_apparatus(gamma_bar, s, tol).k;
        report.add({s}, {{"lambda", std::abs(b.lambda - a.lambda)}, {"mu_over_k", std::abs(b.mu / k_bar - a.mu / k)}});
    }
    return report.finalize();
}

} // namespace rectify
