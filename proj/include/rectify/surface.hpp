#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "rectify/numerics.hpp"
#include "rectify/tolerances.hpp"

namespace rectify {

/// Position and first/second partials of a patch at one (u, v).
struct PatchJet {
    Vec3 p;
    Vec3 pu;
    Vec3 pv;
    Vec3 puu;
    Vec3 puv;
    Vec3 pvv;
};

/// A coordinate chart (u, v) -> phi(u, v). Analytic partials are optional;
/// missing ones fall back to finite differences of phi (or of the analytic
/// first partial, for mixed terms).
struct SurfacePatch {
    using Fn = std::function<Vec3(double, double)>;

    std::string name;
    Fn phi;
    Fn phi_u;
    Fn phi_v;
    Fn phi_uu;
    Fn phi_uv;
    Fn phi_vv;
    Interval u_domain;
    Interval v_domain;
    /// Documented direction of phi_u x phi_v.
    std::string orientation;
    /// Finite-difference base step; empty means the library default.
    std::optional<double> fd_step;

    bool has_analytic_partials() const { return phi_u && phi_v && phi_uu && phi_uv && phi_vv; }

    void check_domain(double u, double v) const {
        if (!u_domain.contains(u) || !v_domain.contains(v)) {
            throw DomainExceeded(name + ": (" + std::to_string(u) + ", " + std::to_string(v) +
                                 ") outside the patch domain");
        }
    }

    Vec3 position(double u, double v) const {
        check_domain(u, v);
        return phi(u, v);
    }

    Vec3 du(double u, double v) const {
        check_domain(u, v);
        return phi_u ? phi_u(u, v) : along_u(phi, u, v, 1);
    }

    Vec3 dv(double u, double v) const {
        check_domain(u, v);
        return phi_v ? phi_v(u, v) : along_v(phi, u, v, 1);
    }

    Vec3 duu(double u, double v) const {
        check_domain(u, v);
        if (phi_uu) return phi_uu(u, v);
        return phi_u ? along_u(phi_u, u, v, 1) : along_u(phi, u, v, 2);
    }

    Vec3 dvv(double u, double v) const {
        check_domain(u, v);
        if (phi_vv) return phi_vv(u, v);
        return phi_v ? along_v(phi_v, u, v, 1) : along_v(phi, u, v, 2);
    }

    Vec3 duv(double u, double v) const {
        check_domain(u, v);
        if (phi_uv) return phi_uv(u, v);
        if (phi_u) return along_v(phi_u, u, v, 1);
        return fd_mixed(phi, u, v, step_for(std::max(std::abs(u), std::abs(v)), 2));
    }

    PatchJet jet(double u, double v) const {
        return {position(u, v), du(u, v), dv(u, v), duu(u, v), duv(u, v), dvv(u, v)};
    }

private:
    double step_for(double x, int order) const {
        if (!fd_step) return default_step(x, order);
        // Same 1 : 10 : 100 ratio between orders as the library default.
        static constexpr double scale[] = {1.0, 10.0, 100.0};
        return *fd_step * scale[order - 1] * std::max(1.0, std::abs(x));
    }

    Vec3 along_u(const Fn& f, double u, double v, int order) const {
        return fd_derivative(Sampler<Vec3>{[&f, v](double x) { return f(x, v); }, {}}, u, order, step_for(u, order));
    }

    Vec3 along_v(const Fn& f, double u, double v, int order) const {
        return fd_derivative(Sampler<Vec3>{[&f, u](double y) { return f(u, y); }, {}}, v, order, step_for(v, order));
    }
};

/// Copy of the patch with every analytic partial dropped, so all partials come
/// from finite differences of phi. `step` overrides the base FD step.
inline SurfacePatch fd_backed(SurfacePatch p, std::optional<double> step = std::nullopt) {
    p.name += "[fd]";
    p.phi_u = p.phi_v = p.phi_uu = p.phi_uv = p.phi_vv = nullptr;
    p.fd_step = step;
    return p;
}

/// Coefficients of the first fundamental form, I = E du^2 + 2F du dv + G dv^2.
struct FirstFundamentalForm {
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;

    double det() const { return E * G - F * F; }

    /// I applied to the tangent vector phi_u du + phi_v dv.
    double apply(double du, double dv) const { return E * du * du + 2.0 * F * du * dv + G * dv * dv; }
};

inline FirstFundamentalForm fundamental_form_of(const Vec3& pu, const Vec3& pv) {
    return {pu.dot(pu), pu.dot(pv), pv.dot(pv)};
}

inline void require_regular(const FirstFundamentalForm& I, const std::string& where, const Tolerances& tol) {
    if (!(I.det() > tol.eps_reg)) {
        throw IrregularPoint(where + ": EG - F^2 = " + std::to_string(I.det()));
    }
}

inline FirstFundamentalForm first_fundamental_form(const SurfacePatch& p, double u, double v,
                                                   const Tolerances& tol = {}) {
    const FirstFundamentalForm I = fundamental_form_of(p.du(u, v), p.dv(u, v));
    require_regular(I, p.name + " at (" + std::to_string(u) + ", " + std::to_string(v) + ")", tol);
    return I;
}

/// phi_u x phi_v, optionally divided by sqrt(EG - F^2).
inline Vec3 surface_normal(const SurfacePatch& p, double u, double v, bool normalized, const Tolerances& tol = {}) {
    const Vec3 pu = p.du(u, v);
    const Vec3 pv = p.dv(u, v);
    const FirstFundamentalForm I = fundamental_form_of(pu, pv);
    require_regular(I, p.name + " at (" + std::to_string(u) + ", " + std::to_string(v) + ")", tol);
    const Vec3 n = pu.cross(pv);
    return normalized ? Vec3(n / std::sqrt(I.det())) : n;
}

} // namespace rectify
