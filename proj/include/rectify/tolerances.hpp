#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

namespace rectify {

/// Every threshold used by the checkers, with its default. Test code and the
/// CLI read these by name; nothing downstream hard-codes a tolerance.
struct Tolerances {
    double eps_speed = 1e-8;      // minimum |c'(t)| accepted by arc-length reparametrization
    double eps_curv = 1e-8;       // minimum |c''(s)| for a Frenet frame
    double eps_reg = 1e-10;       // minimum EG - F^2 for a regular point
    double unit_speed = 1e-7;     // | |gamma'| - 1 | accepted as unit speed
    double rectifying = 1e-6;     // max |gamma . n| for a rectifying verdict
    double frame = 1e-9;          // frame orthonormality / right-handedness
    double frenet = 1e-6;         // Frenet-Serret equation residuals
    double isometry = 1e-9;       // |E - Ebar| etc. on analytic patches
    double isometry_fd = 1e-6;    // same, on finite-difference backed patches
    double orthogonality = 1e-8;  // ||M^T M - I||_inf for the differential field
    double identity = 1e-6;       // cross-product / metric-dot identity residuals
    double normal_formula = 1e-6; // relative gap between normal-component routes
    double thm1 = 1e-8;           // ||gamma_bar - M gamma - RHS||
    double thm2 = 1e-8;           // |gamma . N - gamma_bar . N_bar|
    double note = 1e-7;           // |lambda_bar - lambda|, |mu_bar/k_bar - mu/k|
    double singular_frame = 1e-12; // |det| of the normalized source frame

    static constexpr auto fields() {
        using M = double Tolerances::*;
        return std::array<std::pair<std::string_view, M>, 16>{{
            {"eps_speed", &Tolerances::eps_speed},
            {"eps_curv", &Tolerances::eps_curv},
            {"eps_reg", &Tolerances::eps_reg},
            {"unit_speed", &Tolerances::unit_speed},
            {"rectifying", &Tolerances::rectifying},
            {"frame", &Tolerances::frame},
            {"frenet", &Tolerances::frenet},
            {"isometry", &Tolerances::isometry},
            {"isometry_fd", &Tolerances::isometry_fd},
            {"orthogonality", &Tolerances::orthogonality},
            {"identity", &Tolerances::identity},
            {"normal_formula", &Tolerances::normal_formula},
            {"thm1", &Tolerances::thm1},
            {"thm2", &Tolerances::thm2},
            {"note", &Tolerances::note},
            {"singular_frame", &Tolerances::singular_frame},
        }};
    }

    /// Returns false if `name` is not a known tolerance.
    bool set(std::string_view name, double value) {
        for (const auto& [key, member] : fields()) {
            if (key == name) {
                this->*member = value;
                return true;
            }
        }
        return false;
    }

    std::optional<double> get(std::string_view name) const {
        for (const auto& [key, member] : fields()) {
            if (key == name) return this->*member;
        }
        return std::nullopt;
    }
};

} // namespace rectify
