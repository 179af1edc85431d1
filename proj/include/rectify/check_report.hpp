#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rectify/numerics.hpp"

namespace rectify {

struct NamedResidual {
    std::string name;
    double value = 0.0;
};

struct CheckSample {
    std::vector<double> coords;
    std::vector<NamedResidual> residuals;

    double max() const {
        double m = 0.0;
        for (const auto& r : residuals) {
            if (std::isnan(r.value)) return std::numeric_limits<double>::quiet_NaN();
            m = std::max(m, r.value);
        }
        return m;
    }
};

/// Residuals of one identity suite over a set of sample points.
/// After finalize(): verdict == (no error && max_residual <= tolerance).
struct CheckReport {
    std::string name;
    std::string fixture;
    std::vector<std::string> coordinate_names;
    std::vector<CheckSample> samples;
    double tolerance = 0.0;
    double max_residual = 0.0;
    bool verdict = false;
    std::optional<std::string> error;
    std::vector<std::pair<std::string, std::string>> notes;

    CheckReport() = default;
    CheckReport(std::string check_name, std::string fixture_name, std::vector<std::string> coords, double tol)
        : name(std::move(check_name)), fixture(std::move(fixture_name)), coordinate_names(std::move(coords)),
          tolerance(tol) {}

    void add(std::vector<double> coords, std::vector<NamedResidual> residuals) {
        samples.push_back({std::move(coords), std::move(residuals)});
    }

    void note(std::string key, std::string value) { notes.emplace_back(std::move(key), std::move(value)); }

    CheckReport& finalize() {
        max_residual = 0.0;
        bool nan = false;
        for (const auto& s : samples) {
            const double m = s.max();
            if (std::isnan(m)) nan = true;
            else max_residual = std::max(max_residual, m);
        }
        if (nan) max_residual = std::numeric_limits<double>::quiet_NaN();
        verdict = !error && !nan && max_residual <= tolerance;
        return *this;
    }

    /// Largest value of one named residual across samples (0 if absent).
    double max_of(std::string_view residual) const {
        double m = 0.0;
        for (const auto& s : samples) {
            for (const auto& r : s.residuals) {
                if (r.name == residual) m = std::max(m, r.value);
            }
        }
        return m;
    }

    std::optional<std::string> note_value(std::string_view key) const {
        for (const auto& [k, v] : notes) {
            if (k == key) return v;
        }
        return std::nullopt;
    }
};

/// Cell-centred nu x nv grid over a rectangle of the (u, v) plane.
struct ParameterGrid {
    std::vector<std::pair<double, double>> points;

    static ParameterGrid cell_centred(const Interval& u, const Interval& v, int nu, int nv) {
        if (nu < 1 || nv < 1) throw BadParameter("grid resolution must be positive");
        if (!std::isfinite(u.length()) || !std::isfinite(v.length())) {
            throw BadParameter("grid needs a bounded parameter rectangle");
        }
        ParameterGrid g;
        g.points.reserve(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
        for (int i = 0; i < nu; ++i) {
            for (int j = 0; j < nv; ++j) {
                g.points.emplace_back(u.lo + (i + 0.5) * u.length() / nu, v.lo + (j + 0.5) * v.length() / nv);
            }
        }
        return g;
    }

    static ParameterGrid single(double u, double v) { return {{{u, v}}}; }
};

} // namespace rectify
