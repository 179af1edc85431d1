#pragma once

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rectify/rectify.hpp"

namespace rectify::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, unknown fixture names, incompatible selections.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::optional<std::string> curve;
    std::optional<std::string> pair;
    std::optional<std::string> surface;
    int samples = 200;
    int grid_u = 20;
    int grid_v = 20;
    Tolerances tolerances;
    std::vector<std::string> tolerance_overrides;
    std::optional<bool> normalized;
    std::optional<std::string> out_path;
    std::optional<std::string> emit_path;
    bool detail = false;
    bool timing = false;
};

struct ReportDocument {
    std::string command;
    Json config;
    std::vector<CheckReport> checks;

    bool verdict() const {
        for (const auto& c : checks) {
            if (!c.verdict) return false;
        }
        return true;
    }
};

// ---------------------------------------------------------------- parsing helpers

inline std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw UsageError("--grid expects <n>x<m>, got '" + text + "'");
    try {
        std::size_t used_n = 0;
        std::size_t used_m = 0;
        const int n = std::stoi(text.substr(0, x), &used_n);
        const int m = std::stoi(text.substr(x + 1), &used_m);
        if (used_n != x || used_m != text.size() - x - 1) throw std::invalid_argument("trailing");
        if (n < 2 || m < 2) throw UsageError("--grid resolutions must be at least 2");
        return {n, m};
    } catch (const std::logic_error&) {
        throw UsageError("--grid expects <n>x<m>, got '" + text + "'");
    }
}

inline void apply_tolerance(Tolerances& tol, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects <name>=<value>, got '" + assignment + "'");
    const std::string name = assignment.substr(0, eq);
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(assignment.substr(eq + 1), &used);
        if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
        throw UsageError("--tol value for '" + name + "' is not a number");
    }
    if (!(value > 0.0) || !std::isfinite(value)) throw UsageError("--tol " + name + " must be positive");
    if (!tol.set(name, value)) throw UsageError("unknown tolerance '" + name + "'");
}

inline fixtures::CurveFixture require_curve(const std::string& name) {
    auto c = fixtures::curve_by_name(name);
    if (!c) throw UsageError("unknown curve '" + name + "'");
    return *c;
}

inline IsometryPair require_pair(const std::string& name) {
    auto p = fixtures::pair_by_name(name);
    if (!p) throw UsageError("unknown pair '" + name + "'");
    return *p;
}

inline SurfacePatch require_surface(const std::string& name) {
    auto s = fixtures::surface_by_name(name);
    if (!s) throw UsageError("unknown surface '" + name + "'");
    return *s;
}

// ---------------------------------------------------------------- check runners

/// Runs `body`; a geometry error becomes a failed report carrying the message.
inline CheckReport guarded(const std::string& name, const std::string& fixture, double tolerance,
                           const std::function<CheckReport()>& body) {
    try {
        return body();
    } catch (const GeometryError& e) {
        CheckReport r(name, fixture, {}, tolerance);
        r.error = e.what();
        return r.finalize();
    }
}

inline std::vector<CheckReport> run_frenet(const fixtures::CurveFixture& f, const RunConfig& cfg) {
    const auto& tol = cfg.tolerances;
    const auto samples = centred_samples(f.curve.domain, cfg.samples);
    CheckReport frame = guarded("frame_orthonormality", f.name, tol.frame, [&] {
        CheckReport r("frame_orthonormality", f.name, {"s"}, tol.frame);
        for (double s : samples) r.add({s}, {{"defect", frame_defect(frenet_apparatus(f.curve, s, tol))}});
        return r.finalize();
    });
    CheckReport equations = guarded("frenet_serret", f.name, tol.frenet, [&] {
        CheckReport r("frenet_serret", f.name, {"s"}, tol.frenet);
        for (double s : samples) {
            const FrenetResiduals fr = frenet_residuals(f.curve, s, tol);
            r.add({s}, {{"t", fr.r_t}, {"n", fr.r_n}, {"b", fr.r_b}});
        }
        return r.finalize();
    });
    return {frame, equations};
}

inline CheckReport run_rectify(const fixtures::CurveFixture& f, const RunConfig& cfg) {
    const auto& tol = cfg.tolerances;
    return guarded("rectifying", f.name, tol.rectifying, [&] {
        const auto samples = centred_samples(f.curve.domain, cfg.samples);
        const RectifyingCheck check = rectifying_check(f.curve, samples, tol.rectifying, tol);
        CheckReport r("rectifying", f.name, {"s"}, tol.rectifying);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            r.add({samples[i]}, {{"gamma_dot_n", std::abs(check.decomposition[i].normal_residual)}});
        }
        return r.finalize();
    });
}

inline CheckReport run_fff(const SurfacePatch& patch, const RunConfig& cfg) {
    const auto& tol = cfg.tolerances;
    return guarded("fff_consistency", patch.name, tol.isometry_fd, [&] {
        const SurfacePatch numeric = fd_backed(patch);
        const auto grid = ParameterGrid::cell_centred(patch.u_domain, patch.v_domain, cfg.grid_u, cfg.grid_v);
        CheckReport r("fff_consistency", patch.name, {"u", "v"}, tol.isometry_fd);
        for (const auto& [u, v] : grid.points) {
            const FirstFundamentalForm a = first_fundamental_form(patch, u, v, tol);
            const FirstFundamentalForm b = first_fundamental_form(numeric, u, v, tol);
            const Vec3 n = surface_normal(patch, u, v, false, tol);
            r.add({u, v}, {{"E", std::abs(a.E - b.E)},
                           {"F", std::abs(a.F - b.F)},
                           {"G", std::abs(a.G - b.G)},
                           {"lagrange", std::abs(n.squaredNorm() - a.det()) / std::max(1.0, a.det())}});
        }
        return r.finalize();
    });
}

inline CheckReport run_normal_component(const fixtures::CurveFixture& f, const RunConfig& cfg) {
    const auto& tol = cfg.tolerances;
    return guarded("normal_component", f.name, tol.normal_formula, [&] {
        const auto samples = centred_samples(f.spec.domain, cfg.samples);
        CheckReport r("normal_component", f.name, {"s"}, tol.normal_formula);
        for (double s : samples) {
            const double direct = normal_component_direct(f.spec, s, false, tol);
            const double formula = normal_component_formula(f.spec, s, mu_over_k(f.spec, s, tol), tol);
            r.add({s}, {{"relative_gap", std::abs(formula - direct) / std::max(1.0, std::abs(direct))}});
        }
        return r.finalize();
    });
}

inline std::vector<CheckReport> run_isometry(const IsometryPair& pair, const RunConfig& cfg) {
    const auto& tol = cfg.tolerances;
    const auto grid = pair.grid(cfg.grid_u, cfg.grid_v);
    const double metric_tol = pair.source.has_analytic_partials() && pair.target.has_analytic_partials()
                                  ? tol.isometry
                                  : tol.isometry_fd;
    return {
        guarded("isometry", pair.name, metric_tol, [&] { return verify_isometry(pair, grid, metric_tol, tol); }),
        guarded("differential_field_orthogonality", pair.name, tol.orthogonality,
                [&] { return field_orthogonality(pair, grid, tol.orthogonality, tol); }),
    };
}

inline std::vector<CheckReport> run_identities(const IsometryPair& pair, const RunConfig& cfg) {
    const auto& tol = cfg.tolerances;
    const auto grid = pair.grid(cfg.grid_u, cfg.grid_v);
    const DifferentialField field(pair, tol);
    return {
        guarded("cross_product_identities", pair.name, tol.identity,
                [&] { return cross_product_identities(field, grid, tol.identity); }),
        guarded("pushforward_identities", pair.name, tol.identity,
                [&] { return pushforward_identities(field, grid, tol.identity); }),
        guarded("metric_dot_identities", pair.name, tol.identity,
                [&] { return metric_dot_identities(pair, grid, tol.identity, tol); }),
    };
}

inline CheckReport run_thm1(const IsometryPair& pair, const fixtures::CurveFixture& f, const RunConfig& cfg) {
    const auto& tol = cfg.tolerances;
    const std::string fixture = pair.name + " / " + f.name;
    return guarded("thm1_condition", fixture, tol.thm1, [&] {
        const auto samples = centred_samples(f.spec.domain, cfg.samples);
        return thm1_condition(pair, f.spec, samples, tol.thm1, tol).condition;
    });
}

inline CheckReport run_thm2(const IsometryPair& pair, const fixtures::CurveFixture& f, bool normalized,
                            const RunConfig& cfg) {
    const auto& tol = cfg.tolerances;
    const std::string label = normalized ? "thm2_invariance[unit]" : "thm2_invariance[unnormalized]";
    return guarded(label, pair.name + " / " + f.name, tol.thm2, [&] {
        const auto samples = centred_samples(f.spec.domain, cfg.samples);
        return thm2_invariance(pair, f.spec, samples, tol.thm2, normalized, tol);
    });
}

inline CheckReport run_note(const IsometryPair& pair, const fixtures::CurveFixture& f, const RunConfig& cfg) {
    const auto& tol = cfg.tolerances;
    return guarded("note_lambda_mu_over_k", pair.name + " / " + f.name, tol.note, [&] {
        const auto samples = centred_samples(f.spec.domain, cfg.samples);
        return note_mu_over_k(pair, f.spec, samples, tol.note, tol);
    });
}

// ---------------------------------------------------------------- samples CSV

inline std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

/// One row per sample: s,x,y,z,k,tau,lambda,mu,gamma_dot_n,gamma_dot_N.
inline void emit_samples(const fixtures::CurveFixture& f, int count, bool normalized, const std::string& path,
                         const Tolerances& tol = {}) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open '" + path + "' for writing");
    out << "s,x,y,z,k,tau,lambda,mu,gamma_dot_n,gamma_dot_N\n";
    for (double s : centred_samples(f.curve.domain, count)) {
        const FrenetFrame fr = frenet_apparatus(f.curve, s, tol);
        const Vec3 p = f.curve.at(s);
        const double big_n = normal_component_direct(f.spec, s, normalized, tol);
        const double row[] = {s, p.x(), p.y(), p.z(), fr.k, fr.tau, p.dot(fr.t), p.dot(fr.b), p.dot(fr.n), big_n};
        for (std::size_t i = 0; i < std::size(row); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
    if (!out) throw IoFailure("write to '" + path + "' failed");
}

// ---------------------------------------------------------------- JSON report

inline Json residual_object(const CheckSample& sample) {
    Json r = Json::object();
    for (const auto& res : sample.residuals) r[res.name] = res.value;
    return r;
}

inline Json to_json(const CheckReport& r, bool detail) {
    Json j;
    j["name"] = r.name;
    j["fixture"] = r.fixture;
    j["tolerance"] = r.tolerance;
    j["max_residual"] = r.max_residual;
    j["verdict"] = r.verdict;
    j["sample_count"] = r.samples.size();
    if (!r.samples.empty()) {
        Json per_name = Json::object();
        for (const auto& res : r.samples.front().residuals) per_name[res.name] = r.max_of(res.name);
        j["residual_max"] = per_name;
        const auto worst = std::max_element(r.samples.begin(), r.samples.end(),
                                            [](const CheckSample& a, const CheckSample& b) { return a.max() < b.max(); });
        Json at = Json::object();
        for (std::size_t i = 0; i < r.coordinate_names.size() && i < worst->coords.size(); ++i) {
            at[r.coordinate_names[i]] = worst->coords[i];
        }
        j["worst_sample"] = at;
    }
    if (!r.notes.empty()) {
        Json notes = Json::object();
        for (const auto& [k, v] : r.notes) notes[k] = v;
        j["notes"] = notes;
    }
    if (r.error) j["error"] = *r.error;
    if (detail) {
        Json rows = Json::array();
        for (const auto& s : r.samples) {
            Json row;
            for (std::size_t i = 0; i < r.coordinate_names.size() && i < s.coords.size(); ++i) {
                row[r.coordinate_names[i]] = s.coords[i];
            }
            row["residuals"] = residual_object(s);
            rows.push_back(row);
        }
        j["samples"] = rows;
    }
    return j;
}

inline Json config_json(const RunConfig& cfg) {
    Json c;
    c["curve"] = cfg.curve ? Json(*cfg.curve) : Json(nullptr);
    c["pair"] = cfg.pair ? Json(*cfg.pair) : Json(nullptr);
    c["surface"] = cfg.surface ? Json(*cfg.surface) : Json(nullptr);
    c["samples"] = cfg.samples;
    c["grid"] = Json::array({cfg.grid_u, cfg.grid_v});
    c["normalized"] = cfg.normalized ? Json(*cfg.normalized) : Json(nullptr);
    Json tol = Json::object();
    for (const auto& [name, member] : Tolerances::fields()) tol[std::string(name)] = cfg.tolerances.*member;
    c["tolerances"] = tol;
    return c;
}

inline Json to_json(const ReportDocument& doc, bool detail, std::optional<double> duration_ms) {
    Json j;
    j["schema"] = 1;
    j["command"] = doc.command;
    j["config"] = doc.config;
    Json checks = Json::array();
    for (const auto& c : doc.checks) checks.push_back(to_json(c, detail));
    j["checks"] = checks;
    j["verdict"] = doc.verdict();
    if (duration_ms) j["duration_ms"] = *duration_ms;
    return j;
}

// ---------------------------------------------------------------- selection

inline std::vector<fixtures::CurveFixture> selected_curves(const RunConfig& cfg, bool rectifying_only) {
    if (cfg.curve) return {require_curve(*cfg.curve)};
    std::vector<fixtures::CurveFixture> out;
    for (auto name : fixtures::kCurveNames) {
        auto c = require_curve(std::string(name));
        if (!rectifying_only || c.rectifying) out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<IsometryPair> selected_pairs(const RunConfig& cfg) {
    if (cfg.pair) return {require_pair(*cfg.pair)};
    std::vector<IsometryPair> out;
    for (auto name : fixtures::kPairNames) out.push_back(require_pair(std::string(name)));
    return out;
}

inline std::vector<SurfacePatch> selected_surfaces(const RunConfig& cfg) {
    if (cfg.surface) return {require_surface(*cfg.surface)};
    std::vector<SurfacePatch> out;
    for (auto name : fixtures::kSurfaceNames) out.push_back(require_surface(std::string(name)));
    return out;
}

/// (pair, curve) combinations where the curve lives on the pair's source patch.
/// An explicit incompatible selection is a usage error.
inline std::vector<std::pair<IsometryPair, fixtures::CurveFixture>> theorem_cases(const RunConfig& cfg) {
    std::vector<std::pair<IsometryPair, fixtures::CurveFixture>> out;
    for (auto& pair : selected_pairs(cfg)) {
        for (auto& curve : selected_curves(cfg, !cfg.curve)) {
            if (curve.spec.host.name == pair.source.name) out.emplace_back(pair, curve);
        }
    }
    if (out.empty()) {
        throw UsageError("no curve in the selection lives on the source patch of the selected pair");
    }
    return out;
}

inline std::vector<bool> normal_flags(const RunConfig& cfg) {
    if (cfg.normalized) return {*cfg.normalized};
    return {false, true};
}

inline void append(std::vector<CheckReport>& dst, std::vector<CheckReport> src) {
    for (auto& r : src) dst.push_back(std::move(r));
}

inline std::vector<CheckReport> execute(const RunConfig& cfg) {
    std::vector<CheckReport> checks;
    const std::string& cmd = cfg.command;
    if (cmd == "frenet") {
        for (const auto& c : selected_curves(cfg, false)) append(checks, run_frenet(c, cfg));
    } else if (cmd == "rectify") {
        for (const auto& c : selected_curves(cfg, true)) checks.push_back(run_rectify(c, cfg));
    } else if (cmd == "fff") {
        for (const auto& s : selected_surfaces(cfg)) checks.push_back(run_fff(s, cfg));
    } else if (cmd == "normal-component") {
        for (const auto& c : selected_curves(cfg, true)) checks.push_back(run_normal_component(c, cfg));
    } else if (cmd == "isometry") {
        for (const auto& p : selected_pairs(cfg)) append(checks, run_isometry(p, cfg));
    } else if (cmd == "identities") {
        for (const auto& p : selected_pairs(cfg)) append(checks, run_identities(p, cfg));
    } else if (cmd == "thm1") {
        for (const auto& [p, c] : theorem_cases(cfg)) checks.push_back(run_thm1(p, c, cfg));
    } else if (cmd == "thm2") {
        for (const auto& [p, c] : theorem_cases(cfg)) {
            for (bool flag : normal_flags(cfg)) checks.push_back(run_thm2(p, c, flag, cfg));
        }
    } else if (cmd == "note") {
        for (const auto& [p, c] : theorem_cases(cfg)) checks.push_back(run_note(p, c, cfg));
    } else if (cmd == "emit") {
        if (!cfg.curve) throw UsageError("emit needs --curve");
        if (!cfg.emit_path) throw UsageError("emit needs --emit <path>");
    } else if (cmd == "all") {
        for (const char* sub : {"frenet", "rectify", "fff", "normal-component", "isometry", "identities", "thm1",
                                "thm2", "note"}) {
            RunConfig part = cfg;
            part.command = sub;
            part.curve.reset();
            part.pair.reset();
            part.surface.reset();
            append(checks, execute(part));
        }
    } else {
        throw UsageError("unknown command '" + cmd + "'");
    }
    return checks;
}

// ---------------------------------------------------------------- entry point

inline void add_common_flags(CLI::App& sub, RunConfig& cfg, std::string& grid, std::string& normalized) {
    sub.add_option("--curve", cfg.curve, "curve fixture: circle, helix, cone-geodesic");
    sub.add_option("--pair", cfg.pair, "isometry pair: plane-cylinder, helicoid-catenoid, cone-rotation, rigid");
    sub.add_option("--surface", cfg.surface, "surface fixture: plane, cylinder, cone, helicoid, catenoid, sphere");
    sub.add_option("--samples", cfg.samples, "samples along a curve")->check(CLI::Range(2, 1000000));
    sub.add_option("--grid", grid, "parameter grid <n>x<m>");
    sub.add_option("--tol", cfg.tolerance_overrides, "tolerance override <name>=<value> (repeatable)");
    sub.add_option("--normalized", normalized, "normal convention: true (unit) or false (phi_u x phi_v)");
    sub.add_option("--out", cfg.out_path, "write the JSON report here instead of stdout");
    sub.add_option("--emit", cfg.emit_path, "write per-sample CSV for the selected curve");
    sub.add_flag("--detail", cfg.detail, "include every sample in the report");
    sub.add_flag("--timing", cfg.timing, "add wall-clock duration to the report (breaks byte determinism)");
}

/// Runs one CLI invocation. Exit codes: 0 all checks pass, 1 a check failed,
/// 2 usage or input error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"Numerical checks for rectifying curves on parametric surfaces and their isometries"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string grid;
    std::string normalized;
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"frenet", "Frenet frame orthonormality and Frenet-Serret residuals"},
        {"rectify", "rectifying-curve detection (gamma . n = 0)"},
        {"fff", "first fundamental form against finite differences"},
        {"normal-component", "gamma . N directly versus the rectifying expansion"},
        {"isometry", "E, F, G agreement and orthogonality of the differential field"},
        {"identities", "cross-product, pushforward and metric-dot identities"},
        {"thm1", "sufficient condition for the image curve to be rectifying"},
        {"thm2", "invariance of the normal component under the isometry"},
        {"note", "invariance of lambda and mu / k"},
        {"emit", "write per-sample CSV for a curve"},
        {"all", "every check over the whole fixture catalog"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common_flags(*sub, cfg, grid, normalized);
        sub->callback([&cfg, n = std::string(name)] { cfg.command = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::vector<CheckReport> checks;
    try {
        if (!grid.empty()) std::tie(cfg.grid_u, cfg.grid_v) = parse_grid(grid);
        for (const auto& t : cfg.tolerance_overrides) apply_tolerance(cfg.tolerances, t);
        if (!normalized.empty()) {
            if (normalized == "true") cfg.normalized = true;
            else if (normalized == "false") cfg.normalized = false;
            else throw UsageError("--normalized expects true or false");
        }
        if (cfg.emit_path && !cfg.curve) throw UsageError("--emit needs --curve");
        checks = execute(cfg);
        if (cfg.emit_path) {
            emit_samples(require_curve(*cfg.curve), cfg.samples, cfg.normalized.value_or(false), *cfg.emit_path,
                         cfg.tolerances);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    ReportDocument doc{cfg.command, config_json(cfg), std::move(checks)};
    std::optional<double> duration;
    if (cfg.timing) {
        duration = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    const std::string text = to_json(doc, cfg.detail, duration).dump(2) + "\n";
    if (cfg.out_path) {
        std::ofstream file(*cfg.out_path, std::ios::binary | std::ios::trunc);
        if (!file || !(file << text)) {
            err << "error: cannot write report to '" << *cfg.out_path << "'\n";
            return kExitUsage;
        }
    } else {
        out << text;
    }
    for (const auto& c : doc.checks) {
        err << (c.verdict ? "PASS " : "FAIL ") << c.name << " [" << c.fixture << "] max=" << c.max_residual
            << " tol=" << c.tolerance;
        if (c.error) err << " error=" << *c.error;
        err << "\n";
    }
    return doc.verdict() ? kExitPass : kExitCheckFailed;
}

} // namespace rectify::cli
