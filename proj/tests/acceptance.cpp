// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails. Usage: acceptance <path-to-rectify_cli>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rectify/rectify.hpp"

using namespace rectify;
namespace fx = rectify::fixtures;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome frenet_suite() {
    Outcome o;
    const auto t0 = Clock::now();
    double frame = 0.0;
    double equations = 0.0;
    for (const auto& f : {fx::make_circle(), fx::make_helix(), fx::make_cone_geodesic()}) {
        for (double s : centred_samples(f.curve.domain, 200)) {
            frame = std::max(frame, frame_defect(frenet_apparatus(f.curve, s)));
            equations = std::max(equations, frenet_residuals(f.curve, s).max());
        }
    }
    const double elapsed = seconds_since(t0);
    o.detail << "frame=" << frame << " frenet=" << equations << " time=" << elapsed << "s";
    o.require(frame <= 1e-9, "frame orthonormality <= 1e-9");
    o.require(equations <= 1e-6, "Frenet-Serret residual <= 1e-6");
    o.require(elapsed < 1.0, "runtime < 1 s");
    return o;
}

Outcome rectifying_detection() {
    Outcome o;
    const auto geo = fx::make_cone_geodesic(fx::kPi / 4, 1.0);
    const RectifyingCheck g = rectifying_check(geo.curve, centred_samples(geo.curve.domain, 200), 1e-6);

    const auto circle = fx::make_circle(2.0);
    double circle_gap = 0.0;
    for (const auto& d : rectifying_check(circle.curve, centred_samples(circle.curve.domain, 200), 1e-6).decomposition) {
        circle_gap = std::max(circle_gap, std::abs(d.normal_residual + 2.0));
    }
    const auto helix = fx::make_helix();
    double helix_gap = 0.0;
    for (const auto& d : rectifying_check(helix.curve, centred_samples(helix.curve.domain, 200), 1e-6).decomposition) {
        helix_gap = std::max(helix_gap, std::abs(d.normal_residual + 1.0));
    }
    o.detail << "cone-geodesic max|g.n|=" << g.worst_residual << " circle |g.n+2|=" << circle_gap
             << " helix |g.n+1|=" << helix_gap;
    o.require(g.verdict && g.worst_residual <= 1e-6, "cone geodesic rectifying");
    o.require(circle_gap <= 1e-9, "circle g.n = -2");
    o.require(helix_gap <= 1e-8, "helix g.n = -1");
    return o;
}

Outcome normal_component_expansion() {
    Outcome o;
    const auto geo = fx::make_cone_geodesic();
    double worst = 0.0;
    for (double s : centred_samples(geo.spec.domain, 200)) {
        const double direct = normal_component_direct(geo.spec, s, false);
        const double formula = normal_component_formula(geo.spec, s, mu_over_k(geo.spec, s));
        worst = std::max(worst, std::abs(formula - direct) / std::max(1.0, std::abs(direct)));
    }
    // On the plane every second partial vanishes, so the bracket must equal
    // u'v'' - u''v' bit for bit, and (mu/k) times it must match gamma . N.
    const auto circle = fx::make_circle(2.0);
    bool exact = true;
    double plane_gap = 0.0;
    for (double s : centred_samples(circle.spec.domain, 200)) {
        const CurveCoordinates c = circle.spec.at(s);
        const double bracket = normal_component_bracket(circle.spec, s);
        exact = exact && bracket == c.du * c.ddv - c.ddu * c.dv;
        plane_gap = std::max(plane_gap, std::abs(mu_over_k(circle.spec, s) * bracket -
                                                  normal_component_direct(circle.spec, s, false)));
    }
    o.detail << "cone-geodesic relative gap=" << worst << " plane reduction exact=" << (exact ? "yes" : "no")
             << " plane gap=" << plane_gap;
    o.require(worst <= 1e-6, "relative gap <= 1e-6");
    o.require(exact, "plane bracket reduces exactly");
    o.require(plane_gap <= 1e-12, "plane expansion matches gamma . N");
    return o;
}

IsometryPair fd_pair(const IsometryPair& p) { return {p.name + "[fd]", fd_backed(p.source), fd_backed(p.target)}; }

Outcome isometry_suites() {
    Outcome o;
    for (const auto& pair : {fx::make_pair_plane_cylinder(), fx::make_pair_helicoid_catenoid()}) {
        const CheckReport a = verify_isometry(pair, pair.grid(20, 20), 1e-9);
        const auto numeric = fd_pair(pair);
        const CheckReport b = verify_isometry(numeric, numeric.grid(20, 20), 1e-6);
        o.detail << pair.name << " analytic=" << a.max_residual << " fd=" << b.max_residual << "; ";
        o.require(a.verdict, pair.name + " analytic <= 1e-9");
        o.require(b.verdict, pair.name + " FD-backed <= 1e-6");
    }
    const auto sphere = fx::make_pair_plane_sphere();
    const CheckReport s = verify_isometry(sphere, sphere.grid(20, 20), 1e-9);
    o.detail << "plane-sphere max=" << s.max_residual;
    o.require(!s.verdict && s.max_residual > 1e-3, "plane-sphere fails with a residual > 1e-3");
    return o;
}

Outcome identity_suites() {
    Outcome o;
    for (const auto& pair : {fx::make_pair_plane_cylinder(), fx::make_pair_helicoid_catenoid()}) {
        const auto grid = pair.grid(20, 20);
        const CheckReport cross = cross_product_identities(DifferentialField(pair), grid, 1e-6);
        const CheckReport dots = metric_dot_identities(pair, grid, 1e-6);
        o.detail << pair.name << " cross=" << cross.max_residual << " metric-dot=" << dots.max_residual << "; ";
        o.require(cross.verdict && cross.samples.front().residuals.size() == 6, pair.name + " cross-product <= 1e-6");
        o.require(dots.verdict && dots.samples.front().residuals.size() == 6, pair.name + " metric-dot <= 1e-6");
    }
    // Convergence: halve the FD step and watch the truncation error shrink.
    for (const auto& pair : {fx::make_pair_plane_cylinder(), fx::make_pair_helicoid_catenoid()}) {
        const auto grid = pair.grid(20, 20);
        const auto cross_at = [&](double h) {
            return cross_product_identities(DifferentialField(pair, {}, h), grid, 1.0).max_residual;
        };
        const auto push_at = [&](double h) {
            return pushforward_identities(DifferentialField(pair, {}, h), grid, 1.0).max_residual;
        };
        const auto dots_at = [&](double h) {
            const IsometryPair p{pair.name, fd_backed(pair.source, h), fd_backed(pair.target, h)};
            return metric_dot_identities(p, grid, 1.0).max_residual;
        };
        const double cross_ratio = cross_at(0.1) / cross_at(0.05);
        const double push_ratio = push_at(0.1) / push_at(0.05);
        const double dots_coarse = dots_at(0.05), dots_fine = dots_at(0.025);
        o.detail << pair.name << " halving ratios: cross=" << cross_ratio << " pushforward=" << push_ratio
                 << " fd metric-dot=" << dots_coarse << "," << dots_fine << " (truncation cancels); ";
        o.require(cross_ratio >= 3.0, pair.name + " cross-product residual drops >= 3x");
        o.require(push_ratio >= 3.0, pair.name + " pushforward residual drops >= 3x");
        o.require(dots_coarse <= 1e-6 && dots_fine <= 1e-6, pair.name + " fd metric-dot stays <= 1e-6");
    }
    // Metric-dot convergence on a bending whose FD errors do not cancel: plane onto a catenary cylinder.
    SurfacePatch roll;
    roll.name = "catenary-cylinder";
    roll.phi = [](double u, double v) { return Vec3(std::asinh(u), std::sqrt(1.0 + u * u), v); };
    roll.u_domain = {-1.0, 1.0};
    roll.v_domain = {-1.0, 1.0};
    const IsometryPair rolled{"plane-catenary", fx::with_domain(fx::make_plane(), roll.u_domain, roll.v_domain), roll};
    const auto rgrid = rolled.grid(8, 8);
    const auto rolled_at = [&](double h) {
        const IsometryPair p{rolled.name, fd_backed(rolled.source, h), fd_backed(rolled.target, h)};
        return metric_dot_identities(p, rgrid, 1.0).max_residual;
    };
    const double rolled_ratio = rolled_at(0.01) / rolled_at(0.005);
    o.detail << "plane-catenary fd metric-dot ratio=" << rolled_ratio;
    o.require(rolled_ratio >= 3.0, "plane-catenary metric-dot residual drops >= 3x");
    return o;
}

Outcome theorem_one() {
    Outcome o;
    const auto geo = fx::make_cone_geodesic();
    const auto samples = centred_samples(geo.spec.domain, 100);
    const Thm1Report rot = thm1_condition(fx::make_pair_cone_rotation(), geo.spec, samples, 1e-8);
    const ParamCurve image = compose_curve(retarget(geo.spec, fx::make_pair_cone_rotation().target));
    const RectifyingCheck image_check = rectifying_check(image, samples, 1e-6);
    const Thm1Report unroll = thm1_condition(fx::make_pair_cone_unroll(), geo.spec, samples, 1e-8);
    o.detail << "cone-rotation residual=" << rot.condition.max_residual
             << " image worst |g.n|=" << image_check.worst_residual
             << " cone-unroll target=" << to_string(unroll.target);
    o.require(rot.condition.verdict, "condition residual <= 1e-8");
    o.require(image_check.verdict && rot.target == TargetStatus::Rectifying, "image passes rectifying_check");
    o.require(unroll.target == TargetStatus::VanishingCurvature, "unrolled case reports VanishingCurvature");
    return o;
}

Outcome theorem_two_and_note() {
    Outcome o;
    const auto geo = fx::make_cone_geodesic();
    const auto samples = centred_samples(geo.spec.domain, 100);
    const auto rotation = fx::make_pair_cone_rotation();
    const auto rigid = fx::make_pair_rigid(fx::default_rigid_rotation());
    for (bool normalized : {false, true}) {
        const CheckReport a = thm2_invariance(rotation, geo.spec, samples, 1e-8, normalized);
        const CheckReport b = thm2_invariance(rigid, geo.spec, samples, 1e-10, normalized);
        o.detail << (normalized ? "unit" : "unnormalized") << ": rotation=" << a.max_residual
                 << " rigid=" << b.max_residual << "; ";
        o.require(a.verdict, "cone-rotation |g.N - gbar.Nbar| <= 1e-8");
        o.require(b.verdict, "rigid |g.N - gbar.Nbar| <= 1e-10");
    }
    const CheckReport note_rot = note_mu_over_k(rotation, geo.spec, samples, 1e-7);
    const CheckReport note_rigid = note_mu_over_k(rigid, geo.spec, samples, 1e-10);
    o.detail << "note rotation lambda=" << note_rot.max_of("lambda") << " mu/k=" << note_rot.max_of("mu_over_k")
             << " rigid=" << note_rigid.max_residual;
    o.require(note_rot.verdict, "cone-rotation lambda and mu/k <= 1e-7");
    o.require(note_rigid.verdict, "rigid lambda and mu/k <= 1e-10");
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome full_cli(const std::string& cli) {
    Outcome o;
    if (cli.empty() || !fs::exists(cli)) {
        o.require(false, "CLI binary path not supplied");
        return o;
    }
    const fs::path dir = fs::temp_directory_path() / "rectify_acceptance";
    fs::create_directories(dir);
    std::vector<std::string> reports;
    double slowest = 0.0;
    int worst_code = 0;
    for (int run = 0; run < 2; ++run) {
        const fs::path out = dir / ("all_" + std::to_string(run) + ".json");
        const std::string cmd = "\"" + cli + "\" all --out \"" + out.string() + "\" 2>/dev/null";
        const auto t0 = Clock::now();
        const int status = std::system(cmd.c_str());
        slowest = std::max(slowest, seconds_since(t0));
        worst_code = std::max(worst_code, status);
        reports.push_back(slurp(out));
    }
    o.detail << "time=" << slowest << "s status=" << worst_code << " bytes=" << reports[0].size();
    o.require(worst_code == 0, "exit 0");
    o.require(slowest < 10.0, "runtime < 10 s");
    o.require(!reports[0].empty() && reports[0] == reports[1], "byte-identical reports");
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 Frenet suite", frenet_suite},
        {"2 Rectifying detection", rectifying_detection},
        {"3 Normal-component expansion", normal_component_expansion},
        {"4 Isometry suites", isometry_suites},
        {"5 Identity suites", identity_suites},
        {"6 Theorem 1", theorem_one},
        {"7 Theorem 2 and Note", theorem_two_and_note},
        {"8 Full CLI suite", [&cli] { return full_cli(cli); }},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail.str() << std::endl;
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
