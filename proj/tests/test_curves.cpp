#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rectify/rectify.hpp"

using namespace rectify;
namespace fx = rectify::fixtures;

TEST(FrenetApparatus, CircleAtOrigin) {
    const auto circle = fx::make_circle(2.0);
    const FrenetFrame f = frenet_apparatus(circle.curve, 0.0);
    EXPECT_LT((f.t - Vec3(0, 1, 0)).norm(), 1e-12);
    EXPECT_LT((f.n - Vec3(-1, 0, 0)).norm(), 1e-12);
    EXPECT_LT((f.b - Vec3(0, 0, 1)).norm(), 1e-12);
    EXPECT_NEAR(f.k, 0.5, 1e-12);
    EXPECT_NEAR(f.tau, 0.0, 1e-12);
}

TEST(FrenetApparatus, HelixAgainstClosedFormAndOracle) {
    const auto helix = fx::make_helix();
    for (double s : centred_samples(helix.curve.domain, 9)) {
        const FrenetFrame f = frenet_apparatus(helix.curve, s);
        EXPECT_NEAR(f.k, oracle::helix_curvature(1, 1), 1e-12);
        EXPECT_NEAR(f.tau, oracle::helix_torsion(1, 1), 1e-12);

        // Oracle works on the original (cos t, sin t, t) parametrization, t = s / sqrt 2.
        const double t = s / std::numbers::sqrt2;
        const auto o = oracle::frenet_of([](double x) { return Vec3(std::cos(x), std::sin(x), x); }, t);
        EXPECT_NEAR(f.k, o.k, 1e-6);
        EXPECT_NEAR(f.tau, o.tau, 1e-5);
        EXPECT_LT((f.t - o.t).norm(), 1e-8);
        EXPECT_LT((f.n - o.n).norm(), 1e-6);
        EXPECT_LT((f.b - o.b).norm(), 1e-6);
    }
}

TEST(FrenetApparatus, FdBackedCurveMatchesAnalytic) {
    auto helix = fx::make_helix();
    ParamCurve numeric = helix.curve;
    numeric.d2 = nullptr;
    numeric.d3 = nullptr;
    for (double s : {0.5, 3.0, 8.0}) {
        const FrenetFrame a = frenet_apparatus(helix.curve, s);
        const FrenetFrame b = frenet_apparatus(numeric, s);
        EXPECT_NEAR(a.k, b.k, 1e-8);
        EXPECT_NEAR(a.tau, b.tau, 1e-6);
        EXPECT_LT((a.n - b.n).norm(), 1e-8);
    }
}

TEST(FrenetApparatus, LineHasNoFrame) {
    const auto line = fx::make_line();
    EXPECT_THROW(frenet_apparatus(line.curve, 0.0), VanishingCurvature);
}

TEST(FrenetApparatus, RejectsNonUnitSpeed) {
    ParamCurve c;
    c.position = [](double t) { return Vec3(std::cos(t), std::sin(t), t); };
    c.domain = {0.0, 6.0};
    EXPECT_THROW(frenet_apparatus(c, 1.0), NotUnitSpeed);
    EXPECT_NO_THROW(frenet_apparatus(arc_length_reparametrize(c), 1.0));
}

TEST(FrenetApparatus, ConeGeodesicAgainstOracle) {
    const auto geo = fx::make_cone_geodesic();
    const auto position = [&geo](double s) { return geo.curve.at(s); };
    for (double s : {-1.5, -0.2, 0.0, 0.9, 1.6}) {
        const FrenetFrame f = frenet_apparatus(geo.curve, s);
        const auto o = oracle::frenet_of(position, s);
        EXPECT_NEAR(f.k, o.k, 1e-6);
        EXPECT_NEAR(f.tau, o.tau, 1e-5);
        EXPECT_LT((f.n - o.n).norm(), 1e-6);
        EXPECT_LT(frame_defect(f), 1e-12);
    }
}

TEST(FrenetResiduals, CircleAndHelixSmall) {
    for (const auto& fixture : {fx::make_circle(), fx::make_helix()}) {
        for (double s : centred_samples(fixture.curve.domain, 25)) {
            EXPECT_LE(frenet_residuals(fixture.curve, s).max(), 1e-6) << fixture.name << " s=" << s;
        }
    }
}

TEST(FrenetResiduals, FlippedTorsionIsDetected) {
    const auto helix = fx::make_helix();
    const double tau = 0.5;
    for (double s : {1.0, 4.0}) {
        const FrenetResiduals standard = frenet_residuals(helix.curve, s);
        const FrenetResiduals flipped = frenet_residuals(helix.curve, s, {}, TorsionSign::Flipped);
        EXPECT_LE(standard.r_b, 1e-6);
        EXPECT_NEAR(flipped.r_b, 2.0 * tau, 1e-6);
        EXPECT_NEAR(flipped.r_n, 2.0 * tau, 1e-6);
        EXPECT_NEAR(flipped.r_t, standard.r_t, 1e-12);
    }
}

TEST(FrenetResiduals, PlanarCurveCannotRevealTheConvention) {
    const auto circle = fx::make_circle();
    const FrenetResiduals flipped = frenet_residuals(circle.curve, 1.0, {}, TorsionSign::Flipped);
    EXPECT_LE(flipped.max(), 1e-6);
}

TEST(RectifyingCheck, ConeGeodesicIsRectifying) {
    const auto geo = fx::make_cone_geodesic();
    const auto samples = centred_samples(geo.curve.domain, 200);
    const RectifyingCheck r = rectifying_check(geo.curve, samples, 1e-6);
    EXPECT_TRUE(r.verdict);
    EXPECT_LE(r.worst_residual, 1e-6);
    ASSERT_EQ(r.decomposition.size(), samples.size());
}

TEST(RectifyingCheck, CircleHasConstantNormalComponent) {
    const auto circle = fx::make_circle(2.0);
    const auto samples = centred_samples(circle.curve.domain, 50);
    const RectifyingCheck r = rectifying_check(circle.curve, samples, 1e-6);
    EXPECT_FALSE(r.verdict);
    for (const auto& d : r.decomposition) EXPECT_NEAR(d.normal_residual, -2.0, 1e-9);
}

TEST(RectifyingCheck, HelixHasConstantNormalComponent) {
    const auto helix = fx::make_helix();
    const auto samples = centred_samples(helix.curve.domain, 50);
    const RectifyingCheck r = rectifying_check(helix.curve, samples, 1e-6);
    EXPECT_FALSE(r.verdict);
    for (const auto& d : r.decomposition) EXPECT_NEAR(d.normal_residual, -1.0, 1e-8);
}

TEST(RectifyingCheck, LinePropagatesVanishingCurvature) {
    const auto line = fx::make_line();
    const std::vector<double> samples{0.0, 0.5};
    EXPECT_THROW(rectifying_check(line.curve, samples, 1e-6), VanishingCurvature);
}

TEST(RectifyingDecomposition, ReconstructsPosition) {
    for (const auto& fixture : {fx::make_circle(), fx::make_helix(), fx::make_cone_geodesic()}) {
        for (double s : centred_samples(fixture.curve.domain, 13)) {
            const FrenetFrame f = frenet_apparatus(fixture.curve, s);
            const RectifyingDecomposition d = rectifying_decomposition(fixture.curve, s);
            const Vec3 rebuilt = d.lambda * f.t + d.normal_residual * f.n + d.mu * f.b;
            EXPECT_LT((rebuilt - fixture.curve.at(s)).norm(), 1e-12) << fixture.name;
        }
    }
}

TEST(RectifyingDecomposition, HelixLambdaIsAffineInArcLength) {
    // lambda = gamma . t = s / 2 for the unit-speed helix with a = b = 1.
    const auto helix = fx::make_helix();
    for (double s : {0.3, 2.0, 7.5}) {
        EXPECT_NEAR(rectifying_decomposition(helix.curve, s).lambda, 0.5 * s, 1e-12);
    }
}

TEST(ParamCurve, DomainIsEnforced) {
    const auto circle = fx::make_circle();
    EXPECT_THROW(circle.curve.at(-0.1), DomainExceeded);
    EXPECT_THROW(circle.curve.derivative(4, 1.0), BadParameter);
}

TEST(ParamCurve, ShiftedParameterKeepsGeometry) {
    const auto geo = fx::make_cone_geodesic();
    const ParamCurve moved = shifted_parameter(geo.curve, -0.5);
    EXPECT_LT((moved.at(0.0) - geo.curve.at(-0.5)).norm(), 1e-15);
    EXPECT_NEAR(frenet_apparatus(moved, 1.0).k, frenet_apparatus(geo.curve, 0.5).k, 1e-12);
}
