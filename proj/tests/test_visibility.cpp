#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vcm/visibility.hpp"

using namespace vcm;

namespace {

double urand(std::mt19937_64& g, double lo, double hi) {
    double u = (g() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

Target make_target(double S) { return Target{{{-S / 2, 0.0}, {S / 2, 0.0}}}; }

}  // namespace

TEST_CASE("visual angle of known configurations") {
    CHECK(visual_angle_deg(300, 400) == doctest::Approx(41.112090439166934).epsilon(1e-12));
    CHECK(visual_angle_deg(150, 400) == doctest::Approx(21.23931055231027).epsilon(1e-12));
    // halving the distance grows the angle, but sub-doubles it (atan concavity)
    CHECK(visual_angle_deg(300, 200) > visual_angle_deg(300, 400));
    CHECK(visual_angle_deg(300, 200) < 2 * visual_angle_deg(300, 400));
    CHECK_THROWS_AS(visual_angle_deg(0, 100), std::invalid_argument);
    CHECK_THROWS_AS(visual_angle_deg(100, 0), std::invalid_argument);
}

TEST_CASE("perceived length is linear in the viewing angle") {
    CHECK(perceived_length(300, 45) == doctest::Approx(150.0).epsilon(1e-15));
    CHECK(perceived_length(300, 90) == doctest::Approx(300.0));
    CHECK(perceived_length(300, 0) == doctest::Approx(0.0));
    // complementary angles split the full length
    for (double a : {10.0, 30.0, 60.0, 80.0}) {
        CHECK(perceived_length(300, a) + perceived_length(300, 90 - a) ==
              doctest::Approx(300.0).epsilon(1e-12));
        CHECK(perceived_length(300, a) < perceived_length(300, a + 5));
    }
}

TEST_CASE("d_max inverts the visual angle at the cutoff") {
    CHECK(d_max(100, 4) == doctest::Approx(85943.65957334965).epsilon(1e-12));
    CHECK(d_max(100, 8) == doctest::Approx(42971.81524226275).epsilon(1e-12));
    CHECK(d_max(200, 4) == doctest::Approx(171887.3191466993).epsilon(1e-12));
    std::mt19937_64 g(7);
    for (int i = 0; i < 50; ++i) {
        double S = urand(g, 1, 2000);
        double mu = urand(g, 0.5, 60);
        double d = d_max(S, mu);
        CHECK(visual_angle_deg(S, d) == doctest::Approx(mu / 60.0).epsilon(1e-12));
    }
}

TEST_CASE("normalization angle and the reference color") {
    Target t = make_target(100);
    VisionParams vp;
    vp.d0 = 10;
    CHECK(normalization_angle(t, vp) == doctest::Approx(157.38013505195957).epsilon(1e-12));
    // perpendicular viewer at 1000: angle and normalized color
    CHECK(visual_angle_deg(100, 1000) == doctest::Approx(5.724810452223496).epsilon(1e-12));
    CHECK(visibility_color({0, 1000}, t, vp) ==
          doctest::Approx(0.03637568648885344).epsilon(1e-9));
}

TEST_CASE("view geometry: quadrants and the viewing angle") {
    Target t = make_target(100);
    auto vg = view_geometry({30, 40}, t);
    CHECK(vg.dist == doctest::Approx(50.0));
    CHECK(vg.alpha_deg == doctest::Approx(rad2deg(std::acos(0.6))).epsilon(1e-12));
    CHECK(vg.quadrant == 1);
    CHECK(view_geometry({-30, 40}, t).quadrant == 2);
    CHECK(view_geometry({-30, -40}, t).quadrant == 3);
    CHECK(view_geometry({30, -40}, t).quadrant == 4);
    CHECK(view_geometry({0, 123}, t).alpha_deg == doctest::Approx(90.0));
    CHECK(view_geometry({456, 0}, t).alpha_deg == doctest::Approx(0.0));
}

TEST_CASE("color properties along rays") {
    Target t = make_target(100);
    VisionParams vp;
    vp.d0 = 10;
    double dm = d_max(100, vp.mu_arcmin);

    // zero beyond the cutoff, positive inside it
    CHECK(visibility_color({0, dm * 1.01}, t, vp) == 0.0);
    CHECK(visibility_color({0, dm * 0.99}, t, vp) > 0.0);

    // non-increasing with distance on the perpendicular bisector
    double prev = 2.0;
    for (double d = vp.d0; d < dm * 1.2; d *= 1.37) {
        double c = visibility_color({0, d}, t, vp);
        CHECK(c <= prev + 1e-12);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        prev = c;
    }

    // collinear viewers never see the segment
    CHECK(visibility_color({200, 0}, t, vp) == 0.0);
}

TEST_CASE("near point rules inside the focus disk") {
    Target t = make_target(100);
    VisionParams vp;
    vp.d0 = 10;
    vp.near_rule = NearPointRule::Clamp;
    CHECK(visibility_color({0, 5}, t, vp) == doctest::Approx(1.0).epsilon(1e-12));
    // clamped distance, oblique view
    Point oblique{5 * std::cos(deg2rad(45.0)), 5 * std::sin(deg2rad(45.0))};
    CHECK(visibility_color(oblique, t, vp) ==
          doctest::Approx(0.8666734272547446).epsilon(1e-9));
    vp.near_rule = NearPointRule::Zero;
    CHECK(visibility_color({0, 5}, t, vp) == 0.0);
    CHECK(visibility_color({0, 10.001}, t, vp) > 0.0);
}

TEST_CASE("polar color form matches the point form") {
    Target t{{{210, -40}, {350, 95}}};  // oblique target, offset frame
    VisionParams vp;
    vp.d0 = 25;
    std::mt19937_64 g(11);
    for (int i = 0; i < 300; ++i) {
        double d = urand(g, 1, 2 * d_max(t.length(), vp.mu_arcmin));
        double gamma = urand(g, 0, 90);
        Point local{d * std::cos(deg2rad(gamma)), d * std::sin(deg2rad(gamma))};
        double via_point = visibility_color(t.from_local(local), t, vp);
        double via_polar = visibility_color_da(d, gamma, t.length(), vp);
        CHECK(via_point == doctest::Approx(via_polar).epsilon(1e-9));
    }
}

TEST_CASE("sightline occlusion") {
    Target t = make_target(100);
    std::vector<Rect> obs{{-10, 200, 10, 220}};
    // viewer straight above the obstacle is blocked, offset viewer is not
    CHECK_FALSE(fully_visible({0, 400}, t, obs));
    CHECK(fully_visible({300, 400}, t, obs));
    // an obstacle overlapping the target itself is ignored
    std::vector<Rect> overlapping{{-5, -5, 5, 5}};
    CHECK(fully_visible({0, 400}, t, overlapping));
    // blocking any part of the segment counts
    std::vector<Rect> partial{{30, 100, 80, 120}};
    CHECK_FALSE(fully_visible({49, 300}, t, partial));
    CHECK(fully_visible({-300, 50}, t, partial));
}
