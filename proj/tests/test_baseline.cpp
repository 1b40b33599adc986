#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "vcm/baseline.hpp"
#include "vcm/render.hpp"

using namespace vcm;

namespace {

double urand(std::mt19937_64& g, double lo, double hi) {
    double u = (g() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

Target make_target() { return Target{{{4994, 5000}, {5006, 5000}}}; }

VisionParams make_params() {
    VisionParams vp;
    vp.mu_arcmin = 16;
    vp.d0 = 200;
    return vp;
}

}  // namespace

TEST_CASE("oracle color: the point model gated by occlusion") {
    Target t = make_target();
    VisionParams vp = make_params();
    std::vector<Rect> obs{{4970, 5150, 5030, 5200}};
    // blocked straight above, clear from a 45-degree vantage (oblique enough
    // to stay visible: at grazing angles the 12-unit target drops under mu)
    CHECK(oracle_color({5000, 5400}, t, vp, obs) == 0.0);
    Point side{4650, 5350};
    CHECK(oracle_color(side, t, vp, obs) == visibility_color(side, t, vp));
    CHECK(oracle_color(side, t, vp, obs) > 0.0);
    // no obstacles: pure point model
    CHECK(oracle_color({5000, 5400}, t, vp, {}) == visibility_color({5000, 5400}, t, vp));
}

TEST_CASE("baseline grid samples cell centers on an exact tiling") {
    Target t = make_target();
    VisionParams vp = make_params();
    Rect bounds{4000, 4200, 5600, 5800};
    BaselineGrid g = baseline_vcm(bounds, t, vp, {}, 33);
    REQUIRE(g.n == 33);
    REQUIRE(g.colors.size() == 33u * 33u);

    // shared edges are bit-identical between neighbours
    for (int i = 0; i < 33; ++i) {
        for (int j = 0; j + 1 < 33; ++j) {
            CHECK(g.cell_rect(j, i).xmax == g.cell_rect(j + 1, i).xmin);
            CHECK(g.cell_rect(i, j).ymax == g.cell_rect(i, j + 1).ymin);
        }
    }
    CHECK(g.cell_rect(0, 0).xmin == bounds.xmin);
    CHECK(g.cell_rect(32, 32).xmax == bounds.xmax);

    std::mt19937_64 rng(79);
    for (int k = 0; k < 200; ++k) {
        int ix = int(rng() % 33), iy = int(rng() % 33);
        Point c = g.cell_rect(ix, iy).center();
        CHECK(g.colors[std::size_t(iy) * 33 + std::size_t(ix)] ==
              oracle_color(c, t, vp, {}));
        CHECK(g.at(c) == g.colors[std::size_t(iy) * 33 + std::size_t(ix)]);
    }
    CHECK_THROWS_AS(baseline_vcm(bounds, t, vp, {}, 1), std::invalid_argument);
}

TEST_CASE("measured error: identity, total miss, and sign") {
    Target t = make_target();
    VisionParams vp = make_params();
    Rect bounds{4200, 4200, 5800, 5800};
    BaselineGrid ref = baseline_vcm(bounds, t, vp, {}, 40);
    auto ref_view = PieceMapView::of(ref);

    auto same = measured_error(ref_view, PieceMapView::of(ref));
    CHECK(same.error_abs == doctest::Approx(0.0));
    CHECK(same.error_signed == doctest::Approx(0.0));
    CHECK(same.reference_mass > 0.0);

    // candidate identically zero misses the whole mass
    QuadTree zero(bounds);
    zero.node(zero.root()).state = BlockState::Colored;
    zero.node(zero.root()).color = 0.0;
    auto miss = measured_error(ref_view, PieceMapView::of(zero));
    CHECK(miss.error_abs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(miss.error_signed == doctest::Approx(1.0).epsilon(1e-12));

    // doubling the reference gives signed error -1
    BaselineGrid twice = ref;
    for (double& c : twice.colors) c *= 2.0;
    auto over = measured_error(ref_view, PieceMapView::of(twice));
    CHECK(over.error_signed == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(over.error_abs == doctest::Approx(1.0).epsilon(1e-12));

    // abs dominates signed on a mixed candidate
    BaselineGrid mixed = ref;
    std::mt19937_64 g(83);
    for (double& c : mixed.colors) c = std::max(0.0, c + urand(g, -0.02, 0.02));
    auto rep = measured_error(ref_view, PieceMapView::of(mixed));
    CHECK(rep.error_abs >= std::abs(rep.error_signed) - 1e-15);
    CHECK(rep.pieces >= 40u * 40u);
}

TEST_CASE("overlay on an exact hand-built case") {
    // reference: single piece of color 0.5; candidate: 2x2 grid with one
    // quarter at 0.9, the rest at 0.5
    Rect bounds{0, 0, 100, 100};
    QuadTree ref(bounds);
    ref.node(ref.root()).state = BlockState::Colored;
    ref.node(ref.root()).color = 0.5;

    QuadTree cand(bounds);
    int c0 = cand.subdivide(cand.root());
    for (int c = 0; c < 4; ++c) {
        cand.node(c0 + c).state = BlockState::Colored;
        cand.node(c0 + c).color = (c == 2) ? 0.9 : 0.5;
    }
    auto rep = measured_error(PieceMapView::of(ref), PieceMapView::of(cand));
    // deviation 0.4 over a quarter of the area, reference mass 0.5 * area
    CHECK(rep.deviation_mass == doctest::Approx(0.4 * 2500.0).epsilon(1e-12));
    CHECK(rep.reference_mass == doctest::Approx(0.5 * 10000.0).epsilon(1e-12));
    CHECK(rep.error_abs == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(rep.error_signed == doctest::Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("mismatched bounds and empty references are rejected") {
    Target t = make_target();
    VisionParams vp = make_params();
    BaselineGrid a = baseline_vcm({4000, 4000, 6000, 6000}, t, vp, {}, 8);
    BaselineGrid b = baseline_vcm({4000, 4000, 6000, 6001}, t, vp, {}, 8);
    CHECK_THROWS_AS(measured_error(PieceMapView::of(a), PieceMapView::of(b)),
                    std::invalid_argument);

    QuadTree dark({0, 0, 10, 10});
    dark.node(dark.root()).state = BlockState::Colored;
    dark.node(dark.root()).color = 0.0;
    QuadTree other({0, 0, 10, 10});
    CHECK_THROWS_AS(measured_error(PieceMapView::of(dark), PieceMapView::of(other)),
                    std::runtime_error);
}

TEST_CASE("rendering: geometry, orientation, and clamping") {
    Rect bounds{0, 0, 200, 100};
    // bright upper half, dark lower half, out-of-range values clamp
    auto color_at = [](Point p) { return p.y > 50 ? 1.7 : 0.25; };
    Image8 img = render_map(color_at, bounds, 64);
    CHECK(img.width == 64);
    CHECK(img.height == 32);
    CHECK(img.at(10, 2) == 255);   // row 0 is the top
    CHECK(img.at(10, 30) == 64);   // lround(0.25 * 255)
    CHECK_THROWS_AS(render_map(color_at, bounds, 8), std::invalid_argument);

    QuadTree t(bounds);
    t.node(t.root()).state = BlockState::Colored;
    t.node(t.root()).color = 0.5;
    CHECK(quadtree_color_at(t, {100, 50}) == 0.5);

    Image8 qi = render_map([&](Point p) { return quadtree_color_at(t, p); }, bounds, 32);
    std::string path = "/tmp/vcm_test_render.pgm";
    write_pgm(qi, path);
    FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f);
    char header[32] = {};
    REQUIRE(std::fread(header, 1, 15, f) == 15);
    CHECK(std::string(header, 3) == "P5\n");
    std::fclose(f);
    std::remove(path.c_str());
}
