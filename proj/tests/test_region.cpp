#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "vcm/region.hpp"

using namespace vcm;

namespace {

double urand(std::mt19937_64& g, double lo, double hi) {
    double u = (g() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

Rect rand_rect(std::mt19937_64& g, double lo, double hi, double wmin, double wmax) {
    double x = urand(g, lo, hi), y = urand(g, lo, hi);
    return {x, y, x + urand(g, wmin, wmax), y + urand(g, wmin, wmax)};
}

Vec2 polar_dir(double deg) { return {std::cos(deg2rad(deg)), std::sin(deg2rad(deg))}; }

std::vector<std::string> leaf_list(const QuadTree& t) {
    std::vector<std::string> out;
    t.for_each_leaf([&](const QuadNode& n) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%.17g", n.box.xmin,
                      n.box.ymin, n.box.xmax, n.box.ymax, int(n.state), n.color);
        out.emplace_back(buf);
    });
    return out;
}

}  // namespace

TEST_CASE("quadtree subdivision tiles the parent and merge restores it") {
    Rect space{0, 0, 1024, 1024};
    QuadTree t(space);
    int c0 = t.subdivide(t.root());
    REQUIRE(t.node_count() == 5);
    double area = 0;
    for (int c = 0; c < 4; ++c) area += t.node(c0 + c).box.area();
    CHECK(area == doctest::Approx(space.area()).epsilon(1e-12));
    CHECK(t.node(c0).box.xmax == t.node(c0 + 1).box.xmin);  // SW then SE
    CHECK(t.node(c0).box.ymax == t.node(c0 + 2).box.ymin);  // SW then NW

    // uniform leaves collapse back to a single leaf
    t.merge_uniform();
    CHECK(t.leaf_count() == 1);
    CHECK(t.node(t.root()).leaf());

    // distinct colors do not merge
    c0 = t.subdivide(t.root());
    for (int c = 0; c < 4; ++c) {
        t.node(c0 + c).state = BlockState::Colored;
        t.node(c0 + c).color = 0.25 * c;
    }
    t.merge_uniform();
    CHECK(t.leaf_count() == 4);
    // equal colors do merge
    for (int c = 0; c < 4; ++c) t.node(c0 + c).color = 0.5;
    t.merge_uniform();
    CHECK(t.leaf_count() == 1);
    CHECK(t.node(t.root()).state == BlockState::Colored);
    CHECK(t.node(t.root()).color == 0.5);
}

TEST_CASE("leaf lookup and area enumeration") {
    QuadTree t(Rect{0, 0, 1000, 1000});
    int c0 = t.subdivide(t.root());
    t.subdivide(c0 + 3);  // split the NE quadrant again
    CHECK(t.leaf_count() == 7);
    CHECK(t.node(t.leaf_at({10, 10})).box.contains({10, 10}));
    CHECK(t.node(t.leaf_at({990, 990})).box.width() == 250);

    int hits = 0;
    t.for_each_leaf_in({0, 0, 499, 499}, [&](const QuadNode&) { ++hits; });
    CHECK(hits == 1);  // interior overlap only, the touching neighbours are out
    hits = 0;
    t.for_each_leaf_in({400, 400, 600, 600}, [&](const QuadNode&) { ++hits; });
    CHECK(hits == 4);  // three big quadrants plus one NE child
}

TEST_CASE("shadow polygon matches the sight-triangle oracle") {
    std::mt19937_64 g(41);
    Rect space = dataspace();
    int scenes = 0;
    while (scenes < 25) {
        Target t{{{urand(g, 3000, 7000), urand(g, 3000, 7000)},
                  {urand(g, 3000, 7000), urand(g, 3000, 7000)}}};
        if (t.length() < 50) continue;
        Rect obstacle = rand_rect(g, 1000, 8500, 20, 600);
        if (segment_intersects_rect(t.seg, obstacle)) continue;
        Polygon w = shadow_polygon(obstacle, t, space);
        REQUIRE(!w.empty());

        // obstacle corners are themselves shadowed
        for (Point c : obstacle.corners()) {
            if (space.contains(c)) CHECK(point_in_polygon(c, w, 1e-7));
        }

        for (int i = 0; i < 800; ++i) {
            Point p{urand(g, 0, kSpaceSpan), urand(g, 0, kSpaceSpan)};
            if (polygon_boundary_distance(p, w) < 1e-5) continue;  // ambiguous rim
            bool blocked = triangle_intersects_rect(p, t.seg.a, t.seg.b, obstacle);
            CHECK(point_in_polygon(p, w) == blocked);
        }
        ++scenes;
    }
}

TEST_CASE("shadow polygon rejects obstacles touching the target") {
    Target t{{{4000, 5000}, {6000, 5000}}};
    CHECK_THROWS_AS(shadow_polygon(Rect{4900, 4900, 5100, 5100}, t, dataspace()),
                    std::invalid_argument);
}

TEST_CASE("field-of-view initialization") {
    Rect space{0, 0, 4096, 4096};
    Target t{{{1948, 2048}, {2148, 2048}}};
    Wedge full{t.midpoint(), 0, 360};
    QuadTree ft = init_fov(space, t, full, 16);
    CHECK(ft.leaf_count() == 1);
    CHECK(ft.node(ft.root()).state == BlockState::UnassignedVisible);

    Wedge half{t.midpoint(), 90, 180};  // looking up
    QuadTree ht = init_fov(space, t, half, 16);
    CHECK(ht.leaf_count() > 1);
    CHECK(ht.node(ht.leaf_at({2048, 3500})).state == BlockState::UnassignedVisible);
    CHECK(ht.node(ht.leaf_at({2048, 300})).state == BlockState::Obstructed);
    // boundary-straddling leaves are at the resolution floor
    ht.for_each_leaf([&](const QuadNode& n) {
        if (n.box.width() >= 32) return;
        CHECK(n.box.width() >= 8);  // never split past half the floor
    });
}

TEST_CASE("shadow application is order independent and canonical") {
    std::mt19937_64 g(43);
    Rect space{0, 0, 8192, 8192};
    Target t{{{3996, 4096}, {4196, 4096}}};
    std::vector<Polygon> shadows;
    for (int i = 0; i < 6; ++i) {
        Rect o = rand_rect(g, 500, 7000, 100, 900);
        if (segment_intersects_rect(t.seg, o)) continue;
        Polygon w = shadow_polygon(o, t, space);
        if (!w.empty()) shadows.push_back(w);
    }
    REQUIRE(shadows.size() >= 4);

    Wedge full{t.midpoint(), 0, 360};
    QuadTree a = init_fov(space, t, full, 32);
    for (const auto& w : shadows) {
        apply_shadow(a, w, 32);
        a.merge_uniform();
    }
    QuadTree b = init_fov(space, t, full, 32);
    for (auto it = shadows.rbegin(); it != shadows.rend(); ++it) {
        apply_shadow(b, *it, 32);
        b.merge_uniform();
    }
    CHECK(leaf_list(a) == leaf_list(b));

    // canonical: no sibling group of four uniform leaves survives
    std::size_t before = a.leaf_count();
    a.merge_uniform();
    CHECK(a.leaf_count() == before);
}

TEST_CASE("full obstruction test agrees with a leaf scan") {
    std::mt19937_64 g(47);
    Rect space{0, 0, 8192, 8192};
    Target t{{{3996, 4096}, {4196, 4096}}};
    QuadTree tree = init_fov(space, t, Wedge{t.midpoint(), 0, 360}, 32);
    for (int i = 0; i < 4; ++i) {
        Rect o = rand_rect(g, 1000, 6500, 200, 1200);
        if (segment_intersects_rect(t.seg, o)) continue;
        Polygon w = shadow_polygon(o, t, space);
        if (w.empty()) continue;
        apply_shadow(tree, w, 32);
        tree.merge_uniform();
    }
    for (int i = 0; i < 300; ++i) {
        Rect probe = rand_rect(g, 0, 7500, 10, 700);
        bool expect = true;
        tree.for_each_leaf_in(probe, [&](const QuadNode& n) {
            if (n.state != BlockState::Obstructed) expect = false;
        });
        CHECK(is_fully_obstructed(tree, probe) == expect);
    }
}

TEST_CASE("state dump round-trips through the csv form") {
    std::mt19937_64 g(53);
    Rect space{0, 0, 4096, 4096};
    Target t{{{1948, 2048}, {2148, 2048}}};
    QuadTree tree = init_fov(space, t, Wedge{t.midpoint(), 30, 120}, 64);
    Rect o{2500, 2800, 2900, 3100};
    apply_shadow(tree, shadow_polygon(o, t, space), 64);
    tree.merge_uniform();
    // give colored leaves to the round trip as well
    for (Point p : {Point{3000, 3000}, Point{2100, 2500}, Point{1000, 3900}}) {
        int i = tree.leaf_at(p);
        if (tree.node(i).state == BlockState::UnassignedVisible) {
            tree.node(i).state = BlockState::Colored;
            tree.node(i).color = 0.12345678901234567;
        }
    }
    std::string path = "/tmp/vcm_test_state.csv";
    tree.dump_state_csv(path);
    QuadTree back = QuadTree::load_state_csv(path, space);
    CHECK(leaf_list(back) == leaf_list(tree));
    std::remove(path.c_str());
}

TEST_CASE("region build prunes obstacles hidden inside earlier shadows") {
    // near wall directly above the target, small box deep in its shadow
    Rect space{0, 0, 8192, 8192};
    Target t{{{3996, 4000}, {4196, 4000}}};
    std::vector<ObstacleRect> obstacles{
        {0, {3800, 4400, 4400, 4500}},   // wide wall close to the target
        {1, {4050, 6000, 4150, 6100}},   // entirely behind the wall
    };
    VisionParams vp;
    vp.mu_arcmin = 4;
    vp.d0 = 200;
    Wedge full{t.midpoint(), 0, 360};
    auto idx = build_obstacle_index(obstacles);
    auto rb = build_visible_region(space, t, vp, full, obstacles, idx, 32);
    CHECK(rb.shadows_applied == 1);
    CHECK(rb.stats.pruned == 1);
    CHECK(rb.stats.emitted == 1);
    // the hidden box region is obstructed anyway
    CHECK(is_fully_obstructed(rb.tree, obstacles[1].rect));

    // without obstacles the region equals the wedge initialization
    auto rb0 = build_visible_region(space, t, vp, full, {}, build_obstacle_index({}), 32);
    CHECK(rb0.tree.leaf_count() == 1);
    CHECK(rb0.shadows_applied == 0);
}

TEST_CASE("visible region against the oracle on one shadow") {
    Rect space{0, 0, 8192, 8192};
    Target t{{{3996, 3000}, {4196, 3000}}};
    Rect o{3900, 4000, 4300, 4200};
    VisionParams vp;
    vp.mu_arcmin = 8;
    vp.d0 = 200;
    double theta = 24;
    Wedge fov{t.midpoint(), 90, 140};
    std::vector<ObstacleRect> obstacles{{0, o}};
    auto idx = build_obstacle_index(obstacles);
    auto rb = build_visible_region(space, t, vp, fov, obstacles, idx, theta);

    Polygon w = shadow_polygon(o, t, space);
    std::mt19937_64 g(59);
    int disagreements = 0;
    for (int i = 0; i < 10000; ++i) {
        Point p{urand(g, 0, 8192), urand(g, 0, 8192)};
        bool oracle_visible = wedge_contains(fov, p) &&
                              !triangle_intersects_rect(p, t.seg.a, t.seg.b, o);
        bool got_visible =
            rb.tree.node(rb.tree.leaf_at(p)).state == BlockState::UnassignedVisible;
        if (oracle_visible == got_visible) continue;
        ++disagreements;
        // disagreements only happen within a floor block of a frontier
        double band = theta * std::sqrt(2.0);
        double to_shadow = polygon_boundary_distance(p, w);
        double ray1 = point_segment_distance(
            p, {t.midpoint(), t.midpoint() + polar_dir(90 - 70) * 12000.0});
        double ray2 = point_segment_distance(
            p, {t.midpoint(), t.midpoint() + polar_dir(90 + 70) * 12000.0});
        CHECK(std::min({to_shadow, ray1, ray2}) <= band);
    }
    CHECK(disagreements < 200);  // a thin frontier band out of 10000 samples
}
