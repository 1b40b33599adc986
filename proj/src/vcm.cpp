#include "vcm/vcm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vcm {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Exact: return "exact";
        case Variant::Mbr: return "mbr";
        case Variant::Tangential: return "tangent";
        case Variant::Baseline: return "baseline";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "exact") return Variant::Exact;
    if (name == "mbr") return Variant::Mbr;
    if (name == "tangent") return Variant::Tangential;
    if (name == "baseline") return Variant::Baseline;
    throw std::invalid_argument("unknown variant: " + name);
}

static Rect quad_bbox(const std::array<Point, 4>& q) {
    Rect r{q[0].x, q[0].y, q[0].x, q[0].y};
    for (int i = 1; i < 4; ++i) {
        r.xmin = std::min(r.xmin, q[i].x);
        r.ymin = std::min(r.ymin, q[i].y);
        r.xmax = std::max(r.xmax, q[i].x);
        r.ymax = std::max(r.ymax, q[i].y);
    }
    return r;
}

ColorTree build_color_tree(const CellSet& cells, Variant v, std::size_t page_size) {
    if (v == Variant::Baseline) throw std::invalid_argument("baseline map has no color tree");
    ColorTree ct;
    ct.cells = &cells;
    ct.variant = v;
    std::vector<StrTree<int>::Entry> entries;
    entries.reserve(cells.cells.size());
    if (v == Variant::Tangential) ct.quads.reserve(cells.cells.size());
    for (std::size_t i = 0; i < cells.cells.size(); ++i) {
        Rect mbr;
        if (v == Variant::Tangential) {
            auto quad = approximate_cell_tangential(cells.cells[i]);
            ct.quads.push_back(quad);
            mbr = quad_bbox(quad);
        } else {
            mbr = approximate_cell_mbr(cells.cells[i]);
        }
        entries.push_back({mbr, static_cast<int>(i)});
    }
    ct.index = StrTree<int>::build(std::move(entries), page_size);
    return ct;
}

std::vector<int> color_tree_query(const ColorTree& ct, const Target& t, const Rect& block,
                                  AccessStats* stats) {
    std::array<Point, 4> quad;
    auto wc = block.corners();
    for (int i = 0; i < 4; ++i) quad[static_cast<std::size_t>(i)] = t.to_local(wc[static_cast<std::size_t>(i)]);
    Rect probe = quad_bbox(quad);
    const CellSet& cs = *ct.cells;
    std::vector<int> out;
    auto test = [&](const Rect& mbr, int idx) {
        switch (ct.variant) {
            case Variant::Exact:
                return sector_intersects_quad(cs.cells[static_cast<std::size_t>(idx)], quad);
            case Variant::Mbr:
                return quad_intersects_quad(mbr.corners(), quad);
            case Variant::Tangential:
                return quad_intersects_quad(ct.quads[static_cast<std::size_t>(idx)], quad);
            default:
                return false;
        }
    };
    ct.index.query(probe, test, [&](int idx) { out.push_back(idx); }, stats);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Colorer {
    QuadTree& tree;
    const ColorTree& ct;
    const Target& t;
    const VisionParams& vp;
    double theta;
    AccessStats* stats;

    void run() {
        visit(tree.root());
        tree.merge_uniform();
    }

    void visit(int i) {
        if (!tree.node(i).leaf()) {
            int c0 = tree.node(i).child0;
            for (int c = 0; c < 4; ++c) visit(c0 + c);
            return;
        }
        if (tree.node(i).state != BlockState::UnassignedVisible) return;
        color_leaf(i);
    }

    void color_leaf(int i) {
        Rect box = tree.node(i).box;
        std::vector<int> cand = color_tree_query(ct, t, box, stats);
        if (cand.size() == 1) {
            set_color(i, cell(cand[0]).color);
        } else if (cand.empty()) {
            // Inside the near disk the clamped point color still varies with the
            // sightline angle, so keep splitting down to the resolution floor
            // instead of smearing one sample over a large block.
            Point local = t.to_local(box.center());
            if (local.norm() < ct.cells->d0 && vp.near_rule == NearPointRule::Clamp &&
                box.width() >= theta) {
                int c0 = tree.subdivide(i);
                for (int c = 0; c < 4; ++c) color_leaf(c0 + c);
            } else {
                set_color(i, center_point_color(box.center()));
            }
        } else if (box.width() >= theta) {
            int c0 = tree.subdivide(i);
            for (int c = 0; c < 4; ++c) color_leaf(c0 + c);
        } else {
            set_color(i, center_cell_color(box.center(), cand));
        }
    }

    const Cell& cell(int idx) const { return ct.cells->cells[static_cast<std::size_t>(idx)]; }

    void set_color(int i, double color) {
        tree.node(i).state = BlockState::Colored;
        tree.node(i).color = color;
    }

    // block meets no cell: it lies inside the near disk or beyond d_max
    double center_point_color(Point center) const {
        Point local = t.to_local(center);
        if (local.norm() < ct.cells->d0) {
            return vp.near_rule == NearPointRule::Clamp ? visibility_color(center, t, vp) : 0.0;
        }
        return 0.0;
    }

    double center_cell_color(Point center, const std::vector<int>& cand) const {
        Point local = t.to_local(center);
        for (int idx : cand) {
            if (cell_contains_local(cell(idx), local)) return cell(idx).color;
        }
        // center in no candidate (near-disk or d_max edge): nearest in polar terms
        double r = local.norm();
        double ang = rad2deg(std::atan2(local.y, local.x));
        double best = std::numeric_limits<double>::infinity();
        int pick = cand[0];
        for (int idx : cand) {
            const Cell& c = cell(idx);
            auto [tlo, thi] = cell_theta_range_deg(c);
            double radial = std::max({0.0, c.d_lo - r, r - c.d_hi});
            double adiff =
                std::max(0.0, std::abs(angle_diff_deg(ang, (tlo + thi) / 2.0)) - (thi - tlo) / 2.0);
            double score = radial + r * deg2rad(adiff);
            if (score < best - kEps) {
                best = score;
                pick = idx;
            }
        }
        return cell(pick).color;
    }
};

}  // namespace

void construct_vcm(QuadTree& tree, const ColorTree& ct, const Target& t,
                   const VisionParams& vp, double theta, AccessStats* stats) {
    if (!ct.cells) throw std::invalid_argument("color tree not built");
    const CellSet& cs = *ct.cells;
    if (std::abs(cs.target_len - t.length()) > 1e-6 * std::max(1.0, cs.target_len) ||
        std::abs(cs.mu_arcmin - vp.mu_arcmin) > 1e-9 ||
        std::abs(cs.d0 - vp.d0) > 1e-6 * std::max(1.0, cs.d0)) {
        throw std::invalid_argument("color tree was built for different target parameters");
    }
    if (tree.empty()) return;
    Colorer{tree, ct, t, vp, theta, stats}.run();
}

VCMap build_vcm(const Scene& scene, const RunConfig& cfg, Variant v) {
    if (v == Variant::Baseline) throw std::invalid_argument("baseline map bypasses the pipeline");
    using clock = std::chrono::steady_clock;
    auto seconds = [](clock::duration d) {
        return std::chrono::duration<double>(d).count();
    };

    VCMap out;
    out.variant = v;
    VisionParams vp = vision_params(cfg, scene.target.length());

    auto t0 = clock::now();
    out.cells = build_cells(scene.target, vp);
    out.theta = out.cells.theta * cfg.theta_multiplier;
    ColorTree ct = build_color_tree(out.cells, v);
    auto t1 = clock::now();

    Rect qs = query_space(cfg, scene.target.midpoint());
    Wedge w = fov_wedge(cfg, scene.target.midpoint());
    StrTree<int> idx = build_obstacle_index(scene.obstacles);
    RegionBuildResult rb =
        build_visible_region(qs, scene.target, vp, w, scene.obstacles, idx, out.theta);
    auto t2 = clock::now();

    construct_vcm(rb.tree, ct, scene.target, vp, out.theta, &out.stats.color);
    auto t3 = clock::now();

    out.tree = std::move(rb.tree);
    out.stats.obstacle = rb.stats;
    out.stats.shadows_applied = rb.shadows_applied;
    out.tree.for_each_leaf([&](const QuadNode& n) {
        if (n.state == BlockState::Colored) ++out.stats.leaves_colored;
        if (n.state == BlockState::Obstructed) ++out.stats.leaves_obstructed;
    });
    out.stats.elapsed_partition_s = seconds(t1 - t0);
    out.stats.elapsed_region_s = seconds(t2 - t1);
    out.stats.elapsed_merge_s = seconds(t3 - t2);
    return out;
}

// --- incremental gaze masking ---

static void copy_subtree(const QuadTree& src, int si, QuadTree& dst, int di) {
    const QuadNode& s = src.node(si);
    dst.node(di).state = s.state;
    dst.node(di).color = s.color;
    if (!s.leaf()) {
        int c0 = dst.subdivide(di);
        for (int c = 0; c < 4; ++c) copy_subtree(src, s.child0 + c, dst, c0 + c);
    }
}

static void mask_leaf(QuadTree& dst, int di, BlockState state, double color, const Wedge& w,
                      double theta) {
    Rect box = dst.node(di).box;
    RegionClass cls = wedge_classify(w, box);
    if (cls == RegionClass::Outside) {
        dst.node(di).state = BlockState::Obstructed;
        dst.node(di).color = 0.0;
        return;
    }
    if (cls == RegionClass::Inside || state == BlockState::Obstructed) {
        dst.node(di).state = state;
        dst.node(di).color = color;
        return;
    }
    if (box.width() >= theta) {
        int c0 = dst.subdivide(di);
        for (int c = 0; c < 4; ++c) mask_leaf(dst, c0 + c, state, color, w, theta);
        return;
    }
    if (wedge_contains(w, box.center())) {
        dst.node(di).state = state;
        dst.node(di).color = color;
    } else {
        dst.node(di).state = BlockState::Obstructed;
        dst.node(di).color = 0.0;
    }
}

static void mask_rec(const QuadTree& src, int si, QuadTree& dst, int di, const Wedge& w,
                     double theta) {
    const QuadNode& s = src.node(si);
    if (s.leaf()) {
        mask_leaf(dst, di, s.state, s.color, w, theta);
        return;
    }
    RegionClass cls = wedge_classify(w, s.box);
    if (cls == RegionClass::Outside) {
        dst.node(di).state = BlockState::Obstructed;
        dst.node(di).color = 0.0;
        return;
    }
    if (cls == RegionClass::Inside) {
        copy_subtree(src, si, dst, di);
        return;
    }
    int c0 = dst.subdivide(di);
    for (int c = 0; c < 4; ++c) mask_rec(src, s.child0 + c, dst, c0 + c, w, theta);
}

QuadTree mask_to_wedge(const QuadTree& full, const Wedge& w, double theta) {
    QuadTree out(full.space());
    if (full.empty()) return out;
    if (w.full()) {
        copy_subtree(full, full.root(), out, out.root());
        return out;
    }
    mask_rec(full, full.root(), out, out.root(), w, theta);
    out.merge_uniform();
    return out;
}

Target viewer_centric_target(Point q, double gaze_deg, double d_max_in, double mu_arcmin) {
    if (d_max_in <= 0.0) throw std::invalid_argument("viewer range must be positive");
    double S = 2.0 * d_max_in * std::tan(deg2rad(mu_arcmin / 60.0 / 2.0));
    Vec2 g{std::cos(deg2rad(gaze_deg)), std::sin(deg2rad(gaze_deg))};
    Vec2 n{-g.y, g.x};
    return Target{Segment{q - n * (0.5 * S), q + n * (0.5 * S)}};
}

void export_vcm_csv(const QuadTree& tree, const std::string& path) {
    tree.dump_color_csv(path);
}

}  // namespace vcm
