#include "vcm/region.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace vcm {

const char* block_state_name(BlockState s) {
    switch (s) {
        case BlockState::UnassignedVisible: return "unassigned_visible";
        case BlockState::Obstructed: return "obstructed";
        case BlockState::Colored: return "colored";
    }
    return "?";
}

BlockState block_state_from_name(const std::string& name) {
    if (name == "unassigned_visible") return BlockState::UnassignedVisible;
    if (name == "obstructed") return BlockState::Obstructed;
    if (name == "colored") return BlockState::Colored;
    throw std::invalid_argument("unknown block state: " + name);
}

QuadTree::QuadTree(const Rect& space) { nodes_.push_back(QuadNode{space, BlockState::UnassignedVisible, 0.0, -1}); }

int QuadTree::subdivide(int i) {
    QuadNode parent = nodes_[static_cast<std::size_t>(i)];
    double mx = 0.5 * (parent.box.xmin + parent.box.xmax);
    double my = 0.5 * (parent.box.ymin + parent.box.ymax);
    int c0 = static_cast<int>(nodes_.size());
    nodes_[static_cast<std::size_t>(i)].child0 = c0;
    Rect boxes[4] = {
        {parent.box.xmin, parent.box.ymin, mx, my},
        {mx, parent.box.ymin, parent.box.xmax, my},
        {parent.box.xmin, my, mx, parent.box.ymax},
        {mx, my, parent.box.xmax, parent.box.ymax},
    };
    for (const Rect& b : boxes) {
        nodes_.push_back(QuadNode{b, parent.state, parent.color, -1});
    }
    return c0;
}

void QuadTree::merge_uniform() {
    // post-order walk without recursion risk on deep trees
    std::vector<int> order;
    order.reserve(nodes_.size());
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        order.push_back(i);
        const QuadNode& n = nodes_[static_cast<std::size_t>(i)];
        if (!n.leaf()) {
            for (int c = 0; c < 4; ++c) stack.push_back(n.child0 + c);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        QuadNode& n = nodes_[static_cast<std::size_t>(*it)];
        if (n.leaf()) continue;
        const QuadNode& c0 = nodes_[static_cast<std::size_t>(n.child0)];
        if (!c0.leaf()) continue;
        bool uniform = true;
        for (int c = 1; c < 4 && uniform; ++c) {
            const QuadNode& cc = nodes_[static_cast<std::size_t>(n.child0 + c)];
            uniform = cc.leaf() && cc.state == c0.state &&
                      (c0.state != BlockState::Colored || cc.color == c0.color);
        }
        if (uniform) {
            n.state = c0.state;
            n.color = c0.color;
            n.child0 = -1;
        }
    }
}

int QuadTree::leaf_at(Point p) const {
    if (nodes_.empty() || !nodes_[0].box.contains(p)) return -1;
    int i = 0;
    while (!nodes_[static_cast<std::size_t>(i)].leaf()) {
        const QuadNode& n = nodes_[static_cast<std::size_t>(i)];
        double mx = 0.5 * (n.box.xmin + n.box.xmax);
        double my = 0.5 * (n.box.ymin + n.box.ymax);
        int c = (p.x >= mx ? 1 : 0) + (p.y >= my ? 2 : 0);
        i = n.child0 + c;
    }
    return i;
}

std::size_t QuadTree::leaf_count() const {
    std::size_t k = 0;
    for_each_leaf([&](const QuadNode&) { ++k; });
    return k;
}

void QuadTree::for_each_leaf(const std::function<void(const QuadNode&)>& fn) const {
    std::vector<int> stack{0};
    if (nodes_.empty()) return;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        const QuadNode& n = nodes_[static_cast<std::size_t>(i)];
        if (n.leaf()) {
            fn(n);
        } else {
            for (int c = 3; c >= 0; --c) stack.push_back(n.child0 + c);
        }
    }
}

static bool overlaps_area(const Rect& a, const Rect& b) {
    return a.xmin < b.xmax - kEps && b.xmin < a.xmax - kEps && a.ymin < b.ymax - kEps &&
           b.ymin < a.ymax - kEps;
}

void QuadTree::for_each_leaf_in(const Rect& r,
                                const std::function<void(const QuadNode&)>& fn) const {
    if (nodes_.empty()) return;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        const QuadNode& n = nodes_[static_cast<std::size_t>(i)];
        if (!overlaps_area(n.box, r)) continue;
        if (n.leaf()) {
            fn(n);
        } else {
            for (int c = 3; c >= 0; --c) stack.push_back(n.child0 + c);
        }
    }
}

static void write_line(std::FILE* f, const Rect& b, const char* tail) {
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%s\n", b.xmin, b.ymin, b.xmax, b.ymax, tail);
}

void QuadTree::dump_csv(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "xmin,ymin,xmax,ymax,state\n");
    for_each_leaf([&](const QuadNode& n) { write_line(f, n.box, block_state_name(n.state)); });
    std::fclose(f);
}

void QuadTree::dump_color_csv(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "xmin,ymin,xmax,ymax,color\n");
    for_each_leaf([&](const QuadNode& n) {
        double c = n.state == BlockState::Colored ? n.color : 0.0;
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", n.box.xmin, n.box.ymin, n.box.xmax,
                     n.box.ymax, c);
    });
    std::fclose(f);
}

void QuadTree::dump_state_csv(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "xmin,ymin,xmax,ymax,state,color\n");
    for_each_leaf([&](const QuadNode& n) {
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%s,%.17g\n", n.box.xmin, n.box.ymin, n.box.xmax,
                     n.box.ymax, block_state_name(n.state), n.color);
    });
    std::fclose(f);
}

static std::string rect_key(const Rect& b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g|%.17g|%.17g|%.17g", b.xmin, b.ymin, b.xmax, b.ymax);
    return buf;
}

QuadTree QuadTree::load_state_csv(const std::string& path, const Rect& space) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    std::getline(in, line);  // header
    struct LeafRow {
        BlockState state;
        double color;
    };
    std::unordered_map<std::string, LeafRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        double v[4];
        for (double& x : v) {
            if (!std::getline(ss, field, ',')) throw std::runtime_error("short row in " + path);
            x = std::stod(field);
        }
        std::string state_name;
        if (!std::getline(ss, state_name, ',')) throw std::runtime_error("short row in " + path);
        if (!std::getline(ss, field, ',')) throw std::runtime_error("short row in " + path);
        rows[rect_key(Rect{v[0], v[1], v[2], v[3]})] =
            LeafRow{block_state_from_name(state_name), std::stod(field)};
    }

    // rebuild the dyadic structure: a rect present in the file is a leaf,
    // anything else must split exactly as subdivide() does
    QuadTree t(space);
    std::function<void(std::size_t)> fill = [&](std::size_t at) {
        Rect b = t.nodes_[at].box;
        auto found = rows.find(rect_key(b));
        if (found != rows.end()) {
            t.nodes_[at].state = found->second.state;
            t.nodes_[at].color = found->second.color;
            return;
        }
        if (b.width() < 1e-6) throw std::runtime_error("state file does not tile " + path);
        int c0 = t.subdivide(static_cast<int>(at));
        for (int k = 0; k < 4; ++k) fill(static_cast<std::size_t>(c0 + k));
    };
    fill(0);
    return t;
}

// --- FOV initialization ---

static void init_fov_rec(QuadTree& t, int i, const Wedge& w, double theta) {
    Rect box = t.node(i).box;
    RegionClass cls = wedge_classify(w, box);
    if (cls == RegionClass::Inside) return;
    if (cls == RegionClass::Outside) {
        t.node(i).state = BlockState::Obstructed;
        return;
    }
    if (box.width() >= theta) {
        int c0 = t.subdivide(i);
        for (int c = 0; c < 4; ++c) init_fov_rec(t, c0 + c, w, theta);
    } else {
        if (!wedge_contains(w, box.center())) t.node(i).state = BlockState::Obstructed;
    }
}

QuadTree init_fov(const Rect& space, const Target& t, const Wedge& w, double theta) {
    (void)t;
    QuadTree tree(space);
    if (!w.full()) {
        init_fov_rec(tree, tree.root(), w, theta);
        tree.merge_uniform();
    }
    return tree;
}

// --- shadow construction ---

Polygon shadow_polygon(const Rect& obstacle, const Target& t, const Rect& space) {
    if (segment_intersects_rect(t.seg, obstacle)) {
        throw std::invalid_argument("obstacle overlaps the target");
    }
    Polygon w = rect_to_polygon(space);
    const Point A = t.seg.a;
    const Point B = t.seg.b;

    // obstacle faces whose outer side holds both target endpoints bound the
    // shadow on its near side
    if (A.x <= obstacle.xmin + kEps && B.x <= obstacle.xmin + kEps)
        w = clip_halfplane(w, Point{obstacle.xmin, 0}, Vec2{1, 0});
    if (A.x >= obstacle.xmax - kEps && B.x >= obstacle.xmax - kEps)
        w = clip_halfplane(w, Point{obstacle.xmax, 0}, Vec2{-1, 0});
    if (A.y <= obstacle.ymin + kEps && B.y <= obstacle.ymin + kEps)
        w = clip_halfplane(w, Point{0, obstacle.ymin}, Vec2{0, 1});
    if (A.y >= obstacle.ymax - kEps && B.y >= obstacle.ymax - kEps)
        w = clip_halfplane(w, Point{0, obstacle.ymax}, Vec2{0, -1});

    // internal common tangents: through one endpoint, grazing the obstacle,
    // with the other endpoint on the opposite side
    const auto corners = obstacle.corners();
    const Point endpoints[2] = {A, B};
    for (int e = 0; e < 2 && !w.empty(); ++e) {
        Point from = endpoints[e];
        Point other = endpoints[1 - e];
        for (const Point& v : corners) {
            Vec2 d = v - from;
            double dn = d.norm();
            if (dn < kEps) continue;
            double tol = 1e-9 * (dn + obstacle.width() + obstacle.height());
            double lo = 0, hi = 0;
            for (const Point& c : corners) {
                double s = d.cross(c - from);
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
            double so = d.cross(other - from);
            if (lo >= -tol && so <= tol) {
                // obstacle weakly left, other endpoint weakly right: keep left
                w = clip_halfplane(w, from, Vec2{-d.y, d.x});
            } else if (hi <= tol && so >= -tol) {
                w = clip_halfplane(w, from, Vec2{d.y, -d.x});
            }
            if (w.empty()) break;
        }
    }
    return w;
}

// --- shadow application ---

static void apply_shadow_rec(QuadTree& t, int i, const Polygon& shadow, double theta) {
    Rect box = t.node(i).box;
    RegionClass cls = classify_rect_vs_polygon(box, shadow);
    if (cls == RegionClass::Outside) return;
    if (!t.node(i).leaf()) {
        if (cls == RegionClass::Inside) {
            t.node(i).child0 = -1;
            t.node(i).state = BlockState::Obstructed;
            return;
        }
        int c0 = t.node(i).child0;
        for (int c = 0; c < 4; ++c) apply_shadow_rec(t, c0 + c, shadow, theta);
        return;
    }
    if (t.node(i).state != BlockState::UnassignedVisible) return;
    if (cls == RegionClass::Inside) {
        t.node(i).state = BlockState::Obstructed;
        return;
    }
    if (box.width() >= theta) {
        int c0 = t.subdivide(i);
        for (int c = 0; c < 4; ++c) apply_shadow_rec(t, c0 + c, shadow, theta);
    } else if (point_in_polygon(box.center(), shadow)) {
        t.node(i).state = BlockState::Obstructed;
    }
}

void apply_shadow(QuadTree& tree, const Polygon& shadow, double theta) {
    if (shadow.empty()) return;
    apply_shadow_rec(tree, tree.root(), shadow, theta);
}

// --- case (iii) test ---

static bool fully_obstructed_rec(const QuadTree& t, int i, const Rect& r) {
    const QuadNode& n = t.node(i);
    if (!overlaps_area(n.box, r)) return true;
    if (n.leaf()) return n.state == BlockState::Obstructed;
    for (int c = 0; c < 4; ++c) {
        if (!fully_obstructed_rec(t, n.child0 + c, r)) return false;
    }
    return true;
}

bool is_fully_obstructed(const QuadTree& tree, const Rect& r) {
    if (tree.empty()) return false;
    return fully_obstructed_rec(tree, tree.root(), r);
}

// --- full construction loop ---

RegionBuildResult build_visible_region(const Rect& space, const Target& t,
                                       const VisionParams& vp, const Wedge& fov,
                                       const std::vector<ObstacleRect>& obstacles,
                                       const StrTree<int>& idx, double theta) {
    RegionBuildResult out;
    out.tree = init_fov(space, t, fov, theta);
    double limit = d_max(t.length(), vp.mu_arcmin);
    auto prune = [&](const Rect& r) {
        if (!fov.full() && wedge_classify(fov, r) == RegionClass::Outside) return true;
        return is_fully_obstructed(out.tree, r);
    };
    auto stream = idx.nearest_stream(t.seg, limit, prune, &out.stats);
    while (const auto* e = stream.next()) {
        Polygon shadow = shadow_polygon(obstacles[static_cast<std::size_t>(e->item)].rect, t, space);
        if (shadow.empty()) continue;
        apply_shadow(out.tree, shadow, theta);
        out.tree.merge_uniform();
        ++out.shadows_applied;
    }
    return out;
}

}  // namespace vcm
