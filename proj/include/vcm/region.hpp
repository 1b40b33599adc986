#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vcm/geometry.hpp"
#include "vcm/rtree.hpp"
#include "vcm/scene.hpp"
#include "vcm/visibility.hpp"

namespace vcm {

enum class BlockState : unsigned char { UnassignedVisible, Obstructed, Colored };

const char* block_state_name(BlockState s);
BlockState block_state_from_name(const std::string& name);

struct QuadNode {
    Rect box;
    BlockState state = BlockState::UnassignedVisible;
    double color = 0.0;
    int child0 = -1;  // index of first of four children, -1 for a leaf

    bool leaf() const { return child0 < 0; }
};

// region quadtree over the query space; children tile the parent exactly
class QuadTree {
public:
    QuadTree() = default;
    explicit QuadTree(const Rect& space);

    const Rect& space() const { return nodes_[0].box; }
    bool empty() const { return nodes_.empty(); }

    QuadNode& node(int i) { return nodes_[static_cast<std::size_t>(i)]; }
    const QuadNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    int root() const { return 0; }
    std::size_t node_count() const { return nodes_.size(); }

    // splits a leaf into four equal children inheriting its state; returns child0
    int subdivide(int i);

    // canonical form: collapse every sibling group of uniform leaves, bottom-up
    void merge_uniform();

    int leaf_at(Point p) const;
    std::size_t leaf_count() const;
    void for_each_leaf(const std::function<void(const QuadNode&)>& fn) const;

    // leaves intersecting r (open-interior overlap)
    void for_each_leaf_in(const Rect& r,
                          const std::function<void(const QuadNode&)>& fn) const;

    void dump_csv(const std::string& path) const;          // xmin,ymin,xmax,ymax,state
    void dump_color_csv(const std::string& path) const;    // xmin,ymin,xmax,ymax,color
    void dump_state_csv(const std::string& path) const;    // both, for persistence
    static QuadTree load_state_csv(const std::string& path, const Rect& space);

private:
    std::vector<QuadNode> nodes_;
};

// FOV wedge initialization: outside-wedge blocks become Obstructed
QuadTree init_fov(const Rect& space, const Target& t, const Wedge& w, double theta);

// convex shadow of an obstacle: every viewpoint whose sight triangle to the
// target meets the obstacle; clipped to the query space
Polygon shadow_polygon(const Rect& obstacle, const Target& t, const Rect& space);

void apply_shadow(QuadTree& tree, const Polygon& shadow, double theta);

bool is_fully_obstructed(const QuadTree& tree, const Rect& r);

struct RegionBuildResult {
    QuadTree tree;
    AccessStats stats;
    std::size_t shadows_applied = 0;
};

RegionBuildResult build_visible_region(const Rect& space, const Target& t,
                                       const VisionParams& vp, const Wedge& fov,
                                       const std::vector<ObstacleRect>& obstacles,
                                       const StrTree<int>& idx, double theta);

}  // namespace vcm
