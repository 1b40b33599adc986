#pragma once

#include <array>
#include <string>
#include <vector>

#include "vcm/partition.hpp"
#include "vcm/region.hpp"
#include "vcm/rtree.hpp"
#include "vcm/scene.hpp"

namespace vcm {

enum class Variant { Exact, Mbr, Tangential, Baseline };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// R-tree over the equi-visible cells (or their approximations), local frame
struct ColorTree {
    const CellSet* cells = nullptr;
    Variant variant = Variant::Exact;
    StrTree<int> index;
    std::vector<std::array<Point, 4>> quads;  // tangential trapezoids, cell order
};

ColorTree build_color_tree(const CellSet& cells, Variant v, std::size_t page_size = 1024);

// cell indices whose (approximated) shape meets the block, ascending
std::vector<int> color_tree_query(const ColorTree& ct, const Target& t, const Rect& block,
                                  AccessStats* stats = nullptr);

struct VcmStats {
    AccessStats obstacle;
    AccessStats color;
    std::size_t shadows_applied = 0;
    std::size_t leaves_colored = 0;
    std::size_t leaves_obstructed = 0;
    double elapsed_partition_s = 0.0;
    double elapsed_region_s = 0.0;
    double elapsed_merge_s = 0.0;
};

struct VCMap {
    QuadTree tree;
    CellSet cells;
    Variant variant = Variant::Exact;
    double theta = 0.0;  // effective block floor, after the multiplier
    VcmStats stats;
};

// color every unassigned-visible leaf through the cell index; leaves outside
// every cell fall back to the point model at their center
void construct_vcm(QuadTree& tree, const ColorTree& ct, const Target& t,
                   const VisionParams& vp, double theta, AccessStats* stats = nullptr);

// full pipeline: partition, visible region, coloring; v must not be Baseline
VCMap build_vcm(const Scene& scene, const RunConfig& cfg, Variant v);

// reduce a map built with a 360 degree field of view to one wedge, reusing
// every computed color; leaf-for-leaf identical to a from-scratch build
QuadTree mask_to_wedge(const QuadTree& full, const Wedge& w, double theta);

// target perpendicular to the gaze, centered on the viewer, sized so its
// visual angle falls to mu exactly at distance d_max_in
Target viewer_centric_target(Point q, double gaze_deg, double d_max_in, double mu_arcmin);

void export_vcm_csv(const QuadTree& tree, const std::string& path);

}  // namespace vcm
