#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "vcm/visibility.hpp"

namespace vcm {

// annular sector in the target-local frame: distance ring x viewing-angle band,
// replicated into the four quadrants by symmetry
struct Cell {
    double d_lo = 0.0;
    double d_hi = 0.0;
    double gamma_lo = 0.0;  // degrees, [0, 90]
    double gamma_hi = 0.0;
    int quadrant = 1;       // 1..4
    int ring = 0;
    double color = 0.0;
};

struct CellSet {
    std::vector<Cell> cells;
    std::vector<double> radii;                     // ring boundaries, d0 .. d_max
    std::vector<std::vector<double>> ring_bounds;  // per ring, descending 90 .. 0
    double target_len = 0.0;
    double d0 = 0.0;
    double mu_arcmin = 0.0;
    double v_norm_deg = 0.0;
    double dmax = 0.0;
    double theta = 0.0;  // finest cell extent, before any multiplier

    std::size_t ring_count() const { return radii.empty() ? 0 : radii.size() - 1; }
};

// ring radii where the full-target visual angle steps down by exactly mu,
// starting at d0; throws when the near-point angle is already under mu
std::vector<double> build_distance_partitions(const Target& t, const VisionParams& vp);

// descending viewing-angle boundaries for one ring, starting at 90; the
// perceived visual angle at the ring mid-distance steps by mu between entries
std::vector<double> build_angle_partitions(double d_lo, double d_hi, const Target& t,
                                           const VisionParams& vp);

CellSet build_cells(const Target& t, const VisionParams& vp);

// min over cells of min(radial width, inner arc width)
double compute_theta(const CellSet& cs);

// angular interval of the cell in the local frame, degrees
std::pair<double, double> cell_theta_range_deg(const Cell& c);

double cell_area(const Cell& c);
bool cell_contains_local(const Cell& c, Point local, double eps = kEps);

// bounding box of the sector, local frame
Rect approximate_cell_mbr(const Cell& c);
// covering trapezoid: inner chord, radial edges, outer tangent; local frame
std::array<Point, 4> approximate_cell_tangential(const Cell& c);

bool sector_intersects_quad(const Cell& c, const std::array<Point, 4>& quad);
bool quad_intersects_quad(const std::array<Point, 4>& a, const std::array<Point, 4>& b);

// conservative total color deviation (color * area) introduced by coloring
// through the given approximation instead of the exact sectors
double error_bound_mbr(const CellSet& cs);
double error_bound_tangential(const CellSet& cs);

void export_cells_csv(const CellSet& cs, std::ostream& os);

}  // namespace vcm
