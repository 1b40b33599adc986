#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vcm/region.hpp"
#include "vcm/scene.hpp"
#include "vcm/visibility.hpp"

namespace vcm {

// exact point model: visibility color at p, zero when any obstacle cuts the
// sightline triangle
double oracle_color(Point p, const Target& t, const VisionParams& vp,
                    std::span<const Rect> obstacles);

// straightforward reference map: uniform n x n grid over bounds, each cell
// colored by the exact model at its center
struct BaselineGrid {
    Rect bounds;
    int n = 0;
    std::vector<double> colors;  // row-major, iy * n + ix, iy from ymin

    double at(Point p) const;
    Rect cell_rect(int ix, int iy) const;
};

BaselineGrid baseline_vcm(const Rect& bounds, const Target& t, const VisionParams& vp,
                          std::span<const Rect> obstacles, int n);

// uniform view over any piecewise-constant color map
class PieceMapView {
public:
    using PieceFn = std::function<void(const Rect&, double)>;

    static PieceMapView of(const QuadTree& tree);
    static PieceMapView of(const BaselineGrid& grid);

    const Rect& bounds() const { return bounds_; }
    // pieces intersecting clip, emitted clipped to it
    void pieces_in(const Rect& clip, const PieceFn& fn) const;

private:
    Rect bounds_;
    std::function<void(const Rect&, const PieceFn&)> enumerate_;
};

struct ErrorReport {
    double error_signed = 0.0;   // integral (c_ref - c_cand) dA / integral c_ref dA
    double error_abs = 0.0;      // same with |.|
    double deviation_mass = 0.0; // integral |c_ref - c_cand| dA
    double reference_mass = 0.0; // integral c_ref dA
    std::size_t pieces = 0;      // overlay pieces visited
};

// area-weighted deviation of candidate from reference; throws when the two
// maps cover different bounds or the reference mass is zero
ErrorReport measured_error(const PieceMapView& reference, const PieceMapView& candidate);

}  // namespace vcm
