#pragma once

#include <span>

#include "vcm/geometry.hpp"

namespace vcm {

// line-segment target with a local frame: x along the segment, y along its
// left normal, origin at the midpoint
struct Target {
    Segment seg;

    double length() const { return seg.length(); }
    Point midpoint() const { return seg.midpoint(); }
    Vec2 axis() const {
        Vec2 d = seg.b - seg.a;
        double n = d.norm();
        return n > 0 ? d * (1.0 / n) : Vec2{1, 0};
    }
    Point to_local(Point p) const {
        Vec2 u = axis();
        Vec2 v = p - midpoint();
        return {v.dot(u), v.cross(u) * -1.0};  // y positive on the left of a->b
    }
    Point from_local(Point q) const {
        Vec2 u = axis();
        Vec2 n{-u.y, u.x};
        return midpoint() + u * q.x + n * q.y;
    }
};

enum class NearPointRule { Clamp, Zero };

struct VisionParams {
    double mu_arcmin = 4.0;  // angular resolution
    double d0 = 0.0;         // near point distance, must be > 0
    double fov_deg = 120.0;
    double gaze_deg = 0.0;   // CCW from +x
    NearPointRule near_rule = NearPointRule::Clamp;

    double mu_deg() const { return mu_arcmin / 60.0; }
};

// V = 2*atan(S / 2D), degrees; throws std::invalid_argument on S<=0 or D<=0
double visual_angle_deg(double S, double D);

// S_alpha = (alpha/90) * S for alpha in [0, 90]
double perceived_length(double S, double alpha_deg);

struct ViewGeometry {
    double dist = 0.0;       // distance to the target midpoint
    double alpha_deg = 90.0; // acute angle between sightline and target line
    int quadrant = 1;        // 1..4 in the target-local frame
};

ViewGeometry view_geometry(Point p, const Target& t);

// distance at which the full target subtends exactly mu
double d_max(double S, double mu_arcmin);

// visual angle at the near point; colors are normalized against it
double normalization_angle(const Target& t, const VisionParams& vp);

// normalized visibility in [0, 1]; 0 once the perceived angle drops under mu
double visibility_color(Point p, const Target& t, const VisionParams& vp);
// same model in target polar coordinates (used by the cell grid)
double visibility_color_da(double dist, double alpha_deg, double S, const VisionParams& vp);

// no obstacle intersects the sightline triangle p-target; obstacles that
// overlap the target itself are ignored
bool fully_visible(Point p, const Target& t, std::span<const Rect> obstacles);

}  // namespace vcm
