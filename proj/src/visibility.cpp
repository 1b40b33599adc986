#include "vcm/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vcm {

double visual_angle_deg(double S, double D) {
    if (S <= 0.0) throw std::invalid_argument("visual_angle: size must be positive");
    if (D <= 0.0) throw std::invalid_argument("visual_angle: distance must be positive");
    return 2.0 * rad2deg(std::atan(S / (2.0 * D)));
}

double perceived_length(double S, double alpha_deg) {
    if (S <= 0.0) throw std::invalid_argument("perceived_length: size must be positive");
    if (alpha_deg < 0.0 || alpha_deg > 90.0 + kEps) {
        throw std::invalid_argument("perceived_length: angle outside [0, 90]");
    }
    return std::min(alpha_deg, 90.0) / 90.0 * S;
}

ViewGeometry view_geometry(Point p, const Target& t) {
    Point q = t.to_local(p);
    ViewGeometry g;
    g.dist = q.norm();
    if (g.dist <= kEps) {
        g.alpha_deg = 90.0;
        g.quadrant = 1;
        return g;
    }
    double phi = rad2deg(std::atan2(std::abs(q.y), std::abs(q.x)));  // [0, 90]
    g.alpha_deg = phi;
    if (q.x >= 0.0) {
        g.quadrant = q.y >= 0.0 ? 1 : 4;
    } else {
        g.quadrant = q.y >= 0.0 ? 2 : 3;
    }
    return g;
}

double d_max(double S, double mu_arcmin) {
    if (S <= 0.0 || mu_arcmin <= 0.0) throw std::invalid_argument("d_max: bad parameters");
    return S / (2.0 * std::tan(deg2rad(mu_arcmin / 60.0 / 2.0)));
}

double normalization_angle(const Target& t, const VisionParams& vp) {
    return visual_angle_deg(t.length(), vp.d0);
}

double visibility_color_da(double dist, double alpha_deg, double S, const VisionParams& vp) {
    if (vp.d0 <= 0.0) throw std::invalid_argument("visibility_color: near point must be positive");
    if (dist < vp.d0 && vp.near_rule == NearPointRule::Zero) return 0.0;
    double d_eff = std::max(dist, vp.d0);
    double s_alpha = perceived_length(S, std::clamp(alpha_deg, 0.0, 90.0));
    if (s_alpha <= 0.0) return 0.0;
    double v = visual_angle_deg(s_alpha, d_eff);
    if (v < vp.mu_deg()) return 0.0;
    double v_norm = visual_angle_deg(S, vp.d0);
    return std::min(v / v_norm, 1.0);
}

double visibility_color(Point p, const Target& t, const VisionParams& vp) {
    ViewGeometry g = view_geometry(p, t);
    return visibility_color_da(g.dist, g.alpha_deg, t.length(), vp);
}

bool fully_visible(Point p, const Target& t, std::span<const Rect> obstacles) {
    for (const Rect& o : obstacles) {
        if (segment_intersects_rect(t.seg, o)) continue;  // overlaps the target itself
        if (triangle_intersects_rect(p, t.seg.a, t.seg.b, o)) return false;
    }
    return true;
}

}  // namespace vcm
