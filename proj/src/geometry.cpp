#include "vcm/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace vcm {

int orientation(Point a, Point b, Point c) {
    double v = (b - a).cross(c - a);
    if (v > kEps) return 1;
    if (v < -kEps) return -1;
    return 0;
}

bool on_segment(Point p, const Segment& s, double eps) {
    return point_segment_distance(p, s) <= eps;
}

bool segments_intersect(const Segment& s1, const Segment& s2) {
    int o1 = orientation(s1.a, s1.b, s2.a);
    int o2 = orientation(s1.a, s1.b, s2.b);
    int o3 = orientation(s2.a, s2.b, s1.a);
    int o4 = orientation(s2.a, s2.b, s1.b);
    // a proper crossing needs strict straddling on both sides; anything with a
    // collinear verdict falls through to the distance checks (an endpoint near
    // the epsilon band would otherwise pair a 0 with a +/-1 and report far
    // apart collinear segments as crossing)
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(s2.a, s1) || on_segment(s2.b, s1) ||
           on_segment(s1.a, s2) || on_segment(s1.b, s2);
}

bool segment_intersects_rect(const Segment& s, const Rect& r) {
    if (r.contains(s.a) || r.contains(s.b)) return true;
    auto c = r.corners();
    for (int i = 0; i < 4; ++i) {
        if (segments_intersect(s, {c[i], c[(i + 1) % 4]})) return true;
    }
    return false;
}

namespace {

bool point_in_triangle(Point p, Point a, Point b, Point c) {
    double d1 = (b - a).cross(p - a);
    double d2 = (c - b).cross(p - b);
    double d3 = (a - c).cross(p - c);
    bool has_neg = d1 < -kEps || d2 < -kEps || d3 < -kEps;
    bool has_pos = d1 > kEps || d2 > kEps || d3 > kEps;
    return !(has_neg && has_pos);
}

}  // namespace

bool triangle_intersects_rect(Point a, Point b, Point c, const Rect& r) {
    if (r.contains(a) || r.contains(b) || r.contains(c)) return true;
    const Segment edges[3] = {{a, b}, {b, c}, {c, a}};
    for (const auto& e : edges) {
        if (segment_intersects_rect(e, r)) return true;
    }
    for (Point q : r.corners()) {
        if (point_in_triangle(q, a, b, c)) return true;
    }
    return false;
}

double point_segment_distance(Point p, const Segment& s) {
    Vec2 d = s.b - s.a;
    double len2 = d.dot(d);
    if (len2 <= kEps * kEps) return (p - s.a).norm();
    double t = std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0);
    return (p - (s.a + d * t)).norm();
}

namespace {

double segment_segment_distance(const Segment& s1, const Segment& s2) {
    if (segments_intersect(s1, s2)) return 0.0;
    return std::min({point_segment_distance(s1.a, s2), point_segment_distance(s1.b, s2),
                     point_segment_distance(s2.a, s1), point_segment_distance(s2.b, s1)});
}

}  // namespace

double rect_segment_mindist(const Rect& r, const Segment& s) {
    if (segment_intersects_rect(s, r)) return 0.0;
    auto c = r.corners();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        best = std::min(best, segment_segment_distance({c[i], c[(i + 1) % 4]}, s));
    }
    return best;
}

std::pair<Point, Point> tangent_vertices(Point p, const Rect& r) {
    if (r.contains_strict(p)) {
        throw std::invalid_argument("tangent_vertices: point inside rectangle");
    }
    Vec2 ref = r.center() - p;
    double best_left = -std::numeric_limits<double>::infinity();
    double best_right = std::numeric_limits<double>::infinity();
    double dist_left = 0.0, dist_right = 0.0;
    Point left{}, right{};
    for (Point c : r.corners()) {
        Vec2 v = c - p;
        double ang = std::atan2(ref.cross(v), ref.dot(v));
        double d = v.norm();
        // ties (collinear corners) resolve to the corner nearer p
        if (ang > best_left + kEps || (ang > best_left - kEps && d < dist_left)) {
            best_left = std::max(best_left, ang);
            dist_left = d;
            left = c;
        }
        if (ang < best_right - kEps || (ang < best_right + kEps && d < dist_right)) {
            best_right = std::min(best_right, ang);
            dist_right = d;
            right = c;
        }
    }
    return {left, right};
}

double polygon_area(const Polygon& poly) {
    if (poly.empty()) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < poly.v.size(); ++i) {
        Point a = poly.v[i];
        Point b = poly.v[(i + 1) % poly.v.size()];
        s += a.cross(b);
    }
    return s / 2.0;
}

bool point_in_polygon(Point p, const Polygon& poly, double eps) {
    if (poly.empty()) return false;
    std::size_t n = poly.v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (point_segment_distance(p, {poly.v[i], poly.v[(i + 1) % n]}) <= eps) return true;
    }
    bool in = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        Point a = poly.v[i], b = poly.v[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x) in = !in;
        }
    }
    return in;
}

double polygon_boundary_distance(Point p, const Polygon& poly) {
    if (poly.v.empty()) return std::numeric_limits<double>::infinity();
    if (poly.v.size() == 1) return (p - poly.v[0]).norm();
    double best = std::numeric_limits<double>::infinity();
    std::size_t n = poly.v.size();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, point_segment_distance(p, {poly.v[i], poly.v[(i + 1) % n]}));
    }
    return best;
}

Rect polygon_bbox(const Polygon& poly) {
    Rect r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (Point p : poly.v) {
        r.xmin = std::min(r.xmin, p.x);
        r.ymin = std::min(r.ymin, p.y);
        r.xmax = std::max(r.xmax, p.x);
        r.ymax = std::max(r.ymax, p.y);
    }
    return r;
}

Polygon clip_halfplane(const Polygon& poly, Point p0, Vec2 n, double eps) {
    Polygon out;
    std::size_t cnt = poly.v.size();
    if (cnt == 0) return out;
    out.v.reserve(cnt + 2);
    for (std::size_t i = 0; i < cnt; ++i) {
        Point cur = poly.v[i];
        Point nxt = poly.v[(i + 1) % cnt];
        double dc = (cur - p0).dot(n);
        double dn = (nxt - p0).dot(n);
        if (dc >= -eps) out.v.push_back(cur);
        if ((dc > eps && dn < -eps) || (dc < -eps && dn > eps)) {
            double t = dc / (dc - dn);
            out.v.push_back(cur + (nxt - cur) * t);
        }
    }
    // drop duplicate consecutive vertices introduced by clipping
    Polygon clean;
    for (Point p : out.v) {
        if (clean.v.empty() || (p - clean.v.back()).norm() > eps) clean.v.push_back(p);
    }
    while (clean.v.size() > 1 && (clean.v.front() - clean.v.back()).norm() <= eps) {
        clean.v.pop_back();
    }
    if (clean.v.size() < 3) clean.v.clear();
    return clean;
}

Polygon rect_to_polygon(const Rect& r) {
    Polygon p;
    p.v = {Point{r.xmin, r.ymin}, Point{r.xmax, r.ymin}, Point{r.xmax, r.ymax}, Point{r.xmin, r.ymax}};
    return p;
}

RegionClass classify_rect_vs_polygon(const Rect& block, const Polygon& poly) {
    if (poly.empty()) return RegionClass::Outside;
    std::size_t n = poly.v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (segment_intersects_rect({poly.v[i], poly.v[(i + 1) % n]}, block)) {
            return RegionClass::Partial;
        }
    }
    if (point_in_polygon(block.center(), poly)) return RegionClass::Inside;
    for (Point p : poly.v) {
        if (block.contains_strict(p)) return RegionClass::Partial;  // polygon inside block
    }
    return RegionClass::Outside;
}

double angle_diff_deg(double a, double b) {
    double d = std::fmod(a - b, 360.0);
    if (d <= -180.0) d += 360.0;
    if (d > 180.0) d -= 360.0;
    return d;
}

bool wedge_contains(const Wedge& w, Point p) {
    if (w.full()) return true;
    Vec2 v = p - w.apex;
    if (v.norm() <= kEps) return true;
    double ang = rad2deg(std::atan2(v.y, v.x));
    return std::abs(angle_diff_deg(ang, w.gaze_deg)) <= w.fov_deg / 2.0 + kEps;
}

namespace {

bool ray_hits_rect(Point origin, double dir_deg, const Rect& r) {
    double dx = std::cos(deg2rad(dir_deg));
    double dy = std::sin(deg2rad(dir_deg));
    double t0 = 0.0;
    double t1 = std::numeric_limits<double>::infinity();
    const double lo[2] = {r.xmin, r.ymin};
    const double hi[2] = {r.xmax, r.ymax};
    const double o[2] = {origin.x, origin.y};
    const double d[2] = {dx, dy};
    for (int i = 0; i < 2; ++i) {
        if (std::abs(d[i]) < 1e-15) {
            if (o[i] < lo[i] - kEps || o[i] > hi[i] + kEps) return false;
        } else {
            double ta = (lo[i] - o[i]) / d[i];
            double tb = (hi[i] - o[i]) / d[i];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
        }
    }
    return t0 <= t1 + kEps;
}

// cone of directions dir_deg +- half_deg from apex; does it meet the rect?
bool cone_meets_rect(Point apex, double dir_deg, double half_deg, const Rect& r) {
    if (r.contains(apex)) return true;
    for (Point c : r.corners()) {
        Vec2 v = c - apex;
        if (v.norm() <= kEps) return true;
        double ang = rad2deg(std::atan2(v.y, v.x));
        if (std::abs(angle_diff_deg(ang, dir_deg)) <= half_deg + kEps) return true;
    }
    return ray_hits_rect(apex, dir_deg - half_deg, r) || ray_hits_rect(apex, dir_deg + half_deg, r);
}

}  // namespace

RegionClass wedge_classify(const Wedge& w, const Rect& block) {
    if (w.full()) return RegionClass::Inside;
    double half = w.fov_deg / 2.0;
    if (!cone_meets_rect(w.apex, w.gaze_deg, half, block)) return RegionClass::Outside;
    double anti_half = (360.0 - w.fov_deg) / 2.0;
    if (!cone_meets_rect(w.apex, w.gaze_deg + 180.0, anti_half, block)) return RegionClass::Inside;
    return RegionClass::Partial;
}

}  // namespace vcm
