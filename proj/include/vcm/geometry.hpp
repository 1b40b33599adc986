#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace vcm {

inline constexpr double kEps = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

using Point = Vec2;

struct Segment {
    Point a;
    Point b;

    double length() const { return (b - a).norm(); }
    Point midpoint() const { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }
};

struct Rect {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double area() const { return width() * height(); }
    Point center() const { return {(xmin + xmax) / 2.0, (ymin + ymax) / 2.0}; }
    std::array<Point, 4> corners() const {
        return {Point{xmin, ymin}, Point{xmax, ymin}, Point{xmax, ymax}, Point{xmin, ymax}};
    }
    bool contains(Point p, double eps = kEps) const {
        return p.x >= xmin - eps && p.x <= xmax + eps && p.y >= ymin - eps && p.y <= ymax + eps;
    }
    bool contains_strict(Point p, double eps = kEps) const {
        return p.x > xmin + eps && p.x < xmax - eps && p.y > ymin + eps && p.y < ymax - eps;
    }
    // touching counts as intersecting
    bool intersects(const Rect& o, double eps = kEps) const {
        return xmin <= o.xmax + eps && o.xmin <= xmax + eps &&
               ymin <= o.ymax + eps && o.ymin <= ymax + eps;
    }
    Rect expanded(const Rect& o) const {
        return {std::min(xmin, o.xmin), std::min(ymin, o.ymin),
                std::max(xmax, o.xmax), std::max(ymax, o.ymax)};
    }
    static Rect of_point(Point p) { return {p.x, p.y, p.x, p.y}; }
};

// sign of the turn a->b->c: +1 left, -1 right, 0 collinear (within kEps)
int orientation(Point a, Point b, Point c);

bool on_segment(Point p, const Segment& s, double eps = kEps);

// touching counts as intersecting
bool segments_intersect(const Segment& s1, const Segment& s2);
bool segment_intersects_rect(const Segment& s, const Rect& r);
bool triangle_intersects_rect(Point a, Point b, Point c, const Rect& r);

double point_segment_distance(Point p, const Segment& s);
// 0 when they intersect or touch
double rect_segment_mindist(const Rect& r, const Segment& s);

// extreme corners of r as seen from an outside point p; .first is the
// counterclockwise-most ("left"), .second the clockwise-most ("right").
// Throws std::invalid_argument when p is strictly inside r.
std::pair<Point, Point> tangent_vertices(Point p, const Rect& r);

struct Polygon {
    std::vector<Point> v;  // counterclockwise, simple

    bool empty() const { return v.size() < 3; }
    std::size_t size() const { return v.size(); }
};

double polygon_area(const Polygon& poly);
// boundary counts as inside
bool point_in_polygon(Point p, const Polygon& poly, double eps = kEps);
double polygon_boundary_distance(Point p, const Polygon& poly);
Rect polygon_bbox(const Polygon& poly);

// keeps {p : (p - p0) . n >= -eps}
Polygon clip_halfplane(const Polygon& poly, Point p0, Vec2 n, double eps = kEps);
Polygon rect_to_polygon(const Rect& r);

enum class RegionClass { Inside, Outside, Partial };

// Inside: block fully within poly; Outside: disjoint interiors; else Partial.
// Conservative: boundary contact may be reported as Partial.
RegionClass classify_rect_vs_polygon(const Rect& block, const Polygon& poly);

// circular sector of directions around apex; fov_deg == 360 means everything
struct Wedge {
    Point apex;
    double gaze_deg = 0.0;
    double fov_deg = 360.0;

    bool full() const { return fov_deg >= 360.0 - kEps; }
};

// signed difference a - b wrapped to (-180, 180]
double angle_diff_deg(double a, double b);

bool wedge_contains(const Wedge& w, Point p);
RegionClass wedge_classify(const Wedge& w, const Rect& block);

}  // namespace vcm
