#include "vcm/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace vcm {

std::vector<double> build_distance_partitions(const Target& t, const VisionParams& vp) {
    double S = t.length();
    double mu = vp.mu_deg();
    if (vp.d0 <= 0.0) throw std::invalid_argument("distance partitions: near point must be positive");
    double v0 = visual_angle_deg(S, vp.d0);
    if (v0 <= mu) throw std::invalid_argument("distance partitions: target already imperceptible at d0");
    int m = static_cast<int>(std::floor((v0 - mu) / mu)) + 1;
    std::vector<double> radii(m);
    radii[0] = vp.d0;
    for (int i = 1; i < m; ++i) {
        double vi = v0 - i * mu;
        radii[i] = S / (2.0 * std::tan(deg2rad(vi / 2.0)));
    }
    return radii;
}

std::vector<double> build_angle_partitions(double d_lo, double d_hi, const Target& t,
                                           const VisionParams& vp) {
    if (!(d_lo > 0.0) || !(d_hi > d_lo)) {
        throw std::invalid_argument("angle partitions: bad ring bounds");
    }
    double S = t.length();
    double mu = vp.mu_deg();
    double dp = (d_lo + d_hi) / 2.0;
    double v0 = visual_angle_deg(S, dp);
    std::vector<double> bounds{90.0};
    for (int j = 1; v0 - j * mu >= mu; ++j) {
        double sj = 2.0 * dp * std::tan(deg2rad((v0 - j * mu) / 2.0));
        bounds.push_back(sj * 90.0 / S);
    }
    return bounds;
}

CellSet build_cells(const Target& t, const VisionParams& vp) {
    CellSet cs;
    cs.target_len = t.length();
    cs.d0 = vp.d0;
    cs.mu_arcmin = vp.mu_arcmin;
    cs.v_norm_deg = normalization_angle(t, vp);
    cs.dmax = d_max(cs.target_len, vp.mu_arcmin);

    cs.radii = build_distance_partitions(t, vp);
    if (cs.dmax > cs.radii.back() + kEps) {
        cs.radii.push_back(cs.dmax);  // closing ring out to imperceptibility
    }

    std::size_t rings = cs.radii.size() - 1;
    cs.ring_bounds.reserve(rings);
    for (std::size_t i = 0; i < rings; ++i) {
        auto bounds = build_angle_partitions(cs.radii[i], cs.radii[i + 1], t, vp);
        if (bounds.back() > kEps) bounds.push_back(0.0);  // close the band tiling
        cs.ring_bounds.push_back(std::move(bounds));
    }

    std::size_t total = 0;
    for (const auto& b : cs.ring_bounds) total += (b.size() - 1) * 4;
    cs.cells.reserve(total);
    for (std::size_t i = 0; i < rings; ++i) {
        const auto& bounds = cs.ring_bounds[i];
        double d_lo = cs.radii[i];
        double d_hi = cs.radii[i + 1];
        double d_cen = (d_lo + d_hi) / 2.0;
        for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
            double g_hi = bounds[j];
            double g_lo = bounds[j + 1];
            double color = visibility_color_da(d_cen, (g_lo + g_hi) / 2.0, cs.target_len, vp);
            for (int q = 1; q <= 4; ++q) {
                cs.cells.push_back(Cell{d_lo, d_hi, g_lo, g_hi, q, static_cast<int>(i), color});
            }
        }
    }
    cs.theta = compute_theta(cs);
    return cs;
}

double compute_theta(const CellSet& cs) {
    double best = std::numeric_limits<double>::infinity();
    for (const Cell& c : cs.cells) {
        if (c.quadrant != 1) continue;
        double radial = c.d_hi - c.d_lo;
        double arc = c.d_lo * deg2rad(c.gamma_hi - c.gamma_lo);
        best = std::min(best, std::min(radial, arc));
    }
    return best;
}

std::pair<double, double> cell_theta_range_deg(const Cell& c) {
    switch (c.quadrant) {
        case 1: return {c.gamma_lo, c.gamma_hi};
        case 2: return {180.0 - c.gamma_hi, 180.0 - c.gamma_lo};
        case 3: return {180.0 + c.gamma_lo, 180.0 + c.gamma_hi};
        default: return {-c.gamma_hi, -c.gamma_lo};
    }
}

double cell_area(const Cell& c) {
    double dth = deg2rad(c.gamma_hi - c.gamma_lo);
    return dth / 2.0 * (c.d_hi * c.d_hi - c.d_lo * c.d_lo);
}

bool cell_contains_local(const Cell& c, Point local, double eps) {
    double r = local.norm();
    if (r < c.d_lo - eps || r > c.d_hi + eps) return false;
    auto [tlo, thi] = cell_theta_range_deg(c);
    if (r <= eps) return c.d_lo <= eps;
    double ang = rad2deg(std::atan2(local.y, local.x));
    double half = (thi - tlo) / 2.0;
    double aeps = std::max(kEps, rad2deg(eps / r));
    return std::abs(angle_diff_deg(ang, (tlo + thi) / 2.0)) <= half + aeps;
}

namespace {

Point polar(double r, double theta_deg) {
    double th = deg2rad(theta_deg);
    return {r * std::cos(th), r * std::sin(th)};
}

bool point_in_convex_quad(Point p, const std::array<Point, 4>& q) {
    bool pos = false, neg = false;
    for (int i = 0; i < 4; ++i) {
        double s = (q[(i + 1) % 4] - q[i]).cross(p - q[i]);
        if (s > kEps) pos = true;
        if (s < -kEps) neg = true;
    }
    return !(pos && neg);
}

bool segment_hits_arc(Point a, Point b, double r, double mid_deg, double half_deg) {
    Vec2 d = b - a;
    double A = d.dot(d);
    if (A <= kEps * kEps) return false;
    double B = 2.0 * a.dot(d);
    double C = a.dot(a) - r * r;
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return false;
    double sq = std::sqrt(disc);
    for (double tt : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
        if (tt < -kEps || tt > 1.0 + kEps) continue;
        Point p = a + d * tt;
        double ang = rad2deg(std::atan2(p.y, p.x));
        if (std::abs(angle_diff_deg(ang, mid_deg)) <= half_deg + kEps) return true;
    }
    return false;
}

}  // namespace

bool sector_intersects_quad(const Cell& c, const std::array<Point, 4>& quad) {
    auto [tlo, thi] = cell_theta_range_deg(c);
    double mid = (tlo + thi) / 2.0;
    double half = (thi - tlo) / 2.0;

    for (Point p : quad) {
        double r = p.norm();
        if (r < c.d_lo - kEps || r > c.d_hi + kEps) continue;
        if (r <= kEps) return true;
        double ang = rad2deg(std::atan2(p.y, p.x));
        if (std::abs(angle_diff_deg(ang, mid)) <= half + kEps) return true;
    }
    for (double d : {c.d_lo, c.d_hi}) {
        for (double th : {tlo, thi}) {
            if (point_in_convex_quad(polar(d, th), quad)) return true;
        }
    }
    const Segment radial[2] = {{polar(c.d_lo, tlo), polar(c.d_hi, tlo)},
                               {polar(c.d_lo, thi), polar(c.d_hi, thi)}};
    for (int i = 0; i < 4; ++i) {
        Segment e{quad[i], quad[(i + 1) % 4]};
        if (segments_intersect(e, radial[0]) || segments_intersect(e, radial[1])) return true;
        if (segment_hits_arc(e.a, e.b, c.d_lo, mid, half)) return true;
        if (segment_hits_arc(e.a, e.b, c.d_hi, mid, half)) return true;
    }
    return false;
}

bool quad_intersects_quad(const std::array<Point, 4>& a, const std::array<Point, 4>& b) {
    for (Point p : a) {
        if (point_in_convex_quad(p, b)) return true;
    }
    for (Point p : b) {
        if (point_in_convex_quad(p, a)) return true;
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (segments_intersect({a[i], a[(i + 1) % 4]}, {b[j], b[(j + 1) % 4]})) return true;
        }
    }
    return false;
}

Rect approximate_cell_mbr(const Cell& c) {
    auto [tlo, thi] = cell_theta_range_deg(c);
    Rect r{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double d : {c.d_lo, c.d_hi}) {
        for (double th : {tlo, thi}) {
            Point p = polar(d, th);
            r.xmin = std::min(r.xmin, p.x);
            r.ymin = std::min(r.ymin, p.y);
            r.xmax = std::max(r.xmax, p.x);
            r.ymax = std::max(r.ymax, p.y);
        }
    }
    return r;
}

std::array<Point, 4> approximate_cell_tangential(const Cell& c) {
    auto [tlo, thi] = cell_theta_range_deg(c);
    // covering trapezoid: the inner arc's chord, the two radial edges
    // extended, and the tangent at the outer arc's midpoint
    double ch = std::cos(deg2rad((thi - tlo) / 2.0));
    double r_hi = c.d_hi / ch;
    return {polar(c.d_lo, tlo), polar(r_hi, tlo), polar(r_hi, thi), polar(c.d_lo, thi)};
}

namespace {

double error_bound(const CellSet& cs, bool mbr) {
    double mu_color = (cs.mu_arcmin / 60.0) / cs.v_norm_deg;
    double S = cs.target_len;
    std::size_t rings = cs.ring_count();
    std::vector<double> factor(rings, 0.0);
    for (std::size_t i = 0; i < rings; ++i) {
        double r_in = cs.radii[i];
        double r_out = cs.radii[i + 1];
        double width = r_out - r_in;
        double dr = mbr ? std::sqrt(2.0) * r_out
                        : std::sqrt(r_out * r_out + width * width);
        double n = std::max(0.0, std::ceil((dr - r_out) / width));
        double w = rad2deg(std::atan(r_out / (S / 2.0 + (mbr ? 0.0 : r_in))));
        int inside = 0;
        for (double b : cs.ring_bounds[i]) {
            if (b > kEps && b < w) ++inside;
        }
        double a = 1.0 + 2.0 * inside;
        factor[i] = n * a * mu_color;
    }
    double total = 0.0;
    for (const Cell& c : cs.cells) total += factor[c.ring] * cell_area(c);
    return total;
}

}  // namespace

double error_bound_mbr(const CellSet& cs) { return error_bound(cs, true); }
double error_bound_tangential(const CellSet& cs) { return error_bound(cs, false); }

void export_cells_csv(const CellSet& cs, std::ostream& os) {
    os << "quadrant,d_lo,d_hi,gamma_lo,gamma_hi,color\n";
    char buf[192];
    for (const Cell& c : cs.cells) {
        int n = std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                              c.quadrant, c.d_lo, c.d_hi, c.gamma_lo, c.gamma_hi, c.color);
        os.write(buf, n);
    }
}

}  // namespace vcm
