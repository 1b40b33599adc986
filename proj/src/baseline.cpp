#include "vcm/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vcm {

double oracle_color(Point p, const Target& t, const VisionParams& vp,
                    std::span<const Rect> obstacles) {
    if (!fully_visible(p, t, obstacles)) return 0.0;
    return visibility_color(p, t, vp);
}

double BaselineGrid::at(Point p) const {
    if (n <= 0 || !bounds.contains(p)) return 0.0;
    int ix = std::clamp(static_cast<int>((p.x - bounds.xmin) / bounds.width() * n), 0, n - 1);
    int iy = std::clamp(static_cast<int>((p.y - bounds.ymin) / bounds.height() * n), 0, n - 1);
    return colors[static_cast<std::size_t>(iy) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(ix)];
}

Rect BaselineGrid::cell_rect(int ix, int iy) const {
    // endpoints by proportion so neighboring cells share edges exactly
    auto xat = [&](int i) { return bounds.xmin + bounds.width() * i / n; };
    auto yat = [&](int i) { return bounds.ymin + bounds.height() * i / n; };
    return Rect{xat(ix), yat(iy), xat(ix + 1), yat(iy + 1)};
}

BaselineGrid baseline_vcm(const Rect& bounds, const Target& t, const VisionParams& vp,
                          std::span<const Rect> obstacles, int n) {
    if (n < 2) throw std::invalid_argument("baseline grid needs at least 2 cells per side");
    BaselineGrid g;
    g.bounds = bounds;
    g.n = n;
    g.colors.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            Point c = g.cell_rect(ix, iy).center();
            g.colors[static_cast<std::size_t>(iy) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(ix)] = oracle_color(c, t, vp, obstacles);
        }
    }
    return g;
}

static Rect clip_rect(const Rect& a, const Rect& b) {
    return Rect{std::max(a.xmin, b.xmin), std::max(a.ymin, b.ymin), std::min(a.xmax, b.xmax),
                std::min(a.ymax, b.ymax)};
}

PieceMapView PieceMapView::of(const QuadTree& tree) {
    PieceMapView v;
    v.bounds_ = tree.space();
    const QuadTree* tp = &tree;
    v.enumerate_ = [tp](const Rect& clip, const PieceFn& fn) {
        tp->for_each_leaf_in(clip, [&](const QuadNode& node) {
            Rect r = clip_rect(node.box, clip);
            if (r.width() <= 0.0 || r.height() <= 0.0) return;
            fn(r, node.state == BlockState::Colored ? node.color : 0.0);
        });
    };
    return v;
}

PieceMapView PieceMapView::of(const BaselineGrid& grid) {
    PieceMapView v;
    v.bounds_ = grid.bounds;
    const BaselineGrid* gp = &grid;
    v.enumerate_ = [gp](const Rect& clip, const PieceFn& fn) {
        const Rect& b = gp->bounds;
        int n = gp->n;
        auto lo = [&](double t, double span, double origin) {
            return std::clamp(static_cast<int>(std::floor((t - origin) / span * n)), 0, n - 1);
        };
        auto hi = [&](double t, double span, double origin) {
            return std::clamp(static_cast<int>(std::ceil((t - origin) / span * n)), 1, n);
        };
        int x0 = lo(clip.xmin, b.width(), b.xmin);
        int x1 = hi(clip.xmax, b.width(), b.xmin);
        int y0 = lo(clip.ymin, b.height(), b.ymin);
        int y1 = hi(clip.ymax, b.height(), b.ymin);
        for (int iy = y0; iy < y1; ++iy) {
            for (int ix = x0; ix < x1; ++ix) {
                Rect r = clip_rect(gp->cell_rect(ix, iy), clip);
                if (r.width() <= 0.0 || r.height() <= 0.0) continue;
                fn(r, gp->colors[static_cast<std::size_t>(iy) * static_cast<std::size_t>(n) +
                                 static_cast<std::size_t>(ix)]);
            }
        }
    };
    return v;
}

void PieceMapView::pieces_in(const Rect& clip, const PieceFn& fn) const { enumerate_(clip, fn); }

ErrorReport measured_error(const PieceMapView& reference, const PieceMapView& candidate) {
    const Rect& rb = reference.bounds();
    const Rect& cb = candidate.bounds();
    if (std::abs(rb.xmin - cb.xmin) > 1e-6 || std::abs(rb.ymin - cb.ymin) > 1e-6 ||
        std::abs(rb.xmax - cb.xmax) > 1e-6 || std::abs(rb.ymax - cb.ymax) > 1e-6) {
        throw std::invalid_argument("error comparison over different bounds");
    }
    ErrorReport rep;
    double signed_dev = 0.0;
    reference.pieces_in(rb, [&](const Rect& rp, double ce) {
        rep.reference_mass += rp.area() * ce;
        candidate.pieces_in(rp, [&](const Rect& cp, double ca) {
            double a = cp.area();
            rep.deviation_mass += a * std::abs(ce - ca);
            signed_dev += a * (ce - ca);
            ++rep.pieces;
        });
    });
    if (!(rep.reference_mass > 0.0)) {
        throw std::runtime_error("reference map has zero color mass");
    }
    rep.error_signed = signed_dev / rep.reference_mass;
    rep.error_abs = rep.deviation_mass / rep.reference_mass;
    return rep;
}

}  // namespace vcm
