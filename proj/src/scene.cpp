#include "vcm/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace vcm {

Rect query_space(const RunConfig& cfg, Point center) {
    double side = std::sqrt(cfg.area_fraction) * kSpaceSpan;
    side = std::min(side, kSpaceSpan);
    double half = 0.5 * side;
    double cx = std::clamp(center.x, half, kSpaceSpan - half);
    double cy = std::clamp(center.y, half, kSpaceSpan - half);
    return Rect{cx - half, cy - half, cx + half, cy + half};
}

VisionParams vision_params(const RunConfig& cfg, double target_length) {
    VisionParams vp;
    vp.mu_arcmin = cfg.mu_arcmin;
    vp.d0 = cfg.d0 > 0 ? cfg.d0 : target_length;
    vp.fov_deg = cfg.fov_deg;
    vp.gaze_deg = cfg.gaze_deg;
    vp.near_rule = cfg.near_rule;
    return vp;
}

Target default_target(const RunConfig& cfg) {
    double len = cfg.target_length_fraction * kSpaceSpan;
    double c = 0.5 * kSpaceSpan;
    return Target{Segment{{c - 0.5 * len, c}, {c + 0.5 * len, c}}};
}

Wedge fov_wedge(const RunConfig& cfg, Point apex) {
    return Wedge{apex, cfg.gaze_deg, cfg.fov_deg};
}

static bool numeric_start(const std::string& field) {
    for (char ch : field) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' ||
               ch == '.';
    }
    return false;
}

static std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

std::vector<ObstacleRect> ingest_csv(const std::string& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<ObstacleRect> out;
    std::string line;
    std::size_t lineno = 0;
    bool first_data = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (first_data && !fields.empty() && !numeric_start(fields[0])) {
            first_data = false;  // header row
            continue;
        }
        first_data = false;
        auto fail = [&](const char* what) {
            throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": " + what);
        };
        if (fields.size() != 5 && fields.size() != 7) fail("expected 5 or 7 columns");
        ObstacleRect o;
        try {
            o.id = std::stoi(fields[0]);
            o.rect = Rect{std::stod(fields[1]), std::stod(fields[2]), std::stod(fields[3]),
                          std::stod(fields[4])};
        } catch (const std::exception&) {
            fail("not a number");
        }
        if (!(o.rect.xmin < o.rect.xmax) || !(o.rect.ymin < o.rect.ymax)) {
            fail("degenerate rectangle");
        }
        out.push_back(o);
    }
    if (out.empty()) throw std::runtime_error(path + ": no obstacle rows");

    if (normalize) {
        Rect bb = out[0].rect;
        for (const auto& o : out) bb = bb.expanded(o.rect);
        double w = bb.width();
        double h = bb.height();
        double s = std::max(w, h) > 0 ? kSpaceSpan / std::max(w, h) : 1.0;
        double ox = 0.5 * (kSpaceSpan - s * w);
        double oy = 0.5 * (kSpaceSpan - s * h);
        for (auto& o : out) {
            o.rect = Rect{(o.rect.xmin - bb.xmin) * s + ox, (o.rect.ymin - bb.ymin) * s + oy,
                          (o.rect.xmax - bb.xmin) * s + ox, (o.rect.ymax - bb.ymin) * s + oy};
        }
    }
    return out;
}

void write_obstacles_csv(const std::string& path, const std::vector<ObstacleRect>& obstacles) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "id,xmin,ymin,xmax,ymax\n");
    for (const auto& o : obstacles) {
        std::fprintf(f, "%d,%.17g,%.17g,%.17g,%.17g\n", o.id, o.rect.xmin, o.rect.ymin,
                     o.rect.xmax, o.rect.ymax);
    }
    std::fclose(f);
}

namespace {

// focus-ranked grid cells with P(rank k) proportional to 1/k
struct ZipfCells {
    static constexpr int kGrid = 100;
    std::vector<int> ranked;   // cell ids, nearest to the focus first
    std::vector<double> cum;   // cumulative harmonic weights

    ZipfCells(Point focus) {
        const double cell = kSpaceSpan / kGrid;
        ranked.resize(kGrid * kGrid);
        std::vector<double> dist(ranked.size());
        for (int iy = 0; iy < kGrid; ++iy) {
            for (int ix = 0; ix < kGrid; ++ix) {
                int id = iy * kGrid + ix;
                Point c{(ix + 0.5) * cell, (iy + 0.5) * cell};
                ranked[static_cast<std::size_t>(id)] = id;
                dist[static_cast<std::size_t>(id)] = (c - focus).norm();
            }
        }
        std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
            double da = dist[static_cast<std::size_t>(a)];
            double db = dist[static_cast<std::size_t>(b)];
            if (da != db) return da < db;
            return a < b;
        });
        cum.resize(ranked.size());
        double acc = 0;
        for (std::size_t k = 0; k < ranked.size(); ++k) {
            acc += 1.0 / static_cast<double>(k + 1);
            cum[k] = acc;
        }
    }

    Point sample_center(Rng& rng) const {
        const double cell = kSpaceSpan / kGrid;
        double u = rng.uniform() * cum.back();
        std::size_t k = static_cast<std::size_t>(
            std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        k = std::min(k, ranked.size() - 1);
        int id = ranked[k];
        int ix = id % kGrid;
        int iy = id / kGrid;
        return Point{(ix + rng.uniform()) * cell, (iy + rng.uniform()) * cell};
    }
};

}  // namespace

std::vector<ObstacleRect> generate_obstacles(int n, Distribution dist, std::uint64_t seed,
                                             const Target* avoid) {
    Rng rng(seed);
    std::vector<ObstacleRect> out;
    out.reserve(static_cast<std::size_t>(std::max(0, n)));

    std::optional<ZipfCells> zipf;
    if (dist == Distribution::Zipf) {
        Point focus{rng.uniform() * kSpaceSpan, rng.uniform() * kSpaceSpan};
        zipf.emplace(focus);
    }

    for (int i = 0; i < n; ++i) {
        Rect r;
        for (;;) {
            double w = rng.uniform(10.0, 100.0);
            double h = rng.uniform(10.0, 100.0);
            Point c = zipf ? zipf->sample_center(rng)
                           : Point{rng.uniform() * kSpaceSpan, rng.uniform() * kSpaceSpan};
            double cx = std::clamp(c.x, 0.5 * w, kSpaceSpan - 0.5 * w);
            double cy = std::clamp(c.y, 0.5 * h, kSpaceSpan - 0.5 * h);
            r = Rect{cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h};
            if (avoid) {
                Rect guard{r.xmin - 1.0, r.ymin - 1.0, r.xmax + 1.0, r.ymax + 1.0};
                if (segment_intersects_rect(avoid->seg, guard)) continue;
            }
            break;
        }
        out.push_back(ObstacleRect{i, r});
    }
    return out;
}

StrTree<int> build_obstacle_index(const std::vector<ObstacleRect>& obstacles,
                                  std::size_t page_size) {
    std::vector<StrTree<int>::Entry> entries;
    entries.reserve(obstacles.size());
    // payload is the position in the scene vector, not the (possibly sparse) id
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        entries.push_back({obstacles[i].rect, static_cast<int>(i)});
    }
    return StrTree<int>::build(std::move(entries), page_size);
}

}  // namespace vcm
