#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vcm/geometry.hpp"
#include "vcm/rtree.hpp"
#include "vcm/visibility.hpp"

namespace vcm {

inline constexpr double kSpaceSpan = 10000.0;

inline Rect dataspace() { return Rect{0.0, 0.0, kSpaceSpan, kSpaceSpan}; }

struct ObstacleRect {
    int id = 0;
    Rect rect;
};

struct Scene {
    std::vector<ObstacleRect> obstacles;
    Target target;
    Rect space = dataspace();
};

enum class Distribution { Uniform, Zipf };

struct RunConfig {
    double mu_arcmin = 4.0;
    double theta_multiplier = 1.0;
    double area_fraction = 0.15;         // A_Q: query area / dataspace area
    double fov_deg = 120.0;
    double gaze_deg = 0.0;
    double target_length_fraction = 0.15;
    double d0 = -1.0;                    // <= 0: defaults to the target length
    NearPointRule near_rule = NearPointRule::Clamp;
    int grid_n = 500;
    std::uint64_t seed = 1;
};

// square of area A_Q * span^2 centered on the target midpoint, kept in-space
Rect query_space(const RunConfig& cfg, Point center);

VisionParams vision_params(const RunConfig& cfg, double target_length);

Target default_target(const RunConfig& cfg);

Wedge fov_wedge(const RunConfig& cfg, Point apex);

// deterministic generator: identical values on every platform for a seed
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(uniform() * (static_cast<double>(hi - lo) + 1.0));
    }
    std::uint64_t raw() { return g_(); }

private:
    std::mt19937_64 g_;
};

// CSV rows: id,xmin,ymin,xmax,ymax[,zmin,zmax]; z columns ignored
std::vector<ObstacleRect> ingest_csv(const std::string& path, bool normalize);

void write_obstacles_csv(const std::string& path, const std::vector<ObstacleRect>& obstacles);

// axis-aligned rectangles with sides uniform in [10,100]; zipf clusters
// centers toward a random focus; obstacles never intersect avoid's segment
std::vector<ObstacleRect> generate_obstacles(int n, Distribution dist, std::uint64_t seed,
                                             const Target* avoid = nullptr);

StrTree<int> build_obstacle_index(const std::vector<ObstacleRect>& obstacles,
                                  std::size_t page_size = 1024);

}  // namespace vcm
