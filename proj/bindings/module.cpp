// python bindings: the visual model, the cell partition, map construction
// and rendering, plus scene utilities, all as plain functions on tuples
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "vcm/baseline.hpp"
#include "vcm/partition.hpp"
#include "vcm/region.hpp"
#include "vcm/render.hpp"
#include "vcm/scene.hpp"
#include "vcm/vcm.hpp"

namespace py = pybind11;

namespace {

vcm::Target target_from(const std::array<double, 4>& xy) {
    return vcm::Target{{{xy[0], xy[1]}, {xy[2], xy[3]}}};
}

vcm::Scene scene_from(const std::array<double, 4>& target,
                      const std::vector<std::array<double, 4>>& obstacles) {
    vcm::Scene sc;
    sc.target = target_from(target);
    int id = 0;
    for (const auto& r : obstacles) {
        sc.obstacles.push_back(vcm::ObstacleRect{++id, vcm::Rect{r[0], r[1], r[2], r[3]}});
    }
    return sc;
}

vcm::RunConfig config_from(double mu, double d0, double fov, double gaze, double area_fraction,
                           const std::string& near, double theta_mult) {
    vcm::RunConfig cfg;
    cfg.mu_arcmin = mu;
    cfg.d0 = d0;
    cfg.fov_deg = fov;
    cfg.gaze_deg = gaze;
    cfg.area_fraction = area_fraction;
    cfg.theta_multiplier = theta_mult;
    if (near == "zero") {
        cfg.near_rule = vcm::NearPointRule::Zero;
    } else if (near == "clamp") {
        cfg.near_rule = vcm::NearPointRule::Clamp;
    } else {
        throw std::invalid_argument("near must be 'clamp' or 'zero'");
    }
    return cfg;
}

double py_visibility_color(const std::array<double, 2>& p, const std::array<double, 4>& target,
                           double d0, double mu, const std::string& near) {
    vcm::Target t = target_from(target);
    vcm::VisionParams vp;
    vp.mu_arcmin = mu;
    vp.d0 = d0;
    vp.near_rule = near == "zero" ? vcm::NearPointRule::Zero : vcm::NearPointRule::Clamp;
    return vcm::visibility_color({p[0], p[1]}, t, vp);
}

py::dict py_partition(const std::array<double, 4>& target, double mu, double d0) {
    vcm::Target t = target_from(target);
    vcm::VisionParams vp;
    vp.mu_arcmin = mu;
    vp.d0 = d0 > 0 ? d0 : t.length();
    vcm::CellSet cs = vcm::build_cells(t, vp);
    py::dict out;
    out["cells"] = cs.cells.size();
    out["rings"] = cs.ring_count();
    out["theta"] = cs.theta;
    out["d_max"] = cs.dmax;
    out["v_norm_deg"] = cs.v_norm_deg;
    out["e_mbr"] = vcm::error_bound_mbr(cs);
    out["e_tangent"] = vcm::error_bound_tangential(cs);
    return out;
}

py::dict py_build(const std::array<double, 4>& target,
                  const std::vector<std::array<double, 4>>& obstacles, double mu, double d0,
                  double fov, double gaze, double area_fraction, const std::string& variant,
                  const std::string& near, double theta_mult) {
    vcm::Scene sc = scene_from(target, obstacles);
    vcm::RunConfig cfg = config_from(mu, d0, fov, gaze, area_fraction, near, theta_mult);
    vcm::VCMap m = vcm::build_vcm(sc, cfg, vcm::variant_from_name(variant));

    py::list leaves;
    m.tree.for_each_leaf([&](const vcm::QuadNode& n) {
        leaves.append(py::make_tuple(n.box.xmin, n.box.ymin, n.box.xmax, n.box.ymax,
                                     vcm::block_state_name(n.state),
                                     n.state == vcm::BlockState::Colored ? n.color : 0.0));
    });
    const vcm::Rect& qs = m.tree.space();
    py::dict stats;
    stats["leaves_colored"] = m.stats.leaves_colored;
    stats["leaves_obstructed"] = m.stats.leaves_obstructed;
    stats["node_accesses_obstacle"] = m.stats.obstacle.node_accesses;
    stats["node_accesses_color"] = m.stats.color.node_accesses;
    stats["obstacles_emitted"] = m.stats.obstacle.emitted;
    stats["obstacles_pruned"] = m.stats.obstacle.pruned;
    stats["shadows_applied"] = m.stats.shadows_applied;

    py::dict out;
    out["space"] = py::make_tuple(qs.xmin, qs.ymin, qs.xmax, qs.ymax);
    out["theta"] = m.theta;
    out["cells"] = m.cells.cells.size();
    out["d_max"] = m.cells.dmax;
    out["leaves"] = leaves;
    out["stats"] = stats;
    return out;
}

py::tuple py_render_pgm(const std::string& path, const std::array<double, 4>& target,
                        const std::vector<std::array<double, 4>>& obstacles, double mu,
                        double d0, double fov, double gaze, double area_fraction,
                        const std::string& variant, const std::string& near, double theta_mult,
                        int px) {
    vcm::Scene sc = scene_from(target, obstacles);
    vcm::RunConfig cfg = config_from(mu, d0, fov, gaze, area_fraction, near, theta_mult);
    vcm::VCMap m = vcm::build_vcm(sc, cfg, vcm::variant_from_name(variant));
    auto img = vcm::render_map(
        [&](vcm::Point p) { return vcm::quadtree_color_at(m.tree, p); }, m.tree.space(), px);
    vcm::write_pgm(img, path);
    return py::make_tuple(img.width, img.height);
}

py::list py_generate(int n, std::uint64_t seed, const std::string& dist) {
    auto d = dist == "zipf" ? vcm::Distribution::Zipf : vcm::Distribution::Uniform;
    auto obstacles = vcm::generate_obstacles(n, d, seed);
    py::list out;
    for (const auto& o : obstacles) {
        out.append(py::make_tuple(o.rect.xmin, o.rect.ymin, o.rect.xmax, o.rect.ymax));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_vcm, m) {
    m.doc() = "visibility color maps: human-vision visibility over 2d scenes";

    m.def("visual_angle", &vcm::visual_angle_deg, py::arg("S"), py::arg("D"),
          "visual angle in degrees of an object of size S seen frontally at distance D");
    m.def("perceived_length", &vcm::perceived_length, py::arg("S"), py::arg("alpha_deg"),
          "target length scaled by the viewing angle, alpha in [0, 90]");
    m.def("d_max", &vcm::d_max, py::arg("S"), py::arg("mu_arcmin"),
          "distance at which a target of length S stops being distinguishable");
    m.def("visibility_color", &py_visibility_color, py::arg("p"), py::arg("target"),
          py::arg("d0"), py::arg("mu") = 4.0, py::arg("near") = "clamp",
          "normalized visibility in [0, 1] of the target from point p, no obstacles");

    m.def("partition", &py_partition, py::arg("target"), py::arg("mu") = 4.0,
          py::arg("d0") = -1.0,
          "equi-visible cell grid summary: counts, theta, d_max and error bounds");

    m.def("build", &py_build, py::arg("target"), py::arg("obstacles") = py::list(),
          py::arg("mu") = 4.0, py::arg("d0") = -1.0, py::arg("fov") = 120.0,
          py::arg("gaze") = 0.0, py::arg("area_fraction") = 0.15, py::arg("variant") = "exact",
          py::arg("near") = "clamp", py::arg("theta_mult") = 1.0,
          "build a visibility color map; returns the leaf list and build stats");

    m.def("render_pgm", &py_render_pgm, py::arg("path"), py::arg("target"),
          py::arg("obstacles") = py::list(), py::arg("mu") = 4.0, py::arg("d0") = -1.0,
          py::arg("fov") = 120.0, py::arg("gaze") = 0.0, py::arg("area_fraction") = 0.15,
          py::arg("variant") = "exact", py::arg("near") = "clamp", py::arg("theta_mult") = 1.0,
          py::arg("px") = 512, "build a map and rasterize it to a PGM file");

    m.def("generate", &py_generate, py::arg("n"), py::arg("seed") = 1,
          py::arg("dist") = "uniform", "synthesize n obstacle rectangles in the dataspace");
}
