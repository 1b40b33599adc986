#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vcm/baseline.hpp"
#include "vcm/partition.hpp"
#include "vcm/region.hpp"
#include "vcm/render.hpp"
#include "vcm/scene.hpp"
#include "vcm/vcm.hpp"

namespace {

struct CommonOpts {
    vcm::RunConfig cfg;
    std::string near_rule = "clamp";
    std::vector<double> target_xy;  // x1 y1 x2 y2 when given

    void attach(CLI::App* cmd) {
        cmd->add_option("--mu", cfg.mu_arcmin, "angular resolution, arcminutes");
        cmd->add_option("--theta-mult", cfg.theta_multiplier, "multiplier on the block floor");
        cmd->add_option("--aq", cfg.area_fraction, "query area fraction A_Q");
        cmd->add_option("--fov", cfg.fov_deg, "field of view, degrees");
        cmd->add_option("--gaze", cfg.gaze_deg, "gaze direction, degrees CCW from +x");
        cmd->add_option("--lt", cfg.target_length_fraction, "target length fraction L_T");
        cmd->add_option("--d0", cfg.d0, "near point distance (default: target length)");
        cmd->add_option("--near", near_rule, "inside-near-point rule")
            ->check(CLI::IsMember({"clamp", "zero"}));
        cmd->add_option("--grid-n", cfg.grid_n, "baseline cells per side");
        cmd->add_option("--seed", cfg.seed, "generator seed");
        cmd->add_option("--target", target_xy, "explicit target endpoints x1 y1 x2 y2")
            ->expected(4);
    }

    vcm::RunConfig resolve() {
        if (const char* env = std::getenv("VCM_SEED")) {
            cfg.seed = std::strtoull(env, nullptr, 10);
        }
        cfg.near_rule =
            near_rule == "zero" ? vcm::NearPointRule::Zero : vcm::NearPointRule::Clamp;
        return cfg;
    }

    vcm::Target target(const vcm::RunConfig& cfg_resolved) const {
        if (target_xy.size() == 4) {
            return vcm::Target{{{target_xy[0], target_xy[1]}, {target_xy[2], target_xy[3]}}};
        }
        return vcm::default_target(cfg_resolved);
    }
};

std::vector<vcm::Rect> footprints(const std::vector<vcm::ObstacleRect>& obstacles) {
    std::vector<vcm::Rect> out;
    out.reserve(obstacles.size());
    for (const auto& o : obstacles) out.push_back(o.rect);
    return out;
}

void print_stats(const vcm::VcmStats& st) {
    std::printf("node_accesses_obstacle=%zu\n", st.obstacle.node_accesses);
    std::printf("node_accesses_color=%zu\n", st.color.node_accesses);
    std::printf("leaves_colored=%zu\n", st.leaves_colored);
    std::printf("leaves_obstructed=%zu\n", st.leaves_obstructed);
    std::printf("obstacles_emitted=%zu\n", st.obstacle.emitted);
    std::printf("obstacles_pruned=%zu\n", st.obstacle.pruned);
    std::printf("shadows_applied=%zu\n", st.shadows_applied);
    std::printf("elapsed_partition_s=%.6f\n", st.elapsed_partition_s);
    std::printf("elapsed_region_s=%.6f\n", st.elapsed_region_s);
    std::printf("elapsed_merge_s=%.6f\n", st.elapsed_merge_s);
}

void write_grid_csv(const vcm::BaselineGrid& g, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fprintf(f, "xmin,ymin,xmax,ymax,color\n");
    for (int iy = 0; iy < g.n; ++iy) {
        for (int ix = 0; ix < g.n; ++ix) {
            vcm::Rect r = g.cell_rect(ix, iy);
            std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.xmin, r.ymin, r.xmax, r.ymax,
                         g.colors[static_cast<std::size_t>(iy) * static_cast<std::size_t>(g.n) +
                                  static_cast<std::size_t>(ix)]);
        }
    }
    std::fclose(f);
}

struct PieceRow {
    vcm::Rect r;
    double color;
};

std::vector<PieceRow> load_pieces_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<PieceRow> out;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        double v[5];
        for (double& x : v) {
            if (!std::getline(ss, field, ',')) throw std::runtime_error("short row in " + path);
            x = std::stod(field);
        }
        out.push_back(PieceRow{vcm::Rect{v[0], v[1], v[2], v[3]}, v[4]});
    }
    if (out.empty()) throw std::runtime_error(path + ": no pieces");
    return out;
}

// point sampler over an arbitrary rectangle tiling; boundary ties go to the
// earliest row so output does not depend on index traversal order
std::function<double(vcm::Point)> piece_sampler(const std::vector<PieceRow>& pieces,
                                                const vcm::StrTree<int>& idx) {
    return [&pieces, &idx](vcm::Point p) {
        int best = -1;
        idx.query(
            vcm::Rect::of_point(p),
            [&](const vcm::Rect& r, int) { return r.contains(p, 0.0); },
            [&](int i) {
                if (best < 0 || i < best) best = i;
            },
            nullptr);
        return best < 0 ? 0.0 : pieces[static_cast<std::size_t>(best)].color;
    };
}

int cmd_ingest(const std::string& input, const std::string& output, bool normalize) {
    auto obstacles = vcm::ingest_csv(input, normalize);
    vcm::write_obstacles_csv(output, obstacles);
    std::printf("obstacles=%zu\n", obstacles.size());
    return 0;
}

int cmd_generate(int n, const std::string& dist, CommonOpts& common, const std::string& output,
                 bool avoid_target) {
    vcm::RunConfig cfg = common.resolve();
    vcm::Target t = common.target(cfg);
    auto d = dist == "zipf" ? vcm::Distribution::Zipf : vcm::Distribution::Uniform;
    auto obstacles = vcm::generate_obstacles(n, d, cfg.seed, avoid_target ? &t : nullptr);
    vcm::write_obstacles_csv(output, obstacles);
    std::printf("obstacles=%zu\nseed=%llu\n", obstacles.size(),
                static_cast<unsigned long long>(cfg.seed));
    return 0;
}

int cmd_partition(CommonOpts& common, const std::string& output) {
    vcm::RunConfig cfg = common.resolve();
    vcm::Target t = common.target(cfg);
    vcm::VisionParams vp = vcm::vision_params(cfg, t.length());
    vcm::CellSet cs = vcm::build_cells(t, vp);
    if (!output.empty()) {
        std::ofstream os(output);
        if (!os) throw std::runtime_error("cannot write " + output);
        vcm::export_cells_csv(cs, os);
    }
    std::printf("cells=%zu\n", cs.cells.size());
    std::printf("rings=%zu\n", cs.ring_count());
    std::printf("theta=%.17g\n", cs.theta);
    std::printf("theta_effective=%.17g\n", cs.theta * cfg.theta_multiplier);
    std::printf("d_max=%.17g\n", cs.dmax);
    std::printf("v_norm_deg=%.17g\n", cs.v_norm_deg);
    std::printf("e_mbr=%.17g\n", vcm::error_bound_mbr(cs));
    std::printf("e_tangent=%.17g\n", vcm::error_bound_tangential(cs));
    return 0;
}

int run_map_pipeline(const vcm::Scene& scene, const vcm::RunConfig& cfg,
                     const std::string& variant, const std::string& output,
                     const std::string& render_path, int px) {
    if (variant == "baseline") {
        vcm::VisionParams vp = vcm::vision_params(cfg, scene.target.length());
        vcm::Rect qs = vcm::query_space(cfg, scene.target.midpoint());
        auto rects = footprints(scene.obstacles);
        auto t0 = std::chrono::steady_clock::now();
        vcm::BaselineGrid g = vcm::baseline_vcm(qs, scene.target, vp, rects, cfg.grid_n);
        auto t1 = std::chrono::steady_clock::now();
        vcm::VcmStats st;
        st.leaves_colored = static_cast<std::size_t>(g.n) * static_cast<std::size_t>(g.n);
        st.elapsed_region_s = std::chrono::duration<double>(t1 - t0).count();
        print_stats(st);
        if (!output.empty()) write_grid_csv(g, output);
        if (!render_path.empty()) {
            auto img = vcm::render_map([&](vcm::Point p) { return g.at(p); }, qs, px);
            vcm::write_pgm(img, render_path);
        }
        return 0;
    }
    vcm::VCMap map = vcm::build_vcm(scene, cfg, vcm::variant_from_name(variant));
    std::printf("cells=%zu\n", map.cells.cells.size());
    std::printf("theta=%.17g\n", map.theta);
    print_stats(map.stats);
    if (!output.empty()) vcm::export_vcm_csv(map.tree, output);
    if (!render_path.empty()) {
        auto img = vcm::render_map(
            [&](vcm::Point p) { return vcm::quadtree_color_at(map.tree, p); }, map.tree.space(),
            px);
        vcm::write_pgm(img, render_path);
    }
    return 0;
}

int cmd_vcm(const std::string& obstacles_path, CommonOpts& common, const std::string& variant,
            const std::string& output, const std::string& render_path, int px) {
    vcm::RunConfig cfg = common.resolve();
    vcm::Scene scene;
    scene.target = common.target(cfg);
    if (!obstacles_path.empty()) scene.obstacles = vcm::ingest_csv(obstacles_path, false);
    return run_map_pipeline(scene, cfg, variant, output, render_path, px);
}

int cmd_viewer(const std::vector<double>& at, double range, const std::string& obstacles_path,
               CommonOpts& common, const std::string& variant, const std::string& output,
               const std::string& render_path, int px) {
    vcm::RunConfig cfg = common.resolve();
    vcm::Point q{at[0], at[1]};
    vcm::Target t = vcm::viewer_centric_target(q, cfg.gaze_deg, range, cfg.mu_arcmin);
    if (cfg.d0 <= 0) cfg.d0 = range / 100.0;  // virtual target: near disk scaled to the range
    vcm::Scene scene;
    scene.target = t;
    if (!obstacles_path.empty()) scene.obstacles = vcm::ingest_csv(obstacles_path, false);
    std::printf("target_length=%.17g\n", t.length());
    return run_map_pipeline(scene, cfg, variant, output, render_path, px);
}

int cmd_gaze(const std::string& state_dir, bool precompute, double set_deg, bool has_set,
             const std::string& obstacles_path, CommonOpts& common, const std::string& variant,
             const std::string& output) {
    namespace fs = std::filesystem;
    std::string params_path = state_dir + "/params.json";
    std::string state_path = state_dir + "/state.csv";
    if (precompute) {
        vcm::RunConfig cfg = common.resolve();
        vcm::Scene scene;
        scene.target = common.target(cfg);
        if (!obstacles_path.empty()) scene.obstacles = vcm::ingest_csv(obstacles_path, false);
        vcm::RunConfig full = cfg;
        full.fov_deg = 360.0;
        vcm::VCMap map = vcm::build_vcm(scene, full, vcm::variant_from_name(variant));
        fs::create_directories(state_dir);
        map.tree.dump_state_csv(state_path);
        vcm::Rect qs = map.tree.space();
        nlohmann::json j;
        j["mu_arcmin"] = cfg.mu_arcmin;
        j["theta"] = map.theta;
        j["fov_deg"] = cfg.fov_deg;  // wedge width applied by --set
        j["near_rule"] = cfg.near_rule == vcm::NearPointRule::Zero ? "zero" : "clamp";
        j["variant"] = variant;
        j["target"] = {scene.target.seg.a.x, scene.target.seg.a.y, scene.target.seg.b.x,
                       scene.target.seg.b.y};
        j["query_space"] = {qs.xmin, qs.ymin, qs.xmax, qs.ymax};
        std::ofstream os(params_path);
        os << j.dump(2) << "\n";
        print_stats(map.stats);
        return 0;
    }
    if (!has_set) throw CLI::ValidationError("gaze", "need --precompute or --set DEG");
    std::ifstream is(params_path);
    if (!is) throw std::runtime_error("no precomputed state in " + state_dir);
    nlohmann::json j = nlohmann::json::parse(is);
    auto jd = [&](const char* key, int i) { return j[key][i].get<double>(); };
    vcm::Target t{{{jd("target", 0), jd("target", 1)}, {jd("target", 2), jd("target", 3)}}};
    vcm::Rect qs{jd("query_space", 0), jd("query_space", 1), jd("query_space", 2),
                 jd("query_space", 3)};
    vcm::QuadTree full = vcm::QuadTree::load_state_csv(state_path, qs);
    vcm::Wedge w{t.midpoint(), set_deg, j["fov_deg"].get<double>()};
    vcm::QuadTree masked = vcm::mask_to_wedge(full, w, j["theta"].get<double>());
    std::string out = output.empty() ? state_dir + "/current.csv" : output;
    masked.dump_color_csv(out);
    std::size_t colored = 0, obstructed = 0;
    masked.for_each_leaf([&](const vcm::QuadNode& n) {
        if (n.state == vcm::BlockState::Colored) ++colored;
        if (n.state == vcm::BlockState::Obstructed) ++obstructed;
    });
    std::printf("gaze_deg=%.17g\nleaves_colored=%zu\nleaves_obstructed=%zu\n", set_deg, colored,
                obstructed);
    return 0;
}

int cmd_compare(const std::string& obstacles_path, CommonOpts& common, const std::string& variant,
                const std::string& reference) {
    vcm::RunConfig cfg = common.resolve();
    vcm::Scene scene;
    scene.target = common.target(cfg);
    if (!obstacles_path.empty()) scene.obstacles = vcm::ingest_csv(obstacles_path, false);
    vcm::VisionParams vp = vcm::vision_params(cfg, scene.target.length());
    vcm::Rect qs = vcm::query_space(cfg, scene.target.midpoint());
    auto rects = footprints(scene.obstacles);

    // keep whichever heavy maps we build alive for the views
    vcm::BaselineGrid ref_grid, cand_grid;
    vcm::VCMap ref_map, cand_map;
    vcm::PieceMapView ref_view, cand_view;

    if (reference == "oracle") {
        ref_grid = vcm::baseline_vcm(qs, scene.target, vp, rects, cfg.grid_n);
        ref_view = vcm::PieceMapView::of(ref_grid);
    } else {
        ref_map = vcm::build_vcm(scene, cfg, vcm::Variant::Exact);
        ref_view = vcm::PieceMapView::of(ref_map.tree);
    }
    double e_mbr = 0.0, e_tan = 0.0;
    if (variant == "baseline") {
        cand_grid = vcm::baseline_vcm(qs, scene.target, vp, rects, cfg.grid_n);
        cand_view = vcm::PieceMapView::of(cand_grid);
    } else {
        cand_map = vcm::build_vcm(scene, cfg, vcm::variant_from_name(variant));
        cand_view = vcm::PieceMapView::of(cand_map.tree);
        e_mbr = vcm::error_bound_mbr(cand_map.cells);
        e_tan = vcm::error_bound_tangential(cand_map.cells);
    }
    vcm::ErrorReport rep = vcm::measured_error(ref_view, cand_view);
    std::printf("error_abs=%.17g\n", rep.error_abs);
    std::printf("error_signed=%.17g\n", rep.error_signed);
    std::printf("deviation_mass=%.17g\n", rep.deviation_mass);
    std::printf("reference_mass=%.17g\n", rep.reference_mass);
    std::printf("overlay_pieces=%zu\n", rep.pieces);
    if (variant == "mbr") std::printf("bound=%.17g\n", e_mbr);
    if (variant == "tangent") std::printf("bound=%.17g\n", e_tan);
    return 0;
}

int cmd_render(const std::string& map_path, const std::string& output, int px) {
    auto pieces = load_pieces_csv(map_path);
    vcm::Rect bounds = pieces[0].r;
    std::vector<vcm::StrTree<int>::Entry> entries;
    entries.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        bounds = bounds.expanded(pieces[i].r);
        entries.push_back({pieces[i].r, static_cast<int>(i)});
    }
    auto idx = vcm::StrTree<int>::build(std::move(entries));
    auto img = vcm::render_map(piece_sampler(pieces, idx), bounds, px);
    vcm::write_pgm(img, output);
    std::printf("width=%d\nheight=%d\n", img.width, img.height);
    return 0;
}

int cmd_sweep(const std::string& param, const std::string& obstacles_path, CommonOpts& common,
              const std::string& output) {
    vcm::RunConfig base = common.resolve();
    std::vector<double> values;
    if (param == "mu" || param == "theta") values = {1, 2, 4, 8, 16};
    if (param == "aq" || param == "lt") values = {0.05, 0.10, 0.15, 0.20, 0.25};
    if (param == "fov") values = {60, 120, 180, 240, 300, 360};
    if (param == "ds") values = {5000, 10000, 15000, 20000, 25000};
    if (values.empty()) throw CLI::ValidationError("sweep", "unknown --param " + param);

    std::vector<vcm::ObstacleRect> file_obstacles;
    if (!obstacles_path.empty()) file_obstacles = vcm::ingest_csv(obstacles_path, false);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file) throw std::runtime_error("cannot write " + output);
        os = &file;
    }
    (*os) << "param,value,cells,theta,leaves_colored,leaves_obstructed,"
             "node_accesses_obstacle,node_accesses_color,obstacles_emitted,obstacles_pruned,"
             "elapsed_partition_s,elapsed_region_s,elapsed_merge_s,elapsed_total_s\n";
    for (double v : values) {
        vcm::RunConfig cfg = base;
        if (param == "mu") cfg.mu_arcmin = v;
        if (param == "theta") cfg.theta_multiplier = v;
        if (param == "aq") cfg.area_fraction = v;
        if (param == "lt") cfg.target_length_fraction = v;
        if (param == "fov") cfg.fov_deg = v;
        vcm::Scene scene;
        scene.target = common.target(cfg);
        if (param == "ds") {
            scene.obstacles = vcm::generate_obstacles(static_cast<int>(v),
                                                      vcm::Distribution::Uniform, cfg.seed,
                                                      &scene.target);
        } else {
            scene.obstacles = file_obstacles;
        }
        vcm::VCMap map = vcm::build_vcm(scene, cfg, vcm::Variant::Exact);
        const vcm::VcmStats& st = map.stats;
        char row[512];
        std::snprintf(row, sizeof row,
                      "%s,%.17g,%zu,%.17g,%zu,%zu,%zu,%zu,%zu,%zu,%.6f,%.6f,%.6f,%.6f\n",
                      param.c_str(), v, map.cells.cells.size(), map.theta, st.leaves_colored,
                      st.leaves_obstructed, st.obstacle.node_accesses, st.color.node_accesses,
                      st.obstacle.emitted, st.obstacle.pruned, st.elapsed_partition_s,
                      st.elapsed_region_s, st.elapsed_merge_s,
                      st.elapsed_partition_s + st.elapsed_region_s + st.elapsed_merge_s);
        (*os) << row;
        os->flush();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"visibility color map toolkit"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "read an obstacle CSV, optionally normalize");
    std::string in_input, in_output;
    bool in_normalize = false;
    ingest->add_option("--input", in_input)->required();
    ingest->add_option("--output", in_output)->required();
    ingest->add_flag("--normalize", in_normalize, "letterbox the data bbox to the dataspace");

    // generate
    auto* generate = app.add_subcommand("generate", "synthesize an obstacle scene");
    int gen_n = 100;
    std::string gen_dist = "uniform", gen_output;
    bool gen_overlap = false;
    CommonOpts gen_common;
    generate->add_option("--n", gen_n)->required();
    generate->add_option("--dist", gen_dist)->check(CLI::IsMember({"uniform", "zipf"}));
    generate->add_option("--output", gen_output)->required();
    generate->add_flag("--allow-target-overlap", gen_overlap,
                       "skip the keep-clear margin around the target");
    gen_common.attach(generate);

    // partition
    auto* partition = app.add_subcommand("partition", "equi-visible cells, theta and bounds");
    std::string part_output;
    CommonOpts part_common;
    partition->add_option("--output", part_output, "cells CSV path");
    part_common.attach(partition);

    // vcm
    auto* vcmc = app.add_subcommand("vcm", "build a visibility color map");
    std::string vcm_obstacles, vcm_variant = "exact", vcm_output, vcm_render;
    int vcm_px = 512;
    CommonOpts vcm_common;
    vcmc->add_option("--obstacles", vcm_obstacles, "obstacle CSV");
    vcmc->add_option("--variant", vcm_variant)
        ->check(CLI::IsMember({"exact", "mbr", "tangent", "baseline"}));
    vcmc->add_option("--output", vcm_output, "map CSV path");
    vcmc->add_option("--render", vcm_render, "PGM path");
    vcmc->add_option("--px", vcm_px, "raster width");
    vcm_common.attach(vcmc);

    // viewer
    auto* viewer = app.add_subcommand("viewer", "viewer-centric map around a point");
    std::vector<double> viewer_at;
    double viewer_range = 10000.0;
    std::string viewer_obstacles, viewer_variant = "exact", viewer_output, viewer_render;
    int viewer_px = 512;
    CommonOpts viewer_common;
    viewer->add_option("--at", viewer_at, "viewer location x y")->expected(2)->required();
    viewer->add_option("--range", viewer_range, "perception range d_max");
    viewer->add_option("--obstacles", viewer_obstacles);
    viewer->add_option("--variant", viewer_variant)
        ->check(CLI::IsMember({"exact", "mbr", "tangent", "baseline"}));
    viewer->add_option("--output", viewer_output);
    viewer->add_option("--render", viewer_render);
    viewer->add_option("--px", viewer_px);
    viewer_common.attach(viewer);

    // gaze
    auto* gaze = app.add_subcommand("gaze", "precompute at 360 and remask per gaze");
    std::string gaze_state, gaze_obstacles, gaze_variant = "exact", gaze_output;
    bool gaze_pre = false;
    double gaze_set = 0.0;
    CommonOpts gaze_common;
    gaze->add_option("--state", gaze_state, "state directory")->required();
    gaze->add_flag("--precompute", gaze_pre);
    auto* set_opt = gaze->add_option("--set", gaze_set, "gaze direction, degrees");
    gaze->add_option("--obstacles", gaze_obstacles);
    gaze->add_option("--variant", gaze_variant)
        ->check(CLI::IsMember({"exact", "mbr", "tangent"}));
    gaze->add_option("--output", gaze_output);
    gaze_common.attach(gaze);

    // compare
    auto* compare = app.add_subcommand("compare", "measured error against a reference map");
    std::string cmp_obstacles, cmp_variant = "exact", cmp_reference = "oracle";
    CommonOpts cmp_common;
    compare->add_option("--obstacles", cmp_obstacles);
    compare->add_option("--variant", cmp_variant)
        ->check(CLI::IsMember({"exact", "mbr", "tangent", "baseline"}));
    compare->add_option("--reference", cmp_reference)->check(CLI::IsMember({"oracle", "exact"}));
    cmp_common.attach(compare);

    // render
    auto* render = app.add_subcommand("render", "rasterize a map CSV to PGM");
    std::string ren_map, ren_output;
    int ren_px = 512;
    render->add_option("--map", ren_map)->required();
    render->add_option("--output", ren_output)->required();
    render->add_option("--px", ren_px);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "parameter sweep, one result row per value");
    std::string sweep_param, sweep_obstacles, sweep_output;
    CommonOpts sweep_common;
    sweep->add_option("--param", sweep_param)
        ->required()
        ->check(CLI::IsMember({"mu", "theta", "aq", "fov", "lt", "ds"}));
    sweep->add_option("--obstacles", sweep_obstacles);
    sweep->add_option("--output", sweep_output);
    sweep_common.attach(sweep);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return cmd_ingest(in_input, in_output, in_normalize);
        if (*generate) return cmd_generate(gen_n, gen_dist, gen_common, gen_output, !gen_overlap);
        if (*partition) return cmd_partition(part_common, part_output);
        if (*vcmc) return cmd_vcm(vcm_obstacles, vcm_common, vcm_variant, vcm_output, vcm_render,
                                  vcm_px);
        if (*viewer) return cmd_viewer(viewer_at, viewer_range, viewer_obstacles, viewer_common,
                                       viewer_variant, viewer_output, viewer_render, viewer_px);
        if (*gaze) return cmd_gaze(gaze_state, gaze_pre, gaze_set, set_opt->count() > 0,
                                   gaze_obstacles, gaze_common, gaze_variant, gaze_output);
        if (*compare) return cmd_compare(cmp_obstacles, cmp_common, cmp_variant, cmp_reference);
        if (*render) return cmd_render(ren_map, ren_output, ren_px);
        if (*sweep) return cmd_sweep(sweep_param, sweep_obstacles, sweep_common, sweep_output);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
