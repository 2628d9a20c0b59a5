#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "graspbo/cli/bundle.hpp"
#include "graspbo/core/log.hpp"
#include "graspbo/planner/baselines.hpp"
#include "graspbo/planner/integrate.hpp"

namespace graspbo {

namespace cli_detail {

inline TriMesh load_object(const RunConfig& c) {
    require(!c.mesh_path.empty(), "InputError", "config has no object.mesh path");
    require(std::filesystem::exists(c.mesh_path), "InputError",
            "mesh file not found: " + c.mesh_path);
    MeshLoadOptions opts;
    opts.scale = c.mesh_scale;
    return load_mesh(c.mesh_path, opts);
}

inline HandModel load_hand(const RunConfig& c) {
    if (c.hand_path.empty()) return HandModel{};
    std::ifstream in(c.hand_path);
    require(in.good(), "InputError", "hand file not found: " + c.hand_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("SchemaError", std::string("hand file is not valid JSON: ") + e.what());
    }
    return HandModel::from_json(j);
}

inline std::string object_name(const RunConfig& c) {
    return std::filesystem::path(c.mesh_path).stem().string();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "InputError", "cannot write " + path);
    out << text;
}

inline PlanResult dispatch(const Scene& scene, const RunConfig& c, std::uint64_t seed) {
    if (c.planner == "hpp") return hpp_opt(scene, c.hpp, seed);
    if (c.planner == "integrate") {
        IntegrateParams ip;
        ip.hpp = c.hpp;
        ip.admm = c.admm;
        ip.admm_every = c.admm_every;
        return integrate(scene, ip, seed);
    }
    if (c.planner == "random") return baseline_random(scene, c.random, seed);
    return baseline_sa(scene, c.sa, seed);
}

}  // namespace cli_detail

// fit the implicit surface from the config's mesh, persist the model, and
// report held-out residuals; writing twice from one config is byte-identical
inline int cmd_fit_gpis(const RunConfig& c) {
    TriMesh mesh = cli_detail::load_object(c);
    std::filesystem::create_directories(c.output_dir);

    SurfaceSamples train = sample_surface(mesh, c.scene.n_surface, c.scene.sample_seed);
    SurfaceSamples held = sample_surface(mesh, c.scene.n_surface, c.scene.sample_seed + 1);
    Aabb box = compute_aabb(mesh);
    double diag = (box.max - box.min).norm();

    GpisHyper hyper;
    hyper.rho = c.scene.gpis_rho_frac * diag;
    GpisModel gpis = GpisModel::fit(train, c.scene.gpis_offset_frac * diag, hyper);

    double mean_abs = 0.0, max_abs = 0.0;
    for (const Vec3& p : held.points) {
        double v = std::abs(gpis.value(p));
        mean_abs += v;
        max_abs = std::max(max_abs, v);
    }
    mean_abs /= double(held.points.size());

    json report{{"mesh", c.mesh_path},
                {"diag", diag},
                {"train_points", train.points.size()},
                {"held_out_points", held.points.size()},
                {"held_out_mean_abs_f", mean_abs},
                {"held_out_max_abs_f", max_abs},
                {"mean_abs_over_diag", mean_abs / diag}};
    cli_detail::write_text(c.output_dir + "/gpis.json", gpis.to_json().dump(2) + "\n");
    cli_detail::write_text(c.output_dir + "/gpis_report.json", report.dump(2) + "\n");
    log::info("fit-gpis: held-out mean |f| = %.3g (%.3g of diag)", mean_abs, mean_abs / diag);
    return 0;
}

// run the configured planner over every seed (seeds are independent and run
// concurrently) and persist one bundle JSON + one CSV; exit 1 only when every
// seed came back infeasible
inline int cmd_plan(const RunConfig& c) {
    TriMesh mesh = cli_detail::load_object(c);
    HandModel hand = cli_detail::load_hand(c);
    Scene scene = build_scene(mesh, hand, c.scene);
    std::filesystem::create_directories(c.output_dir);

    ResultBundle bundle;
    bundle.config = c;
    bundle.object_name = cli_detail::object_name(c);
    bundle.runs.resize(c.seeds.size());

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < c.seeds.size(); i = next.fetch_add(1)) {
            SeedResult& sr = bundle.runs[i];
            sr.seed = c.seeds[i];
            try {
                sr.result = cli_detail::dispatch(scene, c, sr.seed);
                sr.feasible = sr.result.best.feasible;
            } catch (const GraspboError& e) {
                if (e.code() != "NoFeasiblePose") throw;
                sr.feasible = false;
            }
        }
    };
    size_t n_threads = std::min<size_t>(c.seeds.size(),
                                        std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::string stem =
        c.output_dir + "/" + bundle.object_name + "_" + c.planner;
    cli_detail::write_text(stem + ".bundle.json", bundle.to_json().dump(2) + "\n");
    cli_detail::write_text(stem + ".csv", bundle.to_csv());

    bool any_feasible = false;
    for (const SeedResult& r : bundle.runs) any_feasible = any_feasible || r.feasible;
    json s = bundle.summary();
    log::info("plan: %s %s, %zu seeds, mean best f_obj %.4g -> %s", bundle.object_name.c_str(),
              c.planner.c_str(), c.seeds.size(), s.at("mean_best_f_obj").get<double>(),
              (stem + ".bundle.json").c_str());
    return any_feasible ? 0 : 1;
}

// aligned per-object comparison of several bundles (Table layout: one row per
// object, one column group per planner, best mean f_obj flagged)
inline int cmd_compare(const std::vector<std::string>& bundle_paths, const std::string& out_path,
                       bool average_top) {
    require(bundle_paths.size() >= 2, "InputError", "compare needs at least 2 bundles");
    std::vector<ResultBundle> bundles;
    for (const std::string& p : bundle_paths) bundles.push_back(ResultBundle::load(p));

    // rows align planners on a shared object; if no object is covered by at
    // least two bundles there is nothing to compare side by side
    std::set<std::string> objects;
    std::map<std::string, int> coverage;
    for (const ResultBundle& b : bundles) {
        objects.insert(b.object_name);
        ++coverage[b.object_name];
    }
    bool any_shared = false;
    for (const auto& [obj, count] : coverage) {
        (void)obj;
        any_shared = any_shared || count >= 2;
    }
    require(any_shared, "ObjectMismatch", "bundles cover disjoint objects; nothing to compare");

    const char* eps_key = average_top ? "mean_top_q_eps" : "mean_best_q_eps";
    const char* vol_key = average_top ? "mean_top_q_vol" : "mean_best_q_vol";

    std::string csv = "object";
    for (const ResultBundle& b : bundles)
        csv += "," + b.config.planner + "_q_eps," + b.config.planner + "_q_vol," +
               b.config.planner + "_f_obj";
    csv += ",best\n";
    for (const std::string& obj : objects) {
        csv += obj;
        double best_f = -1.0;
        std::string best_planner;
        std::string row;
        for (const ResultBundle& b : bundles) {
            if (b.object_name != obj) {
                row += ",,,";
                continue;
            }
            json s = b.summary();
            double f = s.at("mean_best_f_obj").get<double>();
            char cell[128];
            std::snprintf(cell, sizeof(cell), ",%.6g,%.6g,%.6g",
                          s.at(eps_key).get<double>(), s.at(vol_key).get<double>(), f);
            row += cell;
            if (f > best_f) {
                best_f = f;
                best_planner = b.config.planner;
            }
        }
        csv += row + "," + best_planner + "\n";
    }
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        cli_detail::write_text(out_path, csv);
        log::info("compare: wrote %s", out_path.c_str());
    }
    return 0;
}

// single-candidate scene dump for offline viewers: object reference, the 7
// hand link transforms, contacts, and the surface chart under the palm
inline int cmd_export_scene(const std::string& bundle_path, size_t candidate_index,
                            const std::string& out_path) {
    ResultBundle bundle = ResultBundle::load(bundle_path);
    require(!bundle.runs.empty(), "InputError", "bundle has no runs");
    const SeedResult* pick = nullptr;
    for (const SeedResult& r : bundle.runs)
        if (r.feasible) {
            pick = &r;
            break;
        }
    require(pick != nullptr, "InputError", "bundle has no feasible run to export");
    require(candidate_index < pick->result.top.size(), "IndexError",
            "candidate index out of range");
    const GraspCandidate& cand = pick->result.top[candidate_index];

    TriMesh mesh = cli_detail::load_object(bundle.config);
    HandModel hand = cli_detail::load_hand(bundle.config);
    Scene scene = build_scene(mesh, hand, bundle.config.scene);

    HandState state;
    state.q = cand.q;
    state.distal_offset = cand.distal_offset;
    LinkTransforms fk = forward_kinematics(scene.hand, state, cand.palm);

    json links = json::array();
    links.push_back(json{{"name", "palm"}, {"pose", io::pose_to_json(fk.palm)}});
    for (int f = 0; f < 3; ++f) {
        links.push_back(json{{"name", "proximal_" + std::to_string(f)},
                             {"pose", io::pose_to_json(fk.proximal[size_t(f)])}});
        links.push_back(json{{"name", "distal_" + std::to_string(f)},
                             {"pose", io::pose_to_json(fk.distal[size_t(f)])}});
    }

    NearestResult near = scene.tree.nearest(cand.palm.translation());
    Chart chart = make_chart(scene.gpis, near.point, scene.chart_radius);
    json chart_j{{"center", io::vec3_to_json(chart.center)},
                 {"normal", io::vec3_to_json(chart.normal)},
                 {"basis_u", io::vec3_to_json(chart.basis.col(0))},
                 {"basis_v", io::vec3_to_json(chart.basis.col(1))},
                 {"radius", chart.radius}};

    json contacts = json::array();
    for (const Contact& ct : cand.contacts) contacts.push_back(io::contact_to_json(ct));

    json scene_j{{"object",
                  {{"mesh", bundle.config.mesh_path},
                   {"scale", bundle.config.mesh_scale},
                   {"pose", io::pose_to_json(Transform::Identity())}}},
                 {"hand", hand.to_json()},
                 {"links", links},
                 {"contacts", contacts},
                 {"chart", chart_j},
                 {"candidate", io::candidate_to_json(cand)}};
    cli_detail::write_text(out_path, scene_j.dump(2) + "\n");
    log::info("export-scene: wrote %s", out_path.c_str());
    return 0;
}

// map module error codes onto the documented process exit codes
inline int exit_code_for(const GraspboError& e) {
    const std::string& c = e.code();
    if (c == "NoFeasiblePose") return 1;
    if (c == "InputError" || c == "SchemaError" || c == "ParseError" || c == "EmptyMesh" ||
        c == "ObjectMismatch" || c == "IndexError" || c == "DegenerateFace" ||
        c == "HandConfig" || c == "TooFewSamples")
        return 2;
    return 3;
}

}  // namespace graspbo
