#pragma once

#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graspbo/planner/baselines.hpp"
#include "graspbo/planner/integrate.hpp"

namespace graspbo {

using nlohmann::json;

namespace cli_detail {

inline void check_keys(const json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
    require(j.is_object(), "SchemaError", where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        require(allowed.count(key) > 0, "SchemaError",
                where + ": unknown key \"" + key + "\"");
    }
}

template <typename T>
void load_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

// "3..17" (inclusive) or a plain JSON array of integers
inline std::vector<std::uint64_t> parse_seeds(const json& j) {
    std::vector<std::uint64_t> seeds;
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto dots = s.find("..");
        try {
            if (dots == std::string::npos) {
                seeds.push_back(std::stoull(s));
            } else {
                std::size_t lo = std::stoull(s.substr(0, dots));
                std::size_t hi = std::stoull(s.substr(dots + 2));
                require(hi >= lo, "SchemaError", "seed range is reversed");
                for (std::size_t v = lo; v <= hi; ++v) seeds.push_back(v);
            }
        } catch (const std::invalid_argument&) {
            fail("SchemaError", "seeds must look like \"7\" or \"0..19\"");
        } catch (const std::out_of_range&) {
            fail("SchemaError", "seed value out of range");
        }
    } else {
        require(j.is_array() && !j.empty(), "SchemaError", "seeds must be a range or array");
        for (const auto& v : j) seeds.push_back(v.get<std::uint64_t>());
    }
    return seeds;
}

}  // namespace cli_detail

struct RunConfig {
    std::string mesh_path;
    double mesh_scale = 1.0;
    std::string hand_path;                 // empty -> built-in model
    std::string planner = "hpp";           // hpp | integrate | random | sa
    std::vector<std::uint64_t> seeds{0};
    std::string output_dir = "out";
    SceneParams scene{};
    HppParams hpp{};
    AdmmCpParams admm{};
    int admm_every = 1;
    RandomParams random{};
    SaParams sa{};

    static RunConfig from_json(const json& j);
    json to_json() const;

    static RunConfig load(const std::string& path) {
        std::ifstream in(path);
        require(in.good(), "InputError", "cannot open config file " + path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            fail("SchemaError", "config " + path + " is not valid JSON: " + e.what());
        }
        return from_json(j);
    }
};

inline RunConfig RunConfig::from_json(const json& j) {
    using cli_detail::check_keys;
    using cli_detail::load_if;
    check_keys(j, {"version", "object", "hand", "planner", "seeds", "output_dir", "scene",
                   "hpp", "admm", "random", "sa"},
               "config");
    if (j.contains("version"))
        require(j.at("version").get<int>() == 1, "SchemaError", "unsupported config version");

    RunConfig c;
    if (j.contains("object")) {
        const json& o = j.at("object");
        check_keys(o, {"mesh", "scale"}, "object");
        load_if(o, "mesh", c.mesh_path);
        load_if(o, "scale", c.mesh_scale);
        require(c.mesh_scale > 0.0, "SchemaError", "object.scale must be positive");
    }
    if (j.contains("hand")) {
        const json& h = j.at("hand");
        check_keys(h, {"file"}, "hand");
        load_if(h, "file", c.hand_path);
    }
    if (j.contains("planner")) {
        c.planner = j.at("planner").get<std::string>();
        require(c.planner == "hpp" || c.planner == "integrate" || c.planner == "random" ||
                    c.planner == "sa",
                "SchemaError", "planner must be one of hpp|integrate|random|sa");
    }
    if (j.contains("seeds")) c.seeds = cli_detail::parse_seeds(j.at("seeds"));
    load_if(j, "output_dir", c.output_dir);

    if (j.contains("scene")) {
        const json& s = j.at("scene");
        check_keys(s, {"n_surface", "sample_seed", "gpis_offset_frac", "gpis_rho_frac",
                       "outer_scale", "chart_radius_frac", "mu_f", "m_e", "lambda_vol",
                       "autograsp"},
                   "scene");
        load_if(s, "n_surface", c.scene.n_surface);
        load_if(s, "sample_seed", c.scene.sample_seed);
        load_if(s, "gpis_offset_frac", c.scene.gpis_offset_frac);
        load_if(s, "gpis_rho_frac", c.scene.gpis_rho_frac);
        load_if(s, "outer_scale", c.scene.outer_scale);
        load_if(s, "chart_radius_frac", c.scene.chart_radius_frac);
        load_if(s, "mu_f", c.scene.mu_f);
        load_if(s, "m_e", c.scene.m_e);
        load_if(s, "lambda_vol", c.scene.lambda_vol);
        if (s.contains("autograsp")) {
            const json& a = s.at("autograsp");
            check_keys(a, {"step", "eps_c", "penetration_tol", "max_steps", "speeds"},
                       "scene.autograsp");
            load_if(a, "step", c.scene.autograsp.step);
            load_if(a, "eps_c", c.scene.autograsp.eps_c);
            load_if(a, "penetration_tol", c.scene.autograsp.penetration_tol);
            load_if(a, "max_steps", c.scene.autograsp.max_steps);
            if (a.contains("speeds")) {
                const json& sp = a.at("speeds");
                require(sp.is_array() && sp.size() == 4, "SchemaError",
                        "autograsp.speeds must have 4 entries");
                for (int i = 0; i < 4; ++i)
                    c.scene.autograsp.speeds(i) = sp[size_t(i)].get<double>();
            }
        }
    }
    if (j.contains("hpp")) {
        const json& h = j.at("hpp");
        check_keys(h, {"n_init", "n_iter", "n_cand", "xi", "refit_interval", "w_rot", "gp_noise",
                       "top_k", "eval_cap", "time_budget_s", "atlas"},
                   "hpp");
        load_if(h, "n_init", c.hpp.n_init);
        load_if(h, "n_iter", c.hpp.n_iter);
        load_if(h, "n_cand", c.hpp.n_cand);
        load_if(h, "xi", c.hpp.xi);
        load_if(h, "refit_interval", c.hpp.refit_interval);
        load_if(h, "w_rot", c.hpp.w_rot);
        load_if(h, "gp_noise", c.hpp.gp_noise);
        load_if(h, "top_k", c.hpp.top_k);
        load_if(h, "eval_cap", c.hpp.eval_cap);
        load_if(h, "time_budget_s", c.hpp.time_budget_s);
        if (h.contains("atlas")) {
            const json& a = h.at("atlas");
            check_keys(a, {"n_seed", "lambda_max", "d_lambda", "d_theta"}, "hpp.atlas");
            load_if(a, "n_seed", c.hpp.atlas.n_seed);
            load_if(a, "lambda_max", c.hpp.atlas.lambda_max);
            load_if(a, "d_lambda", c.hpp.atlas.d_lambda);
            load_if(a, "d_theta", c.hpp.atlas.d_theta);
        }
    }
    if (j.contains("admm")) {
        const json& a = j.at("admm");
        check_keys(a, {"rho", "eps_primal", "eps_dual", "max_iter", "mu_pen", "n_seed",
                       "sub_evals", "sub_init", "hinge", "every"},
                   "admm");
        load_if(a, "rho", c.admm.admm.rho);
        load_if(a, "eps_primal", c.admm.admm.eps_primal);
        load_if(a, "eps_dual", c.admm.admm.eps_dual);
        load_if(a, "max_iter", c.admm.admm.max_iter);
        load_if(a, "mu_pen", c.admm.mu_pen);
        load_if(a, "n_seed", c.admm.n_seed);
        load_if(a, "sub_evals", c.admm.sub_evals);
        load_if(a, "sub_init", c.admm.sub_init);
        load_if(a, "hinge", c.admm.hinge);
        load_if(a, "every", c.admm_every);
    }
    if (j.contains("random")) {
        const json& r = j.at("random");
        check_keys(r, {"n_evals", "top_k"}, "random");
        load_if(r, "n_evals", c.random.n_evals);
        load_if(r, "top_k", c.random.top_k);
    }
    if (j.contains("sa")) {
        const json& s = j.at("sa");
        check_keys(s, {"n_evals", "t0", "alpha", "epoch", "step", "step_floor", "top_k"}, "sa");
        load_if(s, "n_evals", c.sa.n_evals);
        load_if(s, "t0", c.sa.t0);
        load_if(s, "alpha", c.sa.alpha);
        load_if(s, "epoch", c.sa.epoch);
        load_if(s, "step", c.sa.step);
        load_if(s, "step_floor", c.sa.step_floor);
        load_if(s, "top_k", c.sa.top_k);
    }
    return c;
}

inline json RunConfig::to_json() const {
    json seeds_j = json::array();
    for (std::uint64_t s : seeds) seeds_j.push_back(s);
    return json{
        {"version", 1},
        {"object", {{"mesh", mesh_path}, {"scale", mesh_scale}}},
        {"hand", {{"file", hand_path}}},
        {"planner", planner},
        {"seeds", seeds_j},
        {"output_dir", output_dir},
        {"scene",
         {{"n_surface", scene.n_surface},
          {"sample_seed", scene.sample_seed},
          {"gpis_offset_frac", scene.gpis_offset_frac},
          {"gpis_rho_frac", scene.gpis_rho_frac},
          {"outer_scale", scene.outer_scale},
          {"chart_radius_frac", scene.chart_radius_frac},
          {"mu_f", scene.mu_f},
          {"m_e", scene.m_e},
          {"lambda_vol", scene.lambda_vol},
          {"autograsp",
           {{"step", scene.autograsp.step},
            {"eps_c", scene.autograsp.eps_c},
            {"penetration_tol", scene.autograsp.penetration_tol},
            {"max_steps", scene.autograsp.max_steps},
            {"speeds",
             {scene.autograsp.speeds(0), scene.autograsp.speeds(1), scene.autograsp.speeds(2),
              scene.autograsp.speeds(3)}}}}}},
        {"hpp",
         {{"n_init", hpp.n_init},
          {"n_iter", hpp.n_iter},
          {"n_cand", hpp.n_cand},
          {"xi", hpp.xi},
          {"refit_interval", hpp.refit_interval},
          {"w_rot", hpp.w_rot},
          {"gp_noise", hpp.gp_noise},
          {"top_k", hpp.top_k},
          {"eval_cap", hpp.eval_cap},
          {"time_budget_s", hpp.time_budget_s},
          {"atlas",
           {{"n_seed", hpp.atlas.n_seed},
            {"lambda_max", hpp.atlas.lambda_max},
            {"d_lambda", hpp.atlas.d_lambda},
            {"d_theta", hpp.atlas.d_theta}}}}},
        {"admm",
         {{"rho", admm.admm.rho},
          {"eps_primal", admm.admm.eps_primal},
          {"eps_dual", admm.admm.eps_dual},
          {"max_iter", admm.admm.max_iter},
          {"mu_pen", admm.mu_pen},
          {"n_seed", admm.n_seed},
          {"sub_evals", admm.sub_evals},
          {"sub_init", admm.sub_init},
          {"hinge", admm.hinge},
          {"every", admm_every}}},
        {"random", {{"n_evals", random.n_evals}, {"top_k", random.top_k}}},
        {"sa",
         {{"n_evals", sa.n_evals},
          {"t0", sa.t0},
          {"alpha", sa.alpha},
          {"epoch", sa.epoch},
          {"step", sa.step},
          {"step_floor", sa.step_floor},
          {"top_k", sa.top_k}}}};
}

// environment may override only the output directory and the log level
inline void apply_env(RunConfig& c) {
    if (const char* dir = std::getenv("GRASPBO_OUTPUT_DIR")) c.output_dir = dir;
    if (const char* lvl = std::getenv("GRASPBO_LOG_LEVEL")) log::set_level(lvl);
}

}  // namespace graspbo
