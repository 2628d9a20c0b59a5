#pragma once

#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "graspbo/cli/config.hpp"
#include "graspbo/io/serialize.hpp"

namespace graspbo {

inline constexpr int kBundleVersion = 1;

struct SeedResult {
    std::uint64_t seed = 0;
    bool feasible = false;
    PlanResult result;
};

// one planning experiment: the exact config it ran under, every seed's
// result, and Table-style aggregates over each run's top candidate list
struct ResultBundle {
    RunConfig config;
    std::string object_name;
    std::vector<SeedResult> runs;

    json to_json() const {
        json runs_j = json::array();
        for (const SeedResult& r : runs) {
            runs_j.push_back(json{{"seed", r.seed},
                                  {"feasible", r.feasible},
                                  {"result", io::plan_result_to_json(r.result)}});
        }
        return json{{"bundle_version", kBundleVersion},
                    {"object", object_name},
                    {"config", config.to_json()},
                    {"runs", runs_j},
                    {"summary", summary()}};
    }

    static ResultBundle from_json(const json& j) {
        require(j.contains("bundle_version"), "SchemaError", "not a result bundle");
        require(j.at("bundle_version").get<int>() == kBundleVersion, "SchemaError",
                "unsupported bundle version");
        ResultBundle b;
        b.config = RunConfig::from_json(j.at("config"));
        b.object_name = j.at("object").get<std::string>();
        for (const auto& r : j.at("runs")) {
            SeedResult sr;
            sr.seed = r.at("seed").get<std::uint64_t>();
            sr.feasible = r.at("feasible").get<bool>();
            sr.result = io::plan_result_from_json(r.at("result"));
            b.runs.push_back(std::move(sr));
        }
        return b;
    }

    static ResultBundle load(const std::string& path) {
        std::ifstream in(path);
        require(in.good(), "InputError", "cannot open bundle " + path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            fail("SchemaError", std::string("bundle is not valid JSON: ") + e.what());
        }
        return from_json(j);
    }

    // mean over seeds of (best q_eps, best q_vol, best f_obj) and of the
    // top-list averages ("average of first 20 best" statistic)
    json summary() const {
        double best_eps = 0, best_vol = 0, best_f = 0, top_eps = 0, top_vol = 0, wall = 0;
        int feasible_count = 0, fc_count = 0;
        for (const SeedResult& r : runs) {
            if (!r.feasible) continue;
            ++feasible_count;
            best_eps += r.result.best.q_eps;
            best_vol += r.result.best.q_vol;
            best_f += r.result.best.f_obj;
            fc_count += r.result.best.q_eps > 0.0 ? 1 : 0;
            double te = 0, tv = 0;
            for (const GraspCandidate& c : r.result.top) {
                te += c.q_eps;
                tv += c.q_vol;
            }
            if (!r.result.top.empty()) {
                top_eps += te / double(r.result.top.size());
                top_vol += tv / double(r.result.top.size());
            }
            wall += r.result.wall_ms;
        }
        double n = feasible_count > 0 ? double(feasible_count) : 1.0;
        return json{{"seeds", runs.size()},
                    {"feasible_seeds", feasible_count},
                    {"force_closure_seeds", fc_count},
                    {"mean_best_q_eps", best_eps / n},
                    {"mean_best_q_vol", best_vol / n},
                    {"mean_best_f_obj", best_f / n},
                    {"mean_top_q_eps", top_eps / n},
                    {"mean_top_q_vol", top_vol / n},
                    {"wall_ms", wall}};
    }

    // per-seed best rows, Table-I style
    std::string to_csv() const {
        std::string out = "object,planner,seed,feasible,q_eps,q_vol,f_obj,evals\n";
        char line[256];
        for (const SeedResult& r : runs) {
            std::snprintf(line, sizeof(line), "%s,%s,%llu,%d,%.9g,%.9g,%.9g,%ld\n",
                          object_name.c_str(), config.planner.c_str(),
                          static_cast<unsigned long long>(r.seed), r.feasible ? 1 : 0,
                          r.result.best.q_eps, r.result.best.q_vol, r.result.best.f_obj,
                          r.result.evals);
            out += line;
        }
        return out;
    }
};

}  // namespace graspbo
