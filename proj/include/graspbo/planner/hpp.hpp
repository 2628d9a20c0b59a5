#pragma once

#include <chrono>
#include <optional>

#include "graspbo/planner/admm.hpp"
#include "graspbo/surrogate/gp.hpp"
#include "graspbo/surrogate/rprop.hpp"

namespace graspbo {

struct HppParams {
    int n_init = 20;
    int n_iter = 40;
    int n_cand = 512;          // pose candidates scored by EI per iteration
    double xi = 0.01;
    int refit_interval = 10;   // hyperparameter refits every this many iterations
    double w_rot = 0.1;
    double gp_noise = 1e-4;
    int top_k = 20;
    AtlasParams atlas{};
    long eval_cap = 0;         // max hand-closing/quality evaluations; 0 = unlimited
    double time_budget_s = 0;  // optional wall-clock mode for benchmark parity
};

namespace planner_detail {

// palm-pose Bayesian optimization: LHS init, EI-driven proposals, local chart
// adaption of every proposal, optional contact-refinement stage (integrate)
inline PlanResult hpp_core(const Scene& scene, const HppParams& hp, std::uint64_t seed,
                           const AdmmCpParams* admm, int admm_every) {
    require(hp.n_init >= 1 && hp.n_iter >= 0, "IndexError", "budgets must be >= 1 init, >= 0 iter");
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    auto out_of_time = [&]() {
        return hp.time_budget_s > 0 && elapsed_ms() >= hp.time_budget_s * 1e3;
    };

    Rng root(seed);
    Rng lhs_rng = root.stream("lhs");
    Rng cand_rng = root.stream("cand");
    Rng atlas_rng = root.stream("atlas");
    Rng admm_rng = root.stream("admm");
    EvalBudget budget{hp.eval_cap, 0};

    GpPosterior<Transform, Se3Distance> gp(Se3Distance{hp.w_rot}, KernelParams{0.05, 0.1},
                                           hp.gp_noise);
    PlanResult res;
    int iteration = 0;

    auto record = [&](const std::string& phase, double ei, const GraspCandidate* c,
                      double pr = 0.0, double dr = 0.0) {
        TraceRecord tr;
        tr.iteration = iteration++;
        tr.phase = phase;
        tr.ei = ei;
        if (c) {
            tr.f_obj = c->f_obj;
            tr.q_eps = c->q_eps;
            tr.q_vol = c->q_vol;
        }
        tr.primal_res = pr;
        tr.dual_res = dr;
        tr.wall_ms = elapsed_ms();
        res.trace.append(tr);
    };

    // evaluate a proposed pose: direct closing when collision-free, chart
    // adaption as repair and (in the BO loop) as the local candidate set
    auto adapted_evaluate = [&](const Transform& pose,
                                bool with_adaption) -> std::optional<GraspCandidate> {
        std::vector<GraspCandidate> set;
        if (!pose_collides(scene, pose) && !budget.exhausted())
            set.push_back(evaluate_pose(scene, pose, "HPP", &budget));
        if (with_adaption || set.empty()) {
            try {
                std::vector<GraspCandidate> g = gpis_atlas(scene, pose, hp.atlas, atlas_rng, &budget);
                set.insert(set.end(), g.begin(), g.end());
            } catch (const GraspboError& e) {
                if (e.code() != "AdaptionFailed" && e.code() != "VanishingGradient") throw;
            }
        }
        if (set.empty()) return std::nullopt;
        size_t best = 0;
        for (size_t i = 1; i < set.size(); ++i)
            if (set[i].f_obj > set[best].f_obj) best = i;
        for (const GraspCandidate& c : set) push_topk(res.top, c, size_t(hp.top_k));
        return set[best];
    };

    std::vector<VecX> init = latin_hypercube(hp.n_init, 6, lhs_rng);
    for (const VecX& x : init) {
        if (budget.exhausted() || out_of_time()) break;
        Transform pose = decode_pose(scene, x);
        std::optional<GraspCandidate> c = adapted_evaluate(pose, false);
        if (c) {
            gp.add(c->palm, c->f_obj);
            record("init", 0.0, &*c);
        } else {
            gp.add(pose, 0.0);
            record("init", 0.0, nullptr);
        }
    }

    for (int it = 0; it < hp.n_iter; ++it) {
        if (budget.exhausted() || out_of_time() || gp.size() == 0) break;
        if (it % std::max(1, hp.refit_interval) == 0 && gp.size() >= 3) {
            gp.set_params(heuristic_kernel_params(gp.data(), gp.metric()));
            fit_hyperparams_rprop(gp, 30);
        }

        double f_best = gp.best_value();
        Transform chosen = Transform::Identity();
        double chosen_ei = -1.0;
        for (int c = 0; c < hp.n_cand; ++c) {
            VecX u(6);
            for (int d = 0; d < 6; ++d) u(d) = cand_rng.uniform01();
            Transform pose = decode_pose(scene, u);
            auto [mu, s] = gp.posterior(pose);
            double ei = expected_improvement(mu, s, f_best, hp.xi);
            if (ei > chosen_ei) {
                chosen_ei = ei;
                chosen = pose;
            }
        }

        std::optional<GraspCandidate> c = adapted_evaluate(chosen, true);
        if (c) {
            gp.add(c->palm, c->f_obj);
            record("bo", chosen_ei, &*c);
        } else {
            gp.add(chosen, 0.0);
            record("bo", chosen_ei, nullptr);
        }

        if (admm && c && it % std::max(1, admm_every) == 0 && !budget.exhausted() &&
            !out_of_time()) {
            try {
                AdmmCpResult ar = admm_cp_opt(scene, c->palm, *admm, admm_rng);
                push_topk(res.top, ar.candidate, size_t(hp.top_k));
                // the refined palm re-enters the surrogate at the larger of its
                // contact-refined score and its closed-hand score, so the pose
                // model stays on the hand-closing scale the other samples use
                double y_max = ar.candidate.f_obj;
                if (!budget.exhausted() && !pose_collides(scene, ar.palm)) {
                    GraspCandidate sim = evaluate_pose(scene, ar.palm, "ADMM", &budget);
                    push_topk(res.top, sim, size_t(hp.top_k));
                    y_max = std::max(y_max, sim.f_obj);
                }
                gp.add(ar.palm, y_max);
                record("admm", 0.0, &ar.candidate, ar.primal_res, ar.dual_res);
            } catch (const GraspboError& e) {
                if (e.code() != "NoConvergence" && e.code() != "VanishingGradient") throw;
            }
        }
    }

    require(!res.top.empty(), "NoFeasiblePose",
            "every evaluation collided and local adaption never recovered a pose");
    res.best = res.top[0];
    res.evals = budget.used;
    res.wall_ms = elapsed_ms();
    return res;
}

}  // namespace planner_detail

inline PlanResult hpp_opt(const Scene& scene, const HppParams& params, std::uint64_t seed) {
    return planner_detail::hpp_core(scene, params, seed, nullptr, 1);
}

}  // namespace graspbo
