#pragma once

#include <chrono>

#include "graspbo/planner/evaluate.hpp"

namespace graspbo {

struct RandomParams {
    int n_evals = 200;
    int top_k = 20;
};

// uniform sampling over the pose domain; a draw whose pose collides is a
// failed attempt scored zero and still consumes budget, the way a blind
// planner spends simulator attempts
inline PlanResult baseline_random(const Scene& scene, const RandomParams& params,
                                  std::uint64_t seed) {
    require(params.n_evals >= 1, "IndexError", "baseline needs n_evals >= 1");
    auto t0 = std::chrono::steady_clock::now();
    Rng rng = Rng(seed).stream("random");
    PlanResult res;
    for (int e = 0; e < params.n_evals; ++e) {
        VecX u(6);
        for (int d = 0; d < 6; ++d) u(d) = rng.uniform01();
        Transform pose = decode_pose(scene, u);
        TraceRecord tr;
        tr.iteration = e;
        tr.phase = "sample";
        if (!pose_collides(scene, pose)) {
            GraspCandidate c = evaluate_pose(scene, pose, "baseline");
            push_topk(res.top, c, size_t(params.top_k));
            tr.f_obj = c.f_obj;
            tr.q_eps = c.q_eps;
            tr.q_vol = c.q_vol;
        }
        res.evals += 1;
        tr.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        res.trace.append(tr);
    }
    if (!res.top.empty()) {
        res.best = res.top[0];
    } else {
        res.best.provenance = "baseline";  // zero-score marker: nothing feasible
    }
    res.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

struct SaParams {
    int n_evals = 200;
    double t0 = 1.0;          // initial temperature
    double alpha = 0.95;      // geometric cooling per epoch
    int epoch = 1;            // evaluations per temperature step
    double step = 0.5;        // proposal std in the unit cube at t0
    double step_floor = 0.05; // proposal std never shrinks below step*step_floor
    int top_k = 20;
};

namespace planner_detail {

inline double reflect01(double x) {
    while (x < 0.0 || x > 1.0) {
        if (x < 0.0) x = -x;
        if (x > 1.0) x = 2.0 - x;
    }
    return x;
}

}  // namespace planner_detail

// Metropolis walk over the 6-D pose cube with energy = -f_obj and geometric
// cooling; colliding states carry energy zero (a failed attempt, like the
// random baseline) and the proposal std shrinks with temperature so moves are
// global while hot and local once cooled; bound violations reflect into the cube
inline PlanResult baseline_sa(const Scene& scene, const SaParams& params, std::uint64_t seed) {
    require(params.n_evals >= 1, "IndexError", "baseline needs n_evals >= 1");
    auto t0 = std::chrono::steady_clock::now();
    Rng rng = Rng(seed).stream("sa");
    PlanResult res;

    auto evaluate = [&](const VecX& u, int iter) {
        Transform pose = decode_pose(scene, u);
        TraceRecord tr;
        tr.iteration = iter;
        tr.phase = "sample";
        double f = 0.0;
        if (!pose_collides(scene, pose)) {
            GraspCandidate c = evaluate_pose(scene, pose, "baseline");
            push_topk(res.top, c, size_t(params.top_k));
            tr.f_obj = c.f_obj;
            tr.q_eps = c.q_eps;
            tr.q_vol = c.q_vol;
            f = c.f_obj;
        }
        res.evals += 1;
        tr.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        res.trace.append(tr);
        return f;
    };

    VecX x(6);
    for (int d = 0; d < 6; ++d) x(d) = rng.uniform01();
    double energy = -evaluate(x, 0);
    double temp = params.t0;
    for (int e = 1; e < params.n_evals; ++e) {
        double prop_std = params.step * std::max(temp / params.t0, params.step_floor);
        VecX prop = x;
        for (int d = 0; d < 6; ++d)
            prop(d) = planner_detail::reflect01(prop(d) + prop_std * rng.gauss());
        double prop_energy = -evaluate(prop, e);
        double delta = prop_energy - energy;
        if (delta <= 0.0 || (temp > 0.0 && rng.uniform01() < std::exp(-delta / temp))) {
            x = prop;
            energy = prop_energy;
        }
        if (e % std::max(1, params.epoch) == 0) temp *= params.alpha;
    }
    if (!res.top.empty()) {
        res.best = res.top[0];
    } else {
        res.best.provenance = "baseline";
    }
    res.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace graspbo
