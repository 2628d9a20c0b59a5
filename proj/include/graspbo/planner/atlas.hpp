#pragma once

#include "graspbo/planner/evaluate.hpp"

namespace graspbo {

struct AtlasParams {
    int n_seed = 5;
    double lambda_max = 0.08;     // retraction range along the chart normal (m)
    double d_lambda = 0.005;      // retraction step (m)
    double d_theta = M_PI / 8.0;  // roll step about the approach axis past lambda_max
};

// local adaption around a palm pose: snap to the nearest surface chart, try
// random in-chart offsets, and for each retract along the normal (then roll
// about the approach axis) until collision-free, then close the hand
inline std::vector<GraspCandidate> gpis_atlas(const Scene& scene, const Transform& palm,
                                              const AtlasParams& params, Rng& rng,
                                              EvalBudget* budget = nullptr,
                                              const std::string& provenance = "HPP") {
    NearestResult near = scene.tree.nearest(palm.translation());
    Chart chart = make_chart(scene.gpis, near.point, scene.chart_radius);

    std::vector<GraspCandidate> out;
    int failures = 0;
    for (int seed = 0; seed < params.n_seed; ++seed) {
        if (budget && budget->exhausted()) break;
        // uniform offset in the chart disk
        double ang = rng.uniform(0.0, 2.0 * M_PI);
        double rad = chart.radius * std::sqrt(rng.uniform01());
        Vec2 u(rad * std::cos(ang), rad * std::sin(ang));
        Vec3 shift = chart.basis * u;

        bool placed = false;
        Transform pose = Transform::Identity();
        int theta_steps = std::max(1, int(std::ceil(2.0 * M_PI / params.d_theta)));
        for (int ti = 0; ti < theta_steps && !placed; ++ti) {
            double theta_z = ti * params.d_theta;
            for (double lam = 0.0; lam <= params.lambda_max + 1e-12; lam += params.d_lambda) {
                Transform cand = chart_aligned_pose(chart, lam, theta_z);
                cand.translation() += shift;
                if (!pose_collides(scene, cand)) {
                    pose = cand;
                    placed = true;
                    break;
                }
            }
        }
        if (!placed) {
            ++failures;
            continue;
        }
        out.push_back(evaluate_pose(scene, pose, provenance, budget));
    }
    require(failures < params.n_seed || !out.empty(), "AdaptionFailed",
            "local adaption found no collision-free pose for any seed");
    return out;
}

}  // namespace graspbo
