#pragma once

#include "graspbo/planner/candidate.hpp"
#include "graspbo/planner/scene.hpp"
#include "graspbo/posedomain/pose.hpp"
#include "graspbo/quality/metrics.hpp"

namespace graspbo {

inline Transform decode_pose(const Scene& scene, const VecX& u) {
    return pose_from_cube(scene.shell, u);
}

inline GraspQuality quality_of(const Scene& scene, const std::vector<Contact>& contacts) {
    if (contacts.empty()) return {};
    WrenchSet ws = contact_wrenches(contacts, scene.params.mu_f, scene.params.m_e,
                                    scene.lambda_tau, scene.centroid);
    return grasp_quality(ws);
}

inline GraspCandidate score_candidate(const Scene& scene, const Transform& palm,
                                      const AutoGraspResult& ag, const std::string& provenance) {
    GraspCandidate c;
    c.palm = palm;
    c.q = ag.state.q;
    c.distal_offset = ag.state.distal_offset;
    c.contacts = ag.contacts;
    GraspQuality gq = quality_of(scene, ag.contacts);
    c.q_eps = gq.eps;
    c.q_vol = gq.vol;
    c.f_obj = objective(gq.eps, gq.vol, scene.params.lambda_vol);
    c.provenance = provenance;
    c.feasible = true;
    return c;
}

inline bool pose_collides(const Scene& scene, const Transform& palm,
                          const HandState& state = HandState{}) {
    return check_collision(scene.hand, state, palm, scene.gpis, scene.params.autograsp.penetration_tol)
        .collides;
}

// close the hand from a collision-free pose and score the resulting grasp;
// one call = one evaluation against the shared budget
inline GraspCandidate evaluate_pose(const Scene& scene, const Transform& palm,
                                    const std::string& provenance, EvalBudget* budget = nullptr) {
    if (budget) budget->tick();
    AutoGraspResult ag = auto_grasp(scene.hand, palm, scene.gpis, scene.params.autograsp);
    return score_candidate(scene, palm, ag, provenance);
}

}  // namespace graspbo
