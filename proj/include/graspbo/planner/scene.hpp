#pragma once

#include "graspbo/geometry/kdtree.hpp"
#include "graspbo/geometry/sampling.hpp"
#include "graspbo/gpis/gpis.hpp"
#include "graspbo/hand/grasp.hpp"
#include "graspbo/posedomain/ellipsoid.hpp"

namespace graspbo {

struct SceneParams {
    int n_surface = 64;             // surface samples backing the implicit model
    std::uint64_t sample_seed = 0;  // scene construction seed (independent of planner seeds)
    double gpis_offset_frac = 0.1;  // offset targets as a fraction of the AABB diagonal
    double gpis_rho_frac = 0.4;
    double outer_scale = 2.5;       // outer translation shell relative to the object box
    double chart_radius_frac = 0.25;
    double mu_f = 0.5;
    int m_e = 8;
    double lambda_vol = 1.0;
    AutoGraspOptions autograsp{};
};

// everything a planner needs about one object + hand setup
struct Scene {
    TriMesh mesh;
    HandModel hand;
    SurfaceSamples samples;
    GpisModel gpis;
    SurfaceKdTree tree;
    EllipsoidPair shell;
    Vec3 centroid = Vec3::Zero();
    double lambda_tau = 1.0;
    double chart_radius = 0.1;
    SceneParams params;

    Scene(TriMesh mesh_in, HandModel hand_in, SceneParams p)
        : mesh(std::move(mesh_in)),
          hand(std::move(hand_in)),
          samples(sample_surface(mesh, p.n_surface, p.sample_seed)),
          gpis(GpisModel::fit(samples, p.gpis_offset_frac * compute_aabb(mesh).diagonal(),
                              GpisHyper{0.0, p.gpis_rho_frac * compute_aabb(mesh).diagonal()})),
          tree(samples),
          shell(EllipsoidPair::from_aabbs(compute_aabb(mesh), compute_aabb(mesh, p.outer_scale))),
          params(p) {
        centroid = mesh.centroid();
        double max_d = 0.0;
        for (const Vec3& s : samples.points) max_d = std::max(max_d, (s - centroid).norm());
        require(max_d > 0.0, "EmptyMesh", "degenerate object: all samples at the centroid");
        lambda_tau = 1.0 / max_d;
        chart_radius = p.chart_radius_frac * compute_aabb(mesh).diagonal();
        hand.validate();
    }
};

inline Scene build_scene(TriMesh mesh, HandModel hand, const SceneParams& p = {}) {
    return Scene(std::move(mesh), std::move(hand), p);
}

}  // namespace graspbo
