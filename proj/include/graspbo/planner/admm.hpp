#pragma once

#include <functional>

#include "graspbo/planner/atlas.hpp"
#include "graspbo/surrogate/acquisition.hpp"
#include "graspbo/surrogate/distance.hpp"
#include "graspbo/surrogate/lhs.hpp"

namespace graspbo {

struct AdmmParams {
    double rho = 1.0;
    double eps_primal = 1e-3;
    double eps_dual = 1e-3;
    int max_iter = 10;
};

struct AdmmResult {
    VecX q, z, y;
    int iters = 0;
    bool converged = false;
    double primal_res = 0.0;
    double dual_res = 0.0;
};

// consensus ADMM for maximize f(q) + g(z) subject to q = z. The subsolvers
// receive (other variable, scaled dual y) and return the argmax of their term
// minus the (rho/2)-coupled quadratic.
inline AdmmResult admm_consensus(const VecX& q0,
                                 const std::function<VecX(const VecX&, const VecX&)>& solve_q,
                                 const std::function<VecX(const VecX&, const VecX&)>& solve_z,
                                 const AdmmParams& p) {
    AdmmResult r;
    r.q = q0;
    r.z = q0;
    r.y = VecX::Zero(q0.size());
    for (int k = 0; k < p.max_iter; ++k) {
        r.q = solve_q(r.z, r.y);
        VecX z_new = solve_z(r.q, r.y);
        r.dual_res = (p.rho * (z_new - r.z)).norm();
        r.z = z_new;
        r.y += p.rho * (r.q - r.z);
        r.primal_res = (r.q - r.z).norm();
        r.iters = k + 1;
        if (r.primal_res <= p.eps_primal && r.dual_res <= p.eps_dual) {
            r.converged = true;
            break;
        }
    }
    return r;
}

// small EI loop over a box; the GP stores raw objective values while any
// iteration-dependent analytic term (the ADMM coupling) is supplied per call
class BoxBo {
public:
    BoxBo(VecX lo, VecX hi, double noise = 1e-6)
        : lo_(std::move(lo)), hi_(std::move(hi)),
          gp_(EuclideanDistance{}, KernelParams{0.1, 0.5 * (hi_ - lo_).norm()}, noise) {}

    const Dataset<VecX>& data() const { return gp_.data(); }

    void seed_point(const VecX& x, double value) { gp_.add(x, value); }

    // spend n_evals on EI-chosen points of raw(x), EI computed against
    // raw + extra; returns nothing — query via argmax_augmented
    void run(int n_evals, int n_init, const std::function<double(const VecX&)>& raw,
             const std::function<double(const VecX&)>& extra, Rng& rng, int n_cand = 128) {
        int dim = int(lo_.size());
        while (int(gp_.size()) < n_init && n_evals > 0) {
            VecX x = draw(rng, dim);
            gp_.add(x, raw(x));
            --n_evals;
        }
        for (int e = 0; e < n_evals; ++e) {
            double best_aug = augmented_best(extra);
            VecX best_x = draw(rng, dim);
            double best_ei = -1.0;
            for (int c = 0; c < n_cand; ++c) {
                VecX x = draw(rng, dim);
                auto [mu, s] = gp_.posterior(x);
                double ei = expected_improvement(mu + extra(x), s, best_aug);
                if (ei > best_ei) {
                    best_ei = ei;
                    best_x = x;
                }
            }
            gp_.add(best_x, raw(best_x));
        }
    }

    VecX argmax_augmented(const std::function<double(const VecX&)>& extra) const {
        require(gp_.size() > 0, "IndexError", "subproblem has no evaluations");
        size_t best = 0;
        double best_v = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < gp_.size(); ++i) {
            double v = gp_.data().values[i] + extra(gp_.data().locs[i]);
            if (v > best_v) {
                best_v = v;
                best = i;
            }
        }
        return gp_.data().locs[best];
    }

    double raw_value_at(const VecX& x) const {
        for (size_t i = 0; i < gp_.size(); ++i)
            if ((gp_.data().locs[i] - x).norm() <= 1e-12) return gp_.data().values[i];
        fail("IndexError", "location not in subproblem dataset");
    }

private:
    double augmented_best(const std::function<double(const VecX&)>& extra) const {
        double best = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < gp_.size(); ++i)
            best = std::max(best, gp_.data().values[i] + extra(gp_.data().locs[i]));
        return best;
    }

    VecX draw(Rng& rng, int dim) {
        VecX x(dim);
        for (int d = 0; d < dim; ++d) x(d) = rng.uniform(lo_(d), hi_(d));
        return x;
    }

    VecX lo_, hi_;
    GpPosterior<VecX, EuclideanDistance> gp_;
};

struct AdmmCpParams {
    AdmmParams admm{};
    double mu_pen = 100.0;
    int n_seed = 5;
    int sub_evals = 30;  // per q/z update
    int sub_init = 8;
    bool hinge = false;  // penalize only residual > 0 instead of the raw square
};

struct AdmmCpResult {
    GraspCandidate candidate;
    Transform palm = Transform::Identity();
    VecX q;
    bool converged = false;
    double primal_res = 0.0;
    double dual_res = 0.0;
};

namespace planner_detail {

// quality of the fingertip contact set at joints q with the palm fixed;
// colliding or contactless configurations score zero; works purely on the
// implicit-surface model, so it does not count against the simulator budget
inline double fingertip_objective(const Scene& scene, const Transform& palm, const Vec4& q) {
    HandState s;
    s.q = q;
    if (check_collision(scene.hand, s, palm, scene.gpis, scene.params.autograsp.penetration_tol)
            .collides)
        return 0.0;
    LinkTransforms fk = forward_kinematics(scene.hand, s, palm);
    std::vector<Contact> contacts;
    for (int f = 0; f < 3; ++f) {
        auto [v, g] = scene.gpis.query(fk.tips[size_t(f)]);
        (void)v;
        if (g.norm() > 1e-8) contacts.push_back({fk.tips[size_t(f)], (g / g.norm()).eval(), f, 1});
    }
    if (contacts.empty()) return 0.0;
    GraspQuality gq = quality_of(scene, contacts);
    return objective(gq.eps, gq.vol, scene.params.lambda_vol);
}

// contact feasibility term: negative penalty on fingertip band residuals
inline double contact_term(const Scene& scene, const Transform& palm, const Vec4& q, double mu_pen,
                           bool hinge) {
    Vec3 c = fingertip_constraint_residual(scene.hand, palm, q, scene.gpis,
                                           scene.params.autograsp.eps_c);
    double sum = 0.0;
    for (int f = 0; f < 3; ++f) {
        double r = hinge ? std::max(0.0, c(f)) : c(f);
        sum += r * r;
    }
    return -mu_pen * sum;
}

// candidate from a fixed (palm, q): fingertip contacts within the band only,
// so stored contacts honor the contact invariant
inline GraspCandidate admm_candidate(const Scene& scene, const Transform& palm, const Vec4& q) {
    GraspCandidate c;
    c.palm = palm;
    c.q = q;
    c.provenance = "ADMM";
    HandState s;
    s.q = q;
    if (check_collision(scene.hand, s, palm, scene.gpis, scene.params.autograsp.penetration_tol)
            .collides)
        return c;
    LinkTransforms fk = forward_kinematics(scene.hand, s, palm);
    for (int f = 0; f < 3; ++f) {
        auto [v, g] = scene.gpis.query(fk.tips[size_t(f)]);
        if (std::abs(v) <= scene.params.autograsp.eps_c && g.norm() > 1e-8)
            c.contacts.push_back({fk.tips[size_t(f)], (g / g.norm()).eval(), f, 1});
    }
    GraspQuality gq = quality_of(scene, c.contacts);
    c.q_eps = gq.eps;
    c.q_vol = gq.vol;
    c.f_obj = objective(gq.eps, gq.vol, scene.params.lambda_vol);
    c.feasible = true;
    return c;
}

}  // namespace planner_detail

// contact-point refinement: perturb the palm on its local chart, then run
// consensus ADMM over the joint box with BO subsolvers for the quality term
// (q-update) and the contact-feasibility term (z-update)
inline AdmmCpResult admm_cp_opt(const Scene& scene, const Transform& palm_in,
                                const AdmmCpParams& params, Rng& rng) {
    NearestResult near = scene.tree.nearest(palm_in.translation());
    Chart chart = make_chart(scene.gpis, near.point, scene.chart_radius);

    VecX lo(4), hi(4);
    lo << scene.hand.spread_limits(0), scene.hand.proximal_limits(0), scene.hand.proximal_limits(0),
        scene.hand.proximal_limits(0);
    hi << scene.hand.spread_limits(1), scene.hand.proximal_limits(1), scene.hand.proximal_limits(1),
        scene.hand.proximal_limits(1);

    AdmmCpResult best;
    best.q = VecX::Zero(4);
    bool any = false;
    for (int seed = 0; seed < params.n_seed; ++seed) {
        Vec2 u = Vec2::Zero();
        if (seed > 0) {
            double ang = rng.uniform(0.0, 2.0 * M_PI);
            double rad = chart.radius * std::sqrt(rng.uniform01());
            u << rad * std::cos(ang), rad * std::sin(ang);
        }
        Transform palm = palm_in;
        palm.translation() += chart.basis * u;
        if (pose_collides(scene, palm)) continue;  // rejected perturbation

        BoxBo bo_q(lo, hi);
        BoxBo bo_z(lo, hi);
        auto raw_q = [&](const VecX& x) {
            return planner_detail::fingertip_objective(scene, palm, Vec4(x));
        };
        auto raw_z = [&](const VecX& x) {
            return planner_detail::contact_term(scene, palm, Vec4(x), params.mu_pen, params.hinge);
        };

        auto solve_q = [&](const VecX& z, const VecX& y) {
            auto extra = [&](const VecX& x) {
                return -0.5 * params.admm.rho * (x - z + y / params.admm.rho).squaredNorm();
            };
            bo_q.run(params.sub_evals, params.sub_init, raw_q, extra, rng, 128);
            return bo_q.argmax_augmented(extra);
        };
        auto solve_z = [&](const VecX& q, const VecX& y) {
            auto extra = [&](const VecX& x) {
                return -0.5 * params.admm.rho * (q - x + y / params.admm.rho).squaredNorm();
            };
            bo_z.run(params.sub_evals, params.sub_init, raw_z, extra, rng);
            return bo_z.argmax_augmented(extra);
        };

        AdmmResult ar = admm_consensus(VecX::Zero(4), solve_q, solve_z, params.admm);
        GraspCandidate cand = planner_detail::admm_candidate(scene, palm, Vec4(ar.q));
        if (!any || cand.f_obj > best.candidate.f_obj) {
            any = true;
            best.candidate = cand;
            best.palm = palm;
            best.q = ar.q;
            best.converged = ar.converged;
            best.primal_res = ar.primal_res;
            best.dual_res = ar.dual_res;
        }
    }
    require(any, "NoConvergence", "all palm perturbations collided; no refinement run");
    if (!best.converged)
        log::debug("contact refinement hit max_iter (primal %.3g dual %.3g)", best.primal_res,
                   best.dual_res);
    return best;
}

}  // namespace graspbo
