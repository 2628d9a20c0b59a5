#pragma once

#include "graspbo/gpis/gpis.hpp"
#include "graspbo/hand/kinematics.hpp"

namespace graspbo {

struct Contact {
    Vec3 point = Vec3::Zero();
    Vec3 normal = Vec3::UnitZ();  // outward surface normal (gradient direction)
    int finger = -1;
    int link = -1;                // 0 proximal, 1 distal
};

struct CollisionReport {
    bool collides = false;
    double penetration = 0.0;  // worst penetration depth (implicit-surface units)
};

inline CollisionReport check_collision(const HandModel& m, const HandState& s,
                                       const Transform& palm, const GpisModel& gpis,
                                       double penetration_tol = 0.01) {
    VecX f = gpis.values(collision_points(m, s, palm));
    double worst = f.minCoeff();
    return {worst < -penetration_tol, std::max(0.0, -worst)};
}

struct AutoGraspOptions {
    double step = 0.005;           // rad per sweep step
    double eps_c = 0.005;          // contact band half-width
    double penetration_tol = 0.01;
    int max_steps = 2000;
    Vec4 speeds{0.0, 1.0, 1.0, 1.0};
};

struct AutoGraspResult {
    HandState state;
    std::vector<Contact> contacts;
    int steps = 0;
};

// close joints at per-DOF speed ratios until each finger meets the surface: a
// contact anywhere on a finger freezes its proximal joint; the distal joint
// keeps closing (breakaway) until its own contact or limit
inline AutoGraspResult auto_grasp(const HandModel& m, const Transform& palm, const GpisModel& gpis,
                                  const AutoGraspOptions& opts = {},
                                  const HandState& initial = HandState{}) {
    require(!check_collision(m, initial, palm, gpis, opts.penetration_tol).collides,
            "InitialCollision", "auto_grasp requires a collision-free starting pose");

    HandState s = initial;
    std::array<bool, 3> prox_frozen{false, false, false};
    std::array<bool, 3> dist_frozen{false, false, false};
    AutoGraspResult out;
    SweepLayout layout = sweep_layout();

    auto finger_live = [&](int f) {
        if (dist_frozen[size_t(f)] || opts.speeds(1 + f) <= 0.0) return false;
        bool prox_can = !prox_frozen[size_t(f)] && s.q(1 + f) < m.proximal_limits(1) - 1e-12;
        bool dist_can = prox_frozen[size_t(f)] && s.distal(m, f) < m.distal_max() - 1e-12;
        return prox_can || dist_can;
    };

    auto detect = [&]() {
        std::array<bool, 3> active{};
        int n_active = 0;
        for (int f = 0; f < 3; ++f) {
            active[size_t(f)] = !dist_frozen[size_t(f)];
            n_active += active[size_t(f)] ? 1 : 0;
        }
        if (n_active == 0) return;
        MatX pts = sweep_points(m, s, palm, active);
        VecX vals = gpis.values(pts);
        long base = 0;
        for (int f = 0; f < 3; ++f) {
            if (!active[size_t(f)]) continue;
            // per link, the qualifying sample closest to the contact threshold
            for (int link = 0; link < 2; ++link) {
                if (link == 0 && prox_frozen[size_t(f)]) continue;
                long lo = base + (link == 0 ? 0 : layout.prox_rows);
                long hi = base + (link == 0 ? layout.prox_rows : layout.rows_per_finger);
                long best = -1;
                double best_gap = std::numeric_limits<double>::infinity();
                for (long r = lo; r < hi; ++r) {
                    double av = std::abs(vals(r));
                    if (av <= opts.eps_c && std::abs(av - opts.eps_c) < best_gap) {
                        best_gap = std::abs(av - opts.eps_c);
                        best = r;
                    }
                }
                if (best < 0) continue;
                Vec3 p = pts.row(best).transpose();
                auto [fv, g] = gpis.query(p);
                (void)fv;
                // a touch needs a resolvable surface normal; where the field is
                // flat the band test alone would fake a contact
                if (g.norm() <= 1e-8) continue;
                prox_frozen[size_t(f)] = true;
                if (link == 1) dist_frozen[size_t(f)] = true;
                out.contacts.push_back({p, (g / g.norm()).eval(), f, link});
            }
            base += layout.rows_per_finger;
        }
    };

    auto advance = [&]() {
        if (opts.speeds(0) > 0.0)
            s.q(0) = std::min(m.spread_limits(1), s.q(0) + opts.step * opts.speeds(0));
        for (int f = 0; f < 3; ++f) {
            if (dist_frozen[size_t(f)] || opts.speeds(1 + f) <= 0.0) continue;
            double d = opts.step * opts.speeds(1 + f);
            if (!prox_frozen[size_t(f)]) {
                s.q(1 + f) = std::min(m.proximal_limits(1), s.q(1 + f) + d);
            } else {
                s.distal_offset(f) =
                    std::min(m.distal_max() - m.coupling * s.q(1 + f), s.distal_offset(f) + m.coupling * d);
            }
        }
    };

    for (int step = 0; step <= opts.max_steps; ++step) {
        detect();
        bool any_live = false;
        for (int f = 0; f < 3; ++f) any_live = any_live || finger_live(f);
        bool spread_live = opts.speeds(0) > 0.0 && s.q(0) < m.spread_limits(1) - 1e-12;
        if (!any_live && !spread_live) break;
        if (step == opts.max_steps) break;
        advance();
        out.steps = step + 1;
    }
    out.state = s;
    return out;
}

// signed per-fingertip contact residual |f(tip)| - eps_c; <= 0 means the
// fingertip satisfies the contact constraint
inline Vec3 fingertip_constraint_residual(const HandModel& m, const Transform& palm, const Vec4& q,
                                          const GpisModel& gpis, double eps_c) {
    HandState s;
    s.q = q;
    LinkTransforms fk = forward_kinematics(m, s, palm);
    Vec3 r;
    for (int f = 0; f < 3; ++f) r(f) = std::abs(gpis.value(fk.tips[size_t(f)])) - eps_c;
    return r;
}

}  // namespace graspbo
