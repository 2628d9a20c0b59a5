#pragma once

#include <vector>

#include "graspbo/hand/grasp.hpp"

namespace graspbo {

struct WrenchSet {
    std::vector<Vec6> primitives;  // [force; scaled torque], union over contact cones
    double torque_scale = 1.0;     // 1/m normalization applied to torque arms
    double friction = 0.5;
    int cone_edges = 8;
};

// discretized friction cones: per contact, m_e edge forces with unit normal
// component, each paired with its scaled torque about the origin o
inline WrenchSet contact_wrenches(const std::vector<Contact>& contacts, double mu_f, int m_e,
                                  double lambda_tau, const Vec3& origin) {
    require(!contacts.empty(), "DegenerateNormal", "wrench set needs at least one contact");
    require(mu_f >= 0.0, "DegenerateNormal", "friction coefficient must be nonnegative");
    require(mu_f == 0.0 || m_e >= 3, "DegenerateNormal", "friction cone needs >= 3 edges");

    WrenchSet ws;
    ws.torque_scale = lambda_tau;
    ws.friction = mu_f;
    ws.cone_edges = mu_f == 0.0 ? 1 : m_e;
    for (const Contact& c : contacts) {
        double nn = c.normal.norm();
        require(nn > 1e-8, "DegenerateNormal", "contact normal vanishes");
        Vec3 n = c.normal / nn;
        Vec3 arm = c.point - origin;
        auto push = [&](const Vec3& f) {
            Vec6 w;
            w.head<3>() = f;
            w.tail<3>() = lambda_tau * arm.cross(f);
            ws.primitives.push_back(w);
        };
        if (mu_f == 0.0) {
            push(n);
            continue;
        }
        // tangent frame anchored to the contact geometry (radial direction about
        // the torque origin) so the edge set rotates rigidly with the contact
        // set; Householder fallback when the arm is (anti)parallel to the normal
        Vec3 t1;
        Vec3 rad = arm - arm.dot(n) * n;
        if (rad.norm() > 1e-9) {
            t1 = rad.normalized();
        } else {
            double s = n.z() >= 0.0 ? 1.0 : -1.0;
            Vec3 v = n + s * Vec3::UnitZ();
            t1 = (Mat3::Identity() - 2.0 / v.squaredNorm() * (v * v.transpose())).col(0);
        }
        Vec3 t2 = n.cross(t1);
        for (int j = 0; j < m_e; ++j) {
            double a = 2.0 * M_PI * j / m_e;
            push(n + mu_f * (std::cos(a) * t1 + std::sin(a) * t2));
        }
    }
    return ws;
}

}  // namespace graspbo
