#pragma once

#include <vector>

#include "graspbo/hand/model.hpp"

namespace graspbo {

struct LinkTransforms {
    Transform palm = Transform::Identity();
    std::array<Transform, 3> proximal;
    std::array<Transform, 3> distal;
    std::array<Vec3, 3> tips;
};

namespace hand_detail {

// fingers 2,3 swing symmetrically toward the fixed thumb as spread closes
inline double mount_angle(const HandModel& m, int finger, double spread) {
    constexpr double sign[3] = {0.0, -1.0, 1.0};
    return m.mount_angles[size_t(finger)] + sign[finger] * 0.5 * spread;
}

inline void check_limits(const HandModel& m, const HandState& s) {
    constexpr double tol = 1e-9;
    require(s.q(0) >= m.spread_limits(0) - tol && s.q(0) <= m.spread_limits(1) + tol, "JointLimit",
            "spread out of limits");
    for (int f = 0; f < 3; ++f) {
        require(s.q(1 + f) >= m.proximal_limits(0) - tol && s.q(1 + f) <= m.proximal_limits(1) + tol,
                "JointLimit", "proximal joint out of limits");
        require(s.distal_offset(f) >= -tol && s.distal(m, f) <= m.distal_max() + tol, "JointLimit",
                "distal joint out of limits");
    }
}

inline Mat3 rot_y(double a) {
    Mat3 r;
    r << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
    return r;
}

}  // namespace hand_detail

// chain: palm -> rim mount (x radial, z along the approach axis) -> proximal
// and distal links extending along local x, curling toward +z
inline LinkTransforms forward_kinematics(const HandModel& m, const HandState& s,
                                         const Transform& palm) {
    hand_detail::check_limits(m, s);
    LinkTransforms out;
    out.palm = palm;
    for (int f = 0; f < 3; ++f) {
        double gamma = hand_detail::mount_angle(m, f, s.spread());
        Vec3 dir(std::cos(gamma), std::sin(gamma), 0.0);
        Transform mount = Transform::Identity();
        mount.translation() = m.palm_radius * dir;
        mount.linear().col(0) = dir;
        mount.linear().col(1) = Vec3::UnitZ().cross(dir);
        mount.linear().col(2) = Vec3::UnitZ();

        Transform prox = palm * mount;
        prox.linear() = prox.linear() * hand_detail::rot_y(-s.proximal(f));
        out.proximal[size_t(f)] = prox;

        Transform dist = prox;
        dist.translation() += prox.linear().col(0) * m.proximal_length;
        dist.linear() = dist.linear() * hand_detail::rot_y(-s.distal(m, f));
        out.distal[size_t(f)] = dist;
        out.tips[size_t(f)] = dist * Vec3(m.distal_length, 0.0, 0.0);
    }
    return out;
}

namespace hand_detail {

// link-local capsule surface points: rings all around the link plus the far
// apex, used for collision checking
inline std::vector<Vec3> collision_template(double length, double radius) {
    std::vector<Vec3> pts;
    const double stations[4] = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    const Vec3 dirs[4] = {Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)};
    for (double t : stations)
        for (const Vec3& d : dirs) pts.push_back(Vec3(t * length, 0, 0) + radius * d);
    pts.push_back(Vec3(length + radius, 0, 0));
    return pts;
}

// inner-face samples that lead the closing motion; apex only on the distal
inline std::vector<Vec3> sweep_template(double length, double radius, bool with_apex) {
    std::vector<Vec3> pts;
    const double stations[4] = {0.25, 0.5, 0.75, 1.0};
    const double betas[3] = {-M_PI / 4.0, 0.0, M_PI / 4.0};
    for (double t : stations)
        for (double b : betas)
            pts.push_back(Vec3(t * length, 0, 0) + radius * Vec3(0, std::sin(b), std::cos(b)));
    if (with_apex) pts.push_back(Vec3(length + radius, 0, 0));
    return pts;
}

inline std::vector<Vec3> palm_template(const HandModel& m) {
    std::vector<Vec3> pts;
    pts.emplace_back(0, 0, 0);
    for (int i = 0; i < 4; ++i) {
        double a = 2.0 * M_PI * i / 4.0;
        pts.push_back(0.5 * m.palm_radius * Vec3(std::cos(a), std::sin(a), 0));
    }
    for (int i = 0; i < 8; ++i) {
        double a = 2.0 * M_PI * i / 8.0;
        pts.push_back(m.palm_radius * Vec3(std::cos(a), std::sin(a), 0));
    }
    return pts;
}

}  // namespace hand_detail

// world-space surface samples over palm face and all six link capsules,
// rows ready for a batched implicit-surface query
inline MatX collision_points(const HandModel& m, const HandState& s, const Transform& palm) {
    LinkTransforms fk = forward_kinematics(m, s, palm);
    std::vector<Vec3> palm_t = hand_detail::palm_template(m);
    std::vector<Vec3> link_p = hand_detail::collision_template(m.proximal_length, m.capsule_radius);
    std::vector<Vec3> link_d = hand_detail::collision_template(m.distal_length, m.capsule_radius);

    MatX pts(long(palm_t.size() + 3 * (link_p.size() + link_d.size())), 3);
    long r = 0;
    for (const Vec3& p : palm_t) pts.row(r++) = (palm * p).transpose();
    for (int f = 0; f < 3; ++f) {
        for (const Vec3& p : link_p) pts.row(r++) = (fk.proximal[size_t(f)] * p).transpose();
        for (const Vec3& p : link_d) pts.row(r++) = (fk.distal[size_t(f)] * p).transpose();
    }
    return pts;
}

// sweep-sample metadata: which finger/link a row of the batched query belongs to
struct SweepLayout {
    int rows_per_finger = 0;
    int prox_rows = 0;  // leading rows of a finger block; remainder is distal
};

inline SweepLayout sweep_layout() {
    SweepLayout l;
    l.prox_rows = 12;
    l.rows_per_finger = 12 + 13;
    return l;
}

inline MatX sweep_points(const HandModel& m, const HandState& s, const Transform& palm,
                         const std::array<bool, 3>& active) {
    LinkTransforms fk = forward_kinematics(m, s, palm);
    std::vector<Vec3> link_p = hand_detail::sweep_template(m.proximal_length, m.capsule_radius, false);
    std::vector<Vec3> link_d = hand_detail::sweep_template(m.distal_length, m.capsule_radius, true);
    int n_active = 0;
    for (bool a : active) n_active += a ? 1 : 0;
    MatX pts(long(n_active) * long(link_p.size() + link_d.size()), 3);
    long r = 0;
    for (int f = 0; f < 3; ++f) {
        if (!active[size_t(f)]) continue;
        for (const Vec3& p : link_p) pts.row(r++) = (fk.proximal[size_t(f)] * p).transpose();
        for (const Vec3& p : link_d) pts.row(r++) = (fk.distal[size_t(f)] * p).transpose();
    }
    return pts;
}

}  // namespace graspbo
