#pragma once

#include "graspbo/gpis/chart.hpp"
#include "graspbo/posedomain/ellipsoid.hpp"
#include "graspbo/posedomain/hyperspherical.hpp"

namespace graspbo {

// decode a unit-cube point into a palm pose: translation from the ellipsoid
// shell, orientation from hyperspherical coordinates
inline Transform pose_from_cube(const EllipsoidPair& shell, const VecX& u) {
    require(u.size() == 6, "IndexError", "pose cube point must be 6-d");
    require(u.minCoeff() >= 0.0 && u.maxCoeff() <= 1.0, "AngleRange",
            "pose cube coordinates must lie in [0,1]");
    Transform t = Transform::Identity();
    t.translation() = shell.sample_translation(u.head<3>());
    HypersphericalAngles a{u(3) * M_PI, u(4) * M_PI, u(5) * 2.0 * M_PI * (1.0 - 1e-15)};
    t.linear() = quat_from_hyperspherical(a).toRotationMatrix();
    return t;
}

// rotation taking the palm approach axis +z onto direction d; the antipodal
// case flips about the x-axis
inline Mat3 rotation_z_onto(const Vec3& d) {
    double c = d.z();  // e_z . d for unit d
    if (c > 1.0 - 1e-12) return Mat3::Identity();
    if (c < -1.0 + 1e-12) {
        Mat3 r = Mat3::Identity();
        r(1, 1) = -1.0;
        r(2, 2) = -1.0;
        return r;
    }
    Vec3 axis = Vec3::UnitZ().cross(d);
    Mat3 ax;
    ax << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
    return Mat3::Identity() + ax + ax * ax * ((1.0 - c) / axis.squaredNorm());
}

// palm pose facing the chart: approach axis along the inward normal, palm
// origin standing off along the outward normal, free spin about the approach
inline Transform chart_aligned_pose(const Chart& chart, double standoff, double theta_z) {
    Transform t = Transform::Identity();
    t.translation() = chart.center + standoff * chart.normal;
    Mat3 rz;
    rz = Eigen::AngleAxisd(theta_z, Vec3::UnitZ()).toRotationMatrix();
    t.linear() = rotation_z_onto(-chart.normal) * rz;
    return t;
}

}  // namespace graspbo
