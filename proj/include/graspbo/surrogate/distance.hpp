#pragma once

#include <algorithm>
#include <cmath>

#include "graspbo/core/types.hpp"

namespace graspbo {

inline void check_rotation(const Mat3& r, double tol = 1e-6) {
    double ortho = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
    require(ortho <= tol && std::abs(r.determinant() - 1.0) <= tol, "NotARotation",
            "matrix is not a rotation (orthogonality defect " + std::to_string(ortho) + ")");
}

inline double rotation_angle(const Mat3& r1, const Mat3& r2) {
    Quat q1(r1), q2(r2);
    double dot = std::min(1.0, std::abs(q1.dot(q2)));
    return 2.0 * std::acos(dot);
}

// translation distance plus weighted geodesic rotation angle
inline double se3_distance(const Transform& t1, const Transform& t2, double w_rot = 0.1) {
    check_rotation(t1.linear());
    check_rotation(t2.linear());
    return (t1.translation() - t2.translation()).norm() +
           w_rot * rotation_angle(t1.linear(), t2.linear());
}

struct Se3Distance {
    double w_rot = 0.1;
    double operator()(const Transform& a, const Transform& b) const {
        return se3_distance(a, b, w_rot);
    }
};

struct EuclideanDistance {
    template <class V>
    double operator()(const V& a, const V& b) const {
        return (a - b).norm();
    }
};

}  // namespace graspbo
