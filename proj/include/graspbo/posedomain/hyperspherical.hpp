#pragma once

#include <cmath>

#include "graspbo/core/types.hpp"

namespace graspbo {

// rotation parameterized by hyperspherical coordinates on S^3:
// phi, psi in [0,pi], theta in [0,2pi)
struct HypersphericalAngles {
    double phi = 0.0;
    double psi = 0.0;
    double theta = 0.0;
};

inline Quat quat_from_hyperspherical(const HypersphericalAngles& a) {
    require(a.phi >= 0.0 && a.phi <= M_PI && a.psi >= 0.0 && a.psi <= M_PI && a.theta >= 0.0 &&
                a.theta < 2.0 * M_PI + 1e-12,
            "AngleRange", "hyperspherical angles out of range");
    double sp = std::sin(a.phi), ss = std::sin(a.psi);
    return Quat(std::cos(a.phi),                      // w
                sp * std::cos(a.psi),                 // x
                sp * ss * std::cos(a.theta),          // y
                sp * ss * std::sin(a.theta));         // z
}

// inverse map after canonicalizing to the w >= 0 hemisphere (q and -q are the
// same rotation); degenerate layers pin the free angles to zero
inline HypersphericalAngles hyperspherical_from_quat(Quat q) {
    double coeffs[4] = {q.w(), q.x(), q.y(), q.z()};
    for (double c : coeffs) {
        if (c > 0) break;
        if (c < 0) {
            q.coeffs() = -q.coeffs();
            break;
        }
    }
    q.normalize();
    HypersphericalAngles a;
    a.phi = std::acos(std::clamp(q.w(), -1.0, 1.0));
    double s1 = std::sqrt(std::max(0.0, 1.0 - q.w() * q.w()));
    if (s1 < 1e-12) return a;
    a.psi = std::acos(std::clamp(q.x() / s1, -1.0, 1.0));
    if (std::sqrt(q.y() * q.y() + q.z() * q.z()) < 1e-12) return a;
    a.theta = std::atan2(q.z(), q.y());
    if (a.theta < 0.0) a.theta += 2.0 * M_PI;
    return a;
}

}  // namespace graspbo
