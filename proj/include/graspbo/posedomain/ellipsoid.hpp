#pragma once

#include <cmath>

#include "graspbo/geometry/mesh.hpp"

namespace graspbo {

// concentric inner/outer ellipsoids bounding the palm-translation shell
struct EllipsoidPair {
    Vec3 center = Vec3::Zero();
    Vec3 inner = Vec3::Ones();  // semi-axes
    Vec3 outer = Vec3::Ones();

    static EllipsoidPair from_aabbs(const Aabb& inner_box, const Aabb& outer_box,
                                    double degenerate_eps = 1e-6) {
        require((inner_box.center() - outer_box.center()).norm() <= 1e-9, "CenterMismatch",
                "inner and outer boxes must share a center");
        EllipsoidPair e;
        e.center = inner_box.center();
        e.inner = inner_box.half_extents().cwiseMax(degenerate_eps);
        e.outer = outer_box.half_extents().cwiseMax(degenerate_eps);
        require((e.outer - e.inner).minCoeff() >= 0.0, "DegenerateEllipsoid",
                "outer semi-axes must dominate inner semi-axes");
        return e;
    }

    // radial multiplier at which the inner-shell direction hits the outer shell
    double rmax(double theta, double phi) const {
        double st = std::sin(theta), ct = std::cos(theta);
        double dx = inner.x() * st * std::cos(phi) / outer.x();
        double dy = inner.y() * st * std::sin(phi) / outer.y();
        double dz = inner.z() * ct / outer.z();
        return 1.0 / std::sqrt(dx * dx + dy * dy + dz * dz);
    }

    // cube coords -> point between the shells: u0 -> polar, u1 -> azimuth,
    // u2 -> radial interpolation from inner (0) to outer (1)
    Vec3 sample_translation(const Vec3& u) const {
        require(u.minCoeff() >= 0.0 && u.maxCoeff() <= 1.0, "AngleRange",
                "translation cube coordinates must lie in [0,1]");
        double theta = u(0) * M_PI;
        double phi = u(1) * 2.0 * M_PI;
        double r = 1.0 + u(2) * (rmax(theta, phi) - 1.0);
        double st = std::sin(theta);
        Vec3 dir(inner.x() * st * std::cos(phi), inner.y() * st * std::sin(phi),
                 inner.z() * std::cos(theta));
        return center + r * dir;
    }
};

}  // namespace graspbo
