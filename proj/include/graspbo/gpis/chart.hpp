#pragma once

#include "graspbo/gpis/gpis.hpp"

namespace graspbo {

// local tangent-plane parameterization of the implicit surface around a point
struct Chart {
    Vec3 center = Vec3::Zero();
    Vec3 normal = Vec3::UnitZ();              // outward unit normal (f increases outside)
    Eigen::Matrix<double, 3, 2> basis{};      // orthonormal tangent directions
    double radius = 0.0;
};

inline Chart make_chart(const GpisModel& gpis, const Vec3& center, double radius) {
    require(radius > 0, "OutOfChart", "chart radius must be positive");
    auto [v, g] = gpis.query(center);
    (void)v;
    double gn = g.norm();
    require(gn > 1e-8, "VanishingGradient",
            "implicit-surface gradient vanishes at chart center (|g|=" + std::to_string(gn) + ")");
    Vec3 n = g / gn;

    // Householder reflection taking e3 onto -sign(n.z)*n; its first two columns
    // span the tangent plane and are deterministic in n
    double s = n.z() >= 0.0 ? 1.0 : -1.0;
    Vec3 w = n + s * Vec3::UnitZ();
    Mat3 h = Mat3::Identity() - 2.0 / w.squaredNorm() * (w * w.transpose());

    Chart chart;
    chart.center = center;
    chart.normal = n;
    chart.basis.col(0) = h.col(0);
    chart.basis.col(1) = h.col(1);
    chart.radius = radius;
    return chart;
}

inline Vec3 chart_point(const Chart& chart, const Vec2& u) {
    require(u.norm() <= chart.radius, "OutOfChart",
            "chart coordinate norm " + std::to_string(u.norm()) + " exceeds radius " +
                std::to_string(chart.radius));
    return chart.center + chart.basis * u;
}

}  // namespace graspbo
