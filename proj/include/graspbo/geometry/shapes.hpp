#pragma once

#include <cmath>
#include <map>
#include <numbers>

#include "graspbo/geometry/mesh.hpp"

namespace graspbo {

// Analytic test shapes. All generated with outward-facing (CCW) winding.

inline TriMesh make_box(double sx, double sy, double sz) {
    TriMesh m;
    m.name = "box";
    const double hx = sx / 2, hy = sy / 2, hz = sz / 2;
    for (int i = 0; i < 8; ++i)
        m.vertices.emplace_back(i & 1 ? hx : -hx, i & 2 ? hy : -hy, i & 4 ? hz : -hz);
    auto quad = [&m](int a, int b, int c, int d) {
        m.faces.push_back({a, b, c});
        m.faces.push_back({a, c, d});
    };
    quad(0, 2, 3, 1);  // -z
    quad(4, 5, 7, 6);  // +z
    quad(0, 1, 5, 4);  // -y
    quad(2, 6, 7, 3);  // +y
    quad(0, 4, 6, 2);  // -x
    quad(1, 3, 7, 5);  // +x
    return m;
}

inline TriMesh make_icosphere(double radius, int subdivisions) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    TriMesh m;
    m.name = "sphere";
    auto push = [&m, radius](double x, double y, double z) {
        m.vertices.push_back(radius * Vec3(x, y, z).normalized());
    };
    push(-1, t, 0); push(1, t, 0); push(-1, -t, 0); push(1, -t, 0);
    push(0, -1, t); push(0, 1, t); push(0, -1, -t); push(0, 1, -t);
    push(t, 0, -1); push(t, 0, 1); push(-t, 0, -1); push(-t, 0, 1);
    m.faces = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
               {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
               {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 p = radius * (m.vertices[size_t(a)] + m.vertices[size_t(b)]).normalized();
            m.vertices.push_back(p);
            int idx = static_cast<int>(m.vertices.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(m.faces.size() * 4);
        for (const auto& f : m.faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        m.faces = std::move(next);
    }
    return m;
}

inline TriMesh make_cylinder(double radius, double height, int segments = 48) {
    TriMesh m;
    m.name = "cylinder";
    const double hz = height / 2;
    for (int i = 0; i < segments; ++i) {
        double a = 2.0 * std::numbers::pi * i / segments;
        m.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), -hz);
        m.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), hz);
    }
    int bottom_center = static_cast<int>(m.vertices.size());
    m.vertices.emplace_back(0, 0, -hz);
    int top_center = bottom_center + 1;
    m.vertices.emplace_back(0, 0, hz);
    for (int i = 0; i < segments; ++i) {
        int j = (i + 1) % segments;
        int b0 = 2 * i, t0 = 2 * i + 1, b1 = 2 * j, t1 = 2 * j + 1;
        m.faces.push_back({b0, b1, t1});
        m.faces.push_back({b0, t1, t0});
        m.faces.push_back({bottom_center, b1, b0});
        m.faces.push_back({top_center, t0, t1});
    }
    return m;
}

}  // namespace graspbo
