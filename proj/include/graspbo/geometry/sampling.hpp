#pragma once

#include <cmath>
#include <vector>

#include "graspbo/core/rng.hpp"
#include "graspbo/geometry/mesh.hpp"

namespace graspbo {

struct SurfaceSamples {
    std::vector<Vec3> points;
    std::vector<Vec3> normals;  // unit, outward (face winding convention)
    std::vector<int> face_ids;
    std::string source_mesh;

    size_t size() const { return points.size(); }
};

// Area-weighted uniform surface sampling; deterministic for a fixed seed.
inline SurfaceSamples sample_surface(const TriMesh& mesh, int n, std::uint64_t seed) {
    require(!mesh.faces.empty(), "EmptyMesh", "sample_surface on empty mesh");
    require(n >= 1, "EmptyMesh", "sample_surface needs n >= 1");

    std::vector<double> cumulative(mesh.faces.size());
    double total = 0.0;
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        total += mesh.face_area(static_cast<int>(f));
        cumulative[f] = total;
    }

    Rng rng(seed);
    SurfaceSamples out;
    out.source_mesh = mesh.name;
    out.points.reserve(size_t(n));
    out.normals.reserve(size_t(n));
    out.face_ids.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
        double r = rng.uniform01() * total;
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), r);
        int f = static_cast<int>(it - cumulative.begin());
        if (f >= static_cast<int>(mesh.faces.size())) f = static_cast<int>(mesh.faces.size()) - 1;

        // sqrt trick gives uniform barycentric coordinates
        double su = std::sqrt(rng.uniform01());
        double v = rng.uniform01();
        double b0 = 1.0 - su, b1 = su * (1.0 - v), b2 = su * v;
        const auto& tri = mesh.faces[size_t(f)];
        out.points.push_back(b0 * mesh.vertices[size_t(tri[0])] +
                             b1 * mesh.vertices[size_t(tri[1])] +
                             b2 * mesh.vertices[size_t(tri[2])]);
        out.normals.push_back(mesh.face_normal(f));
        out.face_ids.push_back(f);
    }
    return out;
}

}  // namespace graspbo
