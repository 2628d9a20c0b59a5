#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "graspbo/core/rng.hpp"
#include "graspbo/geometry/kdtree.hpp"
#include "graspbo/geometry/mesh.hpp"
#include "graspbo/geometry/sampling.hpp"
#include "graspbo/geometry/shapes.hpp"

using namespace graspbo;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "graspbo_test_geometry";
    fs::create_directories(dir);
    return dir / name;
}

void write_text_file(const fs::path& p, const std::string& body) {
    std::ofstream out(p);
    out << body;
}

std::string code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const GraspboError& e) {
        return e.code();
    }
    return "";
}

}  // namespace

TEST_CASE("off loader reads a tetrahedron") {
    fs::path p = temp_file("tet.off");
    write_text_file(p,
                    "OFF\n"
                    "4 4 0\n"
                    "0 0 0\n"
                    "1 0 0\n"
                    "0 1 0\n"
                    "0 0 1\n"
                    "3 0 2 1\n"
                    "3 0 1 3\n"
                    "3 0 3 2\n"
                    "3 1 2 3\n");
    TriMesh m = load_off(p.string());
    CHECK(m.vertices.size() == 4);
    CHECK(m.faces.size() == 4);
    CHECK(m.name == "tet");

    // header with counts on the same line parses too
    fs::path p2 = temp_file("tet2.off");
    write_text_file(p2, "OFF 4 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n");
    CHECK(load_off(p2.string()).faces.size() == 1);
}

TEST_CASE("loaders reject malformed input with specific codes") {
    fs::path bad_idx = temp_file("bad_idx.off");
    write_text_file(bad_idx, "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n");
    CHECK(code_of([&] { load_off(bad_idx.string()); }) == "IndexError");

    fs::path degen = temp_file("degen.off");
    write_text_file(degen, "OFF\n3 1 0\n0 0 0\n1 0 0\n2 0 0\n3 0 1 2\n");
    CHECK(code_of([&] { load_off(degen.string()); }) == "DegenerateFace");
    MeshLoadOptions drop;
    drop.drop_degenerate = true;
    // dropping the only face leaves nothing usable
    CHECK(code_of([&] { load_off(degen.string(), drop); }) == "EmptyMesh");

    CHECK(code_of([&] { load_off(temp_file("missing.off").string()); }) == "ParseError");
    CHECK(code_of([&] { load_mesh("mesh.stl"); }) == "ParseError");

    fs::path noheader = temp_file("nohdr.off");
    write_text_file(noheader, "3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
    CHECK(code_of([&] { load_off(noheader.string()); }) == "ParseError");
}

TEST_CASE("obj round trip preserves an icosphere") {
    TriMesh sphere = make_icosphere(0.07, 3);
    CHECK(sphere.vertices.size() == 642);
    fs::path p = temp_file("sphere.obj");
    write_obj(sphere, p.string());
    TriMesh back = load_obj(p.string());
    REQUIRE(back.vertices.size() == sphere.vertices.size());
    REQUIRE(back.faces.size() == sphere.faces.size());
    Aabb box = compute_aabb(back);
    CHECK(box.diagonal() == Catch::Approx(2.0 * 0.07 * std::sqrt(3.0)).margin(1e-6));
    for (const auto& v : back.vertices) CHECK(v.norm() == Catch::Approx(0.07).margin(1e-9));

    // negative obj indices count from the end of the vertex list
    fs::path neg = temp_file("neg.obj");
    write_text_file(neg, "v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3 -2 -1\n");
    TriMesh nm = load_obj(neg.string());
    CHECK(nm.faces.size() == 1);
    CHECK(nm.faces[0] == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("off round trip and uniform scaling") {
    TriMesh box = make_box(0.2, 0.4, 0.6);
    CHECK(box.vertices.size() == 8);
    CHECK(box.faces.size() == 12);
    fs::path p = temp_file("box.off");
    write_off(box, p.string());
    MeshLoadOptions opts;
    opts.scale = 0.5;
    TriMesh back = load_off(p.string(), opts);
    Aabb ab = compute_aabb(back);
    CHECK(ab.half_extents().x() == Catch::Approx(0.05).margin(1e-12));
    CHECK(ab.half_extents().y() == Catch::Approx(0.1).margin(1e-12));
    CHECK(ab.half_extents().z() == Catch::Approx(0.15).margin(1e-12));
}

TEST_CASE("aabb margin scales half extents about a fixed center") {
    TriMesh cube = make_box(1.0, 1.0, 1.0);
    Aabb tight = compute_aabb(cube, 1.0);
    CHECK(tight.min.isApprox(Vec3(-0.5, -0.5, -0.5), 1e-12));
    CHECK(tight.max.isApprox(Vec3(0.5, 0.5, 0.5), 1e-12));
    Aabb wide = compute_aabb(cube, 2.0);
    CHECK(wide.min.isApprox(Vec3(-1.0, -1.0, -1.0), 1e-12));
    CHECK(wide.max.isApprox(Vec3(1.0, 1.0, 1.0), 1e-12));
    CHECK(wide.center().isApprox(tight.center(), 1e-12));
    CHECK(tight.diagonal() == Catch::Approx(std::sqrt(3.0)));

    TriMesh empty;
    CHECK(code_of([&] { compute_aabb(empty); }) == "EmptyMesh");
}

TEST_CASE("surface sampling is area weighted and lands on the surface") {
    TriMesh cube = make_box(1.0, 1.0, 1.0);
    SurfaceSamples s = sample_surface(cube, 600, 0);
    REQUIRE(s.size() == 600);

    // 100 expected per cube side; the 12 triangles pair into 6 sides
    std::array<int, 6> per_side{};
    for (size_t i = 0; i < s.points.size(); ++i) {
        const Vec3& n = s.normals[i];
        int axis = 0;
        for (int d = 1; d < 3; ++d)
            if (std::abs(n(d)) > std::abs(n(axis))) axis = d;
        per_side[size_t(2 * axis + (n(axis) > 0 ? 1 : 0))]++;
        // every sample lies on the sampled face's plane
        CHECK(std::abs(s.points[i].dot(n) - 0.5) < 1e-12);
        CHECK(s.face_ids[i] >= 0);
        CHECK(s.face_ids[i] < int(cube.faces.size()));
    }
    for (int side = 0; side < 6; ++side) {
        CHECK(per_side[size_t(side)] > 60);
        CHECK(per_side[size_t(side)] < 140);
    }

    SurfaceSamples again = sample_surface(cube, 600, 0);
    for (size_t i = 0; i < s.points.size(); ++i) CHECK(s.points[i] == again.points[i]);
}

TEST_CASE("sphere samples agree with the analytic surface") {
    TriMesh sphere = make_icosphere(1.0, 3);
    SurfaceSamples s = sample_surface(sphere, 500, 7);
    for (size_t i = 0; i < s.points.size(); ++i) {
        CHECK(std::abs(s.points[i].dot(s.normals[i]) - 1.0) < 0.05);
        CHECK(s.normals[i].norm() == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("kd tree nearest matches a linear scan exactly") {
    TriMesh sphere = make_icosphere(1.0, 3);
    SurfaceSamples s = sample_surface(sphere, 400, 3);
    SurfaceKdTree tree(s);

    // stored points come back at distance zero with their own index
    for (size_t i = 0; i < s.points.size(); i += 17) {
        NearestResult r = tree.nearest(s.points[i]);
        CHECK(r.distance == 0.0);
        CHECK(s.points[size_t(r.index)] == s.points[i]);
    }

    Rng rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        Vec3 q(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        NearestResult r = tree.nearest(q);
        int best = 0;
        double best_d = (s.points[0] - q).norm();
        for (int i = 1; i < int(s.points.size()); ++i) {
            double d = (s.points[size_t(i)] - q).norm();
            if (d < best_d) {  // ties resolve to the lowest index
                best_d = d;
                best = i;
            }
        }
        CHECK(r.index == best);
        CHECK(r.distance == Catch::Approx(best_d).margin(1e-15));
        CHECK(r.point == s.points[size_t(best)]);
        CHECK(r.normal == s.normals[size_t(best)]);
    }
}

TEST_CASE("kd tree resolves the top of a dense sphere cloud") {
    SurfaceSamples s = sample_surface(make_icosphere(1.0, 4), 8000, 0);
    SurfaceKdTree tree(s);
    NearestResult r = tree.nearest(Vec3(0, 0, 2));
    CHECK((r.point - Vec3(0, 0, 1)).norm() < 0.05);
    CHECK(nearest_surface_point(tree, Vec3(0, 0, 2)).point == r.point);
}

TEST_CASE("cylinder shape is centered with analytic bounds") {
    TriMesh cyl = make_cylinder(0.04, 0.12);
    Aabb box = compute_aabb(cyl);
    CHECK(box.min.isApprox(Vec3(-0.04, -0.04, -0.06), 1e-9));
    CHECK(box.max.isApprox(Vec3(0.04, 0.04, 0.06), 1e-9));
    for (int f = 0; f < int(cyl.faces.size()); ++f) CHECK(cyl.face_area(f) > kMinFaceArea);
    // outward winding: face normals point away from the axis or along it
    for (int f = 0; f < int(cyl.faces.size()); ++f) {
        const auto& tri = cyl.faces[size_t(f)];
        Vec3 c = (cyl.vertices[size_t(tri[0])] + cyl.vertices[size_t(tri[1])] +
                  cyl.vertices[size_t(tri[2])]) /
                 3.0;
        CHECK(cyl.face_normal(f).dot(c) > 0.0);
    }
}
