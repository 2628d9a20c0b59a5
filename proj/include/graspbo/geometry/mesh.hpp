#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "graspbo/core/types.hpp"

namespace graspbo {

struct TriMesh {
    std::vector<Vec3> vertices;                   // meters
    std::vector<std::array<int, 3>> faces;
    std::string name;

    Vec3 face_normal(int f) const {
        const auto& t = faces[static_cast<size_t>(f)];
        Vec3 e1 = vertices[size_t(t[1])] - vertices[size_t(t[0])];
        Vec3 e2 = vertices[size_t(t[2])] - vertices[size_t(t[0])];
        return e1.cross(e2).normalized();
    }

    double face_area(int f) const {
        const auto& t = faces[static_cast<size_t>(f)];
        Vec3 e1 = vertices[size_t(t[1])] - vertices[size_t(t[0])];
        Vec3 e2 = vertices[size_t(t[2])] - vertices[size_t(t[0])];
        return 0.5 * e1.cross(e2).norm();
    }

    Vec3 centroid() const {
        Vec3 c = Vec3::Zero();
        for (const auto& v : vertices) c += v;
        return vertices.empty() ? c : Vec3(c / double(vertices.size()));
    }
};

struct Aabb {
    Vec3 min = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 max = Vec3::Constant(-std::numeric_limits<double>::infinity());

    Vec3 center() const { return 0.5 * (min + max); }
    Vec3 half_extents() const { return 0.5 * (max - min); }
    double diagonal() const { return (max - min).norm(); }
};

constexpr double kMinFaceArea = 1e-12;  // m^2

struct MeshLoadOptions {
    double scale = 1.0;                // uniform scale applied to all vertices
    bool drop_degenerate = false;      // drop zero-area faces instead of failing
};

namespace detail {

inline void validate_mesh(TriMesh& mesh, const MeshLoadOptions& opts, const std::string& path) {
    const int nv = static_cast<int>(mesh.vertices.size());
    for (const auto& v : mesh.vertices)
        require(v.allFinite(), "ParseError", path + ": non-finite vertex coordinate");

    std::vector<std::array<int, 3>> kept;
    kept.reserve(mesh.faces.size());
    for (const auto& f : mesh.faces) {
        for (int k : f)
            require(k >= 0 && k < nv, "IndexError",
                    path + ": face index " + std::to_string(k) + " out of range [0," +
                        std::to_string(nv) + ")");
        Vec3 e1 = mesh.vertices[size_t(f[1])] - mesh.vertices[size_t(f[0])];
        Vec3 e2 = mesh.vertices[size_t(f[2])] - mesh.vertices[size_t(f[0])];
        double area = 0.5 * e1.cross(e2).norm();
        if (area <= kMinFaceArea) {
            require(opts.drop_degenerate, "DegenerateFace",
                    path + ": zero-area triangle (area " + std::to_string(area) + ")");
            continue;
        }
        kept.push_back(f);
    }
    mesh.faces = std::move(kept);
    require(!mesh.vertices.empty() && !mesh.faces.empty(), "EmptyMesh",
            path + ": mesh has no usable geometry");
}

inline std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
    }
    return {};
}

}  // namespace detail

inline TriMesh load_off(const std::string& path, const MeshLoadOptions& opts = {}) {
    std::ifstream in(path);
    require(in.good(), "ParseError", "cannot open " + path);

    std::string header = detail::next_content_line(in);
    // Header may be "OFF" alone or "OFF nv nf ne" on one line.
    require(header.rfind("OFF", 0) == 0, "ParseError", path + ": missing OFF header");
    std::istringstream hs(header.substr(3));
    long nv = -1, nf = -1, ne = 0;
    if (!(hs >> nv >> nf >> ne)) {
        std::istringstream cs(detail::next_content_line(in));
        require(static_cast<bool>(cs >> nv >> nf >> ne), "ParseError", path + ": missing counts");
    }
    require(nv >= 0 && nf >= 0, "ParseError", path + ": negative counts");

    TriMesh mesh;
    mesh.name = std::filesystem::path(path).stem().string();
    mesh.vertices.reserve(size_t(nv));
    for (long i = 0; i < nv; ++i) {
        std::istringstream ls(detail::next_content_line(in));
        double x, y, z;
        require(static_cast<bool>(ls >> x >> y >> z), "ParseError",
                path + ": bad vertex line " + std::to_string(i));
        mesh.vertices.emplace_back(opts.scale * x, opts.scale * y, opts.scale * z);
    }
    for (long i = 0; i < nf; ++i) {
        std::istringstream ls(detail::next_content_line(in));
        int count = 0;
        require(static_cast<bool>(ls >> count) && count >= 3, "ParseError",
                path + ": bad face line " + std::to_string(i));
        std::vector<int> poly(static_cast<size_t>(count), 0);
        for (int& idx : poly)
            require(static_cast<bool>(ls >> idx), "ParseError",
                    path + ": truncated face line " + std::to_string(i));
        for (int k = 1; k + 1 < count; ++k)  // fan triangulation
            mesh.faces.push_back({poly[0], poly[size_t(k)], poly[size_t(k) + 1]});
    }
    detail::validate_mesh(mesh, opts, path);
    return mesh;
}

inline TriMesh load_obj(const std::string& path, const MeshLoadOptions& opts = {}) {
    std::ifstream in(path);
    require(in.good(), "ParseError", "cannot open " + path);

    TriMesh mesh;
    mesh.name = std::filesystem::path(path).stem().string();
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "v") {
            double x, y, z;
            require(static_cast<bool>(ls >> x >> y >> z), "ParseError", path + ": bad vertex line");
            mesh.vertices.emplace_back(opts.scale * x, opts.scale * y, opts.scale * z);
        } else if (tok == "f") {
            std::vector<int> poly;
            std::string ref;
            while (ls >> ref) {
                // "v", "v/vt", "v//vn", "v/vt/vn"; indices are 1-based, negative = from end
                long idx = std::strtol(ref.c_str(), nullptr, 10);
                require(idx != 0, "ParseError", path + ": bad face reference '" + ref + "'");
                if (idx < 0) idx += static_cast<long>(mesh.vertices.size());
                else idx -= 1;
                poly.push_back(static_cast<int>(idx));
            }
            require(poly.size() >= 3, "ParseError", path + ": face with fewer than 3 vertices");
            for (size_t k = 1; k + 1 < poly.size(); ++k)
                mesh.faces.push_back({poly[0], poly[k], poly[k + 1]});
        }
    }
    detail::validate_mesh(mesh, opts, path);
    return mesh;
}

enum class MeshFormat { off, obj, from_extension };

inline TriMesh load_mesh(const std::string& path, const MeshLoadOptions& opts = {},
                         MeshFormat format = MeshFormat::from_extension) {
    if (format == MeshFormat::from_extension) {
        std::string ext = std::filesystem::path(path).extension().string();
        for (auto& c : ext) c = static_cast<char>(std::tolower(c));
        if (ext == ".off") format = MeshFormat::off;
        else if (ext == ".obj") format = MeshFormat::obj;
        else fail("ParseError", path + ": unsupported mesh extension '" + ext + "'");
    }
    return format == MeshFormat::off ? load_off(path, opts) : load_obj(path, opts);
}

inline Aabb compute_aabb(const TriMesh& mesh, double margin = 1.0) {
    require(!mesh.vertices.empty(), "EmptyMesh", "compute_aabb on empty mesh");
    Aabb box;
    for (const auto& v : mesh.vertices) {
        box.min = box.min.cwiseMin(v);
        box.max = box.max.cwiseMax(v);
    }
    Vec3 c = box.center();
    Vec3 h = box.half_extents() * margin;
    box.min = c - h;
    box.max = c + h;
    return box;
}

inline void write_off(const TriMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), "ParseError", "cannot write " + path);
    out << "OFF\n" << mesh.vertices.size() << " " << mesh.faces.size() << " 0\n";
    out.precision(17);
    for (const auto& v : mesh.vertices) out << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& f : mesh.faces) out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
}

inline void write_obj(const TriMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), "ParseError", "cannot write " + path);
    out.precision(17);
    for (const auto& v : mesh.vertices) out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

}  // namespace graspbo
