#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include "graspbo/core/rng.hpp"
#include "graspbo/core/types.hpp"

namespace graspbo {

struct HullFacet {
    std::vector<int> vertices;  // d point indices spanning the facet simplex
    VecX normal;                // unit outward
    double offset = 0.0;        // plane is normal . x = offset; inside satisfies <
};

// incremental convex hull in arbitrary dimension (2..6 in practice):
// conflict-list quickhull with BFS horizon walking; inputs that are affinely
// dependent come back flagged degenerate rather than throwing
class ConvexHull {
public:
    static ConvexHull build(const std::vector<VecX>& points, int dim) {
        require(dim >= 2, "HullDegenerate", "hull dimension must be >= 2");
        for (const VecX& p : points)
            require(p.size() == dim && p.allFinite(), "HullDegenerate",
                    "hull input must be finite and of uniform dimension");
        ConvexHull hull;
        hull.dim_ = dim;
        hull.points_ = points;
        if (long(points.size()) < dim + 1) {
            hull.degenerate_ = true;
            return hull;
        }
        double scale = 1e-8;
        for (const VecX& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
        hull.eps_ = 1e-10 * scale;

        for (int attempt = 0; attempt < 4; ++attempt) {
            std::vector<VecX> pts = points;
            if (attempt > 0) {
                Rng rng(0x9e3779b97f4a7c15ull + std::uint64_t(attempt));
                double mag = 1e-9 * scale * double(attempt);
                for (VecX& p : pts)
                    for (int k = 0; k < dim; ++k) p(k) += mag * (2.0 * rng.uniform01() - 1.0);
            }
            try {
                hull.run(pts);
                return hull;
            } catch (const GraspboError& e) {
                if (std::string(e.code()) == "HullDegenerate") {
                    hull.degenerate_ = true;
                    return hull;
                }
                if (attempt == 3) {
                    hull.degenerate_ = true;
                    return hull;
                }
                hull.facets_.clear();
            }
        }
        hull.degenerate_ = true;
        return hull;
    }

    bool degenerate() const { return degenerate_; }
    int dim() const { return dim_; }
    const std::vector<HullFacet>& facets() const { return facets_; }
    const std::vector<VecX>& points() const { return points_; }
    const VecX& interior() const { return interior_; }

    // radius of the largest origin-centered ball inside the hull; zero when
    // the origin is not strictly interior
    double inscribed_radius() const {
        if (degenerate_ || facets_.empty()) return 0.0;
        double r = std::numeric_limits<double>::infinity();
        for (const HullFacet& f : facets_) {
            if (f.offset <= 0.0) return 0.0;
            r = std::min(r, f.offset);
        }
        return r;
    }

    // simplex decomposition about the interior point
    double volume() const {
        if (degenerate_ || facets_.empty()) return 0.0;
        double v = 0.0;
        MatX m(dim_, dim_);
        for (const HullFacet& f : facets_) {
            for (int c = 0; c < dim_; ++c)
                m.col(c) = points_[size_t(f.vertices[size_t(c)])] - interior_;
            v += std::abs(m.determinant());
        }
        double fact = 1.0;
        for (int k = 2; k <= dim_; ++k) fact *= double(k);
        return v / fact;
    }

private:
    struct Work {
        std::vector<int> verts;   // sorted, size d
        VecX normal;
        double offset = 0.0;
        std::vector<int> neigh;   // adjacent facet ids, size d
        std::vector<int> outside; // conflict points
        bool alive = true;
    };

    void run(const std::vector<VecX>& pts) {
        const int d = dim_;
        const int n = int(pts.size());
        work_.clear();
        facets_.clear();

        // greedy affinely-independent seed simplex
        std::vector<int> simplex;
        int first = 0;
        for (int i = 1; i < n; ++i) {
            for (int k = 0; k < d; ++k) {
                if (pts[size_t(i)](k) < pts[size_t(first)](k)) { first = i; break; }
                if (pts[size_t(i)](k) > pts[size_t(first)](k)) break;
            }
        }
        simplex.push_back(first);
        MatX basis(d, d);  // orthonormal columns spanning the current affine hull
        int rank = 0;
        while (int(simplex.size()) < d + 1) {
            int best = -1;
            double best_dist = eps_;
            VecX best_res(d);
            for (int i = 0; i < n; ++i) {
                if (std::find(simplex.begin(), simplex.end(), i) != simplex.end()) continue;
                VecX r = pts[size_t(i)] - pts[size_t(simplex[0])];
                for (int k = 0; k < rank; ++k) r -= basis.col(k).dot(r) * basis.col(k);
                double dist = r.norm();
                if (dist > best_dist) {
                    best_dist = dist;
                    best = i;
                    best_res = r;
                }
            }
            if (best < 0) fail("HullDegenerate", "input points are affinely dependent");
            simplex.push_back(best);
            basis.col(rank) = best_res / best_res.norm();
            ++rank;
        }

        interior_ = VecX::Zero(d);
        for (int idx : simplex) interior_ += pts[size_t(idx)];
        interior_ /= double(d + 1);

        // d+1 facets of the seed simplex, all mutually adjacent
        for (int skip = 0; skip <= d; ++skip) {
            Work f;
            for (int k = 0; k <= d; ++k)
                if (k != skip) f.verts.push_back(simplex[size_t(k)]);
            std::sort(f.verts.begin(), f.verts.end());
            plane_of(pts, f);
            for (int k = 0; k <= d; ++k)
                if (k != skip) f.neigh.push_back(k);
            work_.push_back(std::move(f));
        }

        std::vector<char> consumed(size_t(n), 0);
        for (int idx : simplex) consumed[size_t(idx)] = 1;
        for (int i = 0; i < n; ++i) {
            if (consumed[size_t(i)]) continue;
            assign_conflict(pts, i);
        }

        // process conflict points until none remain
        while (true) {
            int fid = -1;
            for (int i = 0; i < int(work_.size()); ++i) {
                if (work_[size_t(i)].alive && !work_[size_t(i)].outside.empty()) {
                    fid = i;
                    break;
                }
            }
            if (fid < 0) break;
            insert_point(pts, fid);
        }

        for (const Work& w : work_) {
            if (!w.alive) continue;
            facets_.push_back({w.verts, w.normal, w.offset});
        }
        require(!facets_.empty(), "HullInternal", "hull produced no facets");
    }

    // facet plane through its d vertices: null direction of the edge matrix,
    // oriented away from the interior point
    void plane_of(const std::vector<VecX>& pts, Work& f) const {
        const int d = dim_;
        MatX edges(d, d - 1);
        const VecX& v0 = pts[size_t(f.verts[0])];
        for (int k = 1; k < d; ++k) edges.col(k - 1) = pts[size_t(f.verts[size_t(k)])] - v0;
        Eigen::HouseholderQR<MatX> qr(edges);
        MatX q = qr.householderQ();
        f.normal = q.col(d - 1);
        f.offset = f.normal.dot(v0);
        double side = f.normal.dot(interior_) - f.offset;
        if (std::abs(side) <= eps_) fail("HullInternal", "interior point on facet plane");
        if (side > 0) {
            f.normal = -f.normal;
            f.offset = -f.offset;
        }
    }

    void assign_conflict(const std::vector<VecX>& pts, int pid) {
        int best = -1;
        double best_v = eps_;
        for (int i = 0; i < int(work_.size()); ++i) {
            const Work& w = work_[size_t(i)];
            if (!w.alive) continue;
            double v = w.normal.dot(pts[size_t(pid)]) - w.offset;
            if (v > best_v) {
                best_v = v;
                best = i;
            }
        }
        if (best >= 0) work_[size_t(best)].outside.push_back(pid);
    }

    void insert_point(const std::vector<VecX>& pts, int start) {
        const int d = dim_;
        Work& sf = work_[size_t(start)];
        int pid = sf.outside[0];
        double best_v = -1.0;
        for (int cand : sf.outside) {
            double v = sf.normal.dot(pts[size_t(cand)]) - sf.offset;
            if (v > best_v) {
                best_v = v;
                pid = cand;
            }
        }
        const VecX& p = pts[size_t(pid)];

        // BFS for the visible region
        std::vector<int> visible{start};
        std::vector<char> seen(work_.size(), 0);
        seen[size_t(start)] = 1;
        for (size_t head = 0; head < visible.size(); ++head) {
            for (int nb : work_[size_t(visible[head])].neigh) {
                if (seen[size_t(nb)]) continue;
                seen[size_t(nb)] = 1;
                if (work_[size_t(nb)].normal.dot(p) - work_[size_t(nb)].offset > eps_)
                    visible.push_back(nb);
                else
                    seen[size_t(nb)] = 0;
            }
        }
        std::vector<char> is_visible(work_.size(), 0);
        for (int v : visible) is_visible[size_t(v)] = 1;

        // horizon ridges: (shared d-1 vertices, outer facet)
        struct Ridge {
            std::vector<int> verts;
            int outer;
        };
        std::vector<Ridge> horizon;
        for (int v : visible) {
            for (int nb : work_[size_t(v)].neigh) {
                if (is_visible[size_t(nb)]) continue;
                std::vector<int> shared;
                std::set_intersection(work_[size_t(v)].verts.begin(), work_[size_t(v)].verts.end(),
                                      work_[size_t(nb)].verts.begin(), work_[size_t(nb)].verts.end(),
                                      std::back_inserter(shared));
                require(int(shared.size()) == d - 1, "HullInternal", "malformed horizon ridge");
                horizon.push_back({std::move(shared), nb});
            }
        }
        require(!horizon.empty(), "HullInternal", "empty horizon");

        // new cone of facets from the horizon to the apex
        std::vector<int> fresh;
        for (const Ridge& r : horizon) {
            Work f;
            f.verts = r.verts;
            f.verts.push_back(pid);
            std::sort(f.verts.begin(), f.verts.end());
            plane_of(pts, f);
            f.neigh.assign(size_t(d), -1);
            int id = int(work_.size());
            fresh.push_back(id);
            work_.push_back(std::move(f));
        }

        // stitch: horizon ridge pairs new facet with its outer facet, the
        // remaining ridges pair new facets among themselves
        std::map<std::vector<int>, std::pair<int, int>> open;  // ridge -> (facet, slot)
        for (size_t h = 0; h < horizon.size(); ++h) {
            int id = fresh[h];
            Work& f = work_[size_t(id)];
            int outer = horizon[h].outer;
            for (int slot = 0; slot < d; ++slot) {
                std::vector<int> ridge;
                for (int k = 0; k < d; ++k)
                    if (k != slot) ridge.push_back(f.verts[size_t(k)]);
                if (ridge == horizon[h].verts) {
                    f.neigh[size_t(slot)] = outer;
                    Work& of = work_[size_t(outer)];
                    for (int& onb : of.neigh)
                        if (is_visible[size_t(onb)]) {
                            std::vector<int> shared;
                            std::set_intersection(of.verts.begin(), of.verts.end(),
                                                  work_[size_t(onb)].verts.begin(),
                                                  work_[size_t(onb)].verts.end(),
                                                  std::back_inserter(shared));
                            if (shared == ridge) {
                                onb = id;
                                break;
                            }
                        }
                } else {
                    auto it = open.find(ridge);
                    if (it == open.end()) {
                        open[ridge] = {id, slot};
                    } else {
                        f.neigh[size_t(slot)] = it->second.first;
                        work_[size_t(it->second.first)].neigh[size_t(it->second.second)] = id;
                        open.erase(it);
                    }
                }
            }
        }
        require(open.empty(), "HullInternal", "unmatched ridges after stitching");
        for (int id : fresh)
            for (int nb : work_[size_t(id)].neigh)
                require(nb >= 0, "HullInternal", "new facet missing a neighbor");

        // retire the visible region and rehome its conflict points
        std::vector<int> orphans;
        for (int v : visible) {
            Work& w = work_[size_t(v)];
            w.alive = false;
            for (int o : w.outside)
                if (o != pid) orphans.push_back(o);
            w.outside.clear();
        }
        for (int o : orphans) {
            int best = -1;
            double best_v2 = eps_;
            for (int id : fresh) {
                double v = work_[size_t(id)].normal.dot(pts[size_t(o)]) - work_[size_t(id)].offset;
                if (v > best_v2) {
                    best_v2 = v;
                    best = id;
                }
            }
            if (best >= 0) work_[size_t(best)].outside.push_back(o);
        }
    }

    int dim_ = 0;
    double eps_ = 1e-10;
    bool degenerate_ = false;
    std::vector<VecX> points_;
    std::vector<HullFacet> facets_;
    std::vector<Work> work_;
    VecX interior_;
};

}  // namespace graspbo
