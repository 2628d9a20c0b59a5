#pragma once

#include "graspbo/quality/hull.hpp"
#include "graspbo/quality/wrench.hpp"

namespace graspbo {

struct GraspQuality {
    double eps = 0.0;            // largest origin-centered wrench ball radius
    double vol = 0.0;            // wrench-space hull volume
    bool force_closure = false;  // eps > 0
    bool degenerate = false;     // primitives affinely dependent (metrics zeroed)
};

inline ConvexHull wrench_hull(const WrenchSet& ws) {
    std::vector<VecX> pts;
    pts.reserve(ws.primitives.size());
    for (const Vec6& w : ws.primitives) pts.push_back(w);
    return ConvexHull::build(pts, 6);
}

inline GraspQuality grasp_quality(const WrenchSet& ws) {
    GraspQuality q;
    if (ws.primitives.size() < 7) {
        q.degenerate = true;
        return q;
    }
    ConvexHull hull = wrench_hull(ws);
    if (hull.degenerate()) {
        q.degenerate = true;
        return q;
    }
    q.eps = hull.inscribed_radius();
    q.vol = hull.volume();
    q.force_closure = q.eps > 0.0;
    return q;
}

// combined score: epsilon gated by force closure plus weighted volume
inline double objective(double q_eps, double q_vol, double lambda_vol) {
    require(q_eps >= 0.0 && q_vol >= 0.0 && lambda_vol >= 0.0, "DegenerateNormal",
            "objective inputs must be nonnegative");
    return (q_eps > 0.0 ? q_eps : 0.0) + lambda_vol * q_vol;
}

}  // namespace graspbo
