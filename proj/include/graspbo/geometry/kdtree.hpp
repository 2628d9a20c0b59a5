#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "graspbo/geometry/sampling.hpp"

namespace graspbo {

struct NearestResult {
    Vec3 point;
    Vec3 normal;
    double distance = 0.0;
    int index = -1;
};

// Balanced kD-tree over surface samples. Exact nearest neighbour; ties on
// distance resolve to the lowest stored index.
class SurfaceKdTree {
public:
    explicit SurfaceKdTree(SurfaceSamples samples, int leaf_size = 8)
        : samples_(std::move(samples)), leaf_size_(std::max(1, leaf_size)) {
        require(!samples_.points.empty(), "EmptyMesh", "kd-tree over empty sample set");
        order_.resize(samples_.points.size());
        std::iota(order_.begin(), order_.end(), 0);
        nodes_.reserve(2 * samples_.points.size() / size_t(leaf_size_) + 2);
        root_ = build(0, static_cast<int>(order_.size()));
    }

    const SurfaceSamples& samples() const { return samples_; }

    NearestResult nearest(const Vec3& query) const {
        Best best;
        search(root_, query, best);
        NearestResult r;
        r.index = best.index;
        r.point = samples_.points[size_t(best.index)];
        r.normal = samples_.normals[size_t(best.index)];
        r.distance = std::sqrt(best.dist2);
        return r;
    }

private:
    struct Node {
        int axis = -1;       // -1 marks a leaf
        double split = 0.0;
        int left = -1, right = -1;
        int begin = 0, end = 0;  // leaf range into order_
    };

    struct Best {
        double dist2 = std::numeric_limits<double>::infinity();
        int index = std::numeric_limits<int>::max();
    };

    int build(int begin, int end) {
        Node node;
        if (end - begin <= leaf_size_) {
            node.begin = begin;
            node.end = end;
            // sorted indices make tie-breaking order-independent within a leaf
            std::sort(order_.begin() + begin, order_.begin() + end);
            nodes_.push_back(node);
            return static_cast<int>(nodes_.size()) - 1;
        }
        Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
        Vec3 hi = -lo;
        for (int i = begin; i < end; ++i) {
            const Vec3& p = samples_.points[size_t(order_[size_t(i)])];
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        int axis = 0;
        (hi - lo).maxCoeff(&axis);
        int mid = (begin + end) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](int a, int b) {
                             return samples_.points[size_t(a)][axis] < samples_.points[size_t(b)][axis];
                         });
        node.axis = axis;
        node.split = samples_.points[size_t(order_[size_t(mid)])][axis];
        int self = static_cast<int>(nodes_.size());
        nodes_.push_back(node);
        int left = build(begin, mid);
        int right = build(mid, end);
        nodes_[size_t(self)].left = left;
        nodes_[size_t(self)].right = right;
        return self;
    }

    void search(int node_id, const Vec3& query, Best& best) const {
        const Node& node = nodes_[size_t(node_id)];
        if (node.axis < 0) {
            for (int i = node.begin; i < node.end; ++i) {
                int idx = order_[size_t(i)];
                double d2 = (samples_.points[size_t(idx)] - query).squaredNorm();
                if (d2 < best.dist2 || (d2 == best.dist2 && idx < best.index)) {
                    best.dist2 = d2;
                    best.index = idx;
                }
            }
            return;
        }
        double diff = query[node.axis] - node.split;
        int near = diff < 0 ? node.left : node.right;
        int far = diff < 0 ? node.right : node.left;
        search(near, query, best);
        if (diff * diff <= best.dist2) search(far, query, best);  // <= keeps ties reachable
    }

    SurfaceSamples samples_;
    int leaf_size_;
    std::vector<int> order_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

inline NearestResult nearest_surface_point(const SurfaceKdTree& tree, const Vec3& query) {
    return tree.nearest(query);
}

}  // namespace graspbo
