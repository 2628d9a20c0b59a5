#pragma once

#include <string>
#include <vector>

#include "graspbo/hand/grasp.hpp"

namespace graspbo {

struct GraspCandidate {
    Transform palm = Transform::Identity();
    Vec4 q = Vec4::Zero();
    Vec3 distal_offset = Vec3::Zero();
    std::vector<Contact> contacts;
    double q_eps = 0.0;
    double q_vol = 0.0;
    double f_obj = 0.0;
    std::string provenance;  // HPP | ADMM | baseline
    bool feasible = false;
};

struct TraceRecord {
    int iteration = 0;
    std::string phase;  // init | bo | admm | sample
    double ei = 0.0;
    double f_obj = 0.0;
    double q_eps = 0.0;
    double q_vol = 0.0;
    double primal_res = 0.0;
    double dual_res = 0.0;
    double wall_ms = 0.0;
};

struct RunTrace {
    std::vector<TraceRecord> records;

    void append(TraceRecord rec) {
        require(records.empty() || rec.iteration > records.back().iteration, "TraceOrder",
                "trace iterations must be strictly increasing");
        records.push_back(std::move(rec));
    }
};

// keep the k best candidates, nonincreasing in f_obj; equal scores preserve
// insertion order
inline void push_topk(std::vector<GraspCandidate>& top, const GraspCandidate& c, size_t k = 20) {
    auto it = top.begin();
    while (it != top.end() && it->f_obj >= c.f_obj) ++it;
    top.insert(it, c);
    if (top.size() > k) top.resize(k);
}

struct PlanResult {
    GraspCandidate best;
    std::vector<GraspCandidate> top;
    RunTrace trace;
    long evals = 0;
    double wall_ms = 0.0;
};

// shared evaluation-count budget so different planners can be compared at
// equal cost; cap 0 disables the limit
struct EvalBudget {
    long cap = 0;
    long used = 0;
    bool exhausted() const { return cap > 0 && used >= cap; }
    void tick() { ++used; }
};

}  // namespace graspbo
