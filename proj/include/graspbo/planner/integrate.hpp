#pragma once

#include "graspbo/planner/hpp.hpp"

namespace graspbo {

struct IntegrateParams {
    HppParams hpp{};
    AdmmCpParams admm{};
    int admm_every = 1;        // run contact refinement every this many BO iterations
    bool admm_enabled = true;  // disabled -> identical to hpp_opt
};

// palm-pose optimization with the contact-refinement stage inserted after
// each local adaption; the final answer is the argmax over every evaluation,
// so it can never fall below the palm-stage best of the same run
inline PlanResult integrate(const Scene& scene, const IntegrateParams& params, std::uint64_t seed) {
    return planner_detail::hpp_core(scene, params.hpp, seed,
                                    params.admm_enabled ? &params.admm : nullptr,
                                    params.admm_every);
}

}  // namespace graspbo
