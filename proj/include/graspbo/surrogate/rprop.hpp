#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "graspbo/surrogate/gp.hpp"

namespace graspbo {

// rough-and-ready starting point: signal from value spread, length-scale from
// median pairwise distance
template <class Loc, class Dist>
KernelParams heuristic_kernel_params(const Dataset<Loc>& data, const Dist& dist) {
    KernelParams p;
    if (data.size() < 2) return p;
    double mean = 0.0;
    for (double v : data.values) mean += v;
    mean /= double(data.size());
    double var = 0.0;
    for (double v : data.values) var += (v - mean) * (v - mean);
    var /= double(data.size());
    p.sigma = std::max(std::sqrt(var), 1e-3);
    std::vector<double> d;
    for (size_t i = 0; i < data.size(); ++i)
        for (size_t j = i + 1; j < data.size(); ++j) d.push_back(dist(data.locs[i], data.locs[j]));
    std::nth_element(d.begin(), d.begin() + long(d.size() / 2), d.end());
    p.rho = std::max(d[d.size() / 2], 1e-3);
    return p;
}

// sign-based resilient propagation on (log sigma, log rho), maximizing the
// log marginal likelihood; steps that do not improve are rolled back
template <class Loc, class Dist>
KernelParams fit_hyperparams_rprop(GpPosterior<Loc, Dist>& gp, int iters = 50) {
    constexpr double kStepUp = 1.2, kStepDown = 0.5;
    constexpr double kStepMin = 1e-6, kStepMax = 1e1;
    constexpr double kFdEps = 1e-4;

    auto lml_at = [&](const Vec2& logp) {
        gp.set_params({std::exp(logp(0)), std::exp(logp(1))});
        try {
            return gp.log_marginal();
        } catch (const GraspboError&) {
            // a trial setting that defeats factorization has no usable
            // likelihood; treat it as arbitrarily bad instead of aborting
            return -std::numeric_limits<double>::infinity();
        }
    };

    Vec2 logp(std::log(gp.params().sigma), std::log(gp.params().rho));
    Vec2 step(0.1, 0.1);
    double best = lml_at(logp);
    Vec2 best_logp = logp;

    for (int it = 0; it < iters; ++it) {
        Vec2 grad;
        for (int d = 0; d < 2; ++d) {
            Vec2 hi = logp, lo = logp;
            hi(d) += kFdEps;
            lo(d) -= kFdEps;
            grad(d) = (lml_at(hi) - lml_at(lo)) / (2.0 * kFdEps);
        }
        Vec2 trial = logp;
        for (int d = 0; d < 2; ++d) {
            double sign = grad(d) > 0 ? 1.0 : (grad(d) < 0 ? -1.0 : 0.0);
            trial(d) += sign * step(d);
        }
        double val = lml_at(trial);
        if (val > best) {
            best = val;
            best_logp = trial;
            logp = trial;
            step = (step * kStepUp).cwiseMin(kStepMax);
        } else {
            step = (step * kStepDown).cwiseMax(kStepMin);
        }
        if (step.maxCoeff() <= kStepMin) break;
    }
    KernelParams out{std::exp(best_logp(0)), std::exp(best_logp(1))};
    gp.set_params(out);
    return out;
}

}  // namespace graspbo
