#pragma once

#include <cmath>

#include "graspbo/surrogate/gp.hpp"

namespace graspbo {

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// expected improvement over the incumbent, zero wherever the posterior is
// certain
inline double expected_improvement(double mu, double sigma, double f_best, double xi = 0.01) {
    if (sigma <= 0.0) return 0.0;
    double z = (mu - f_best - xi) / sigma;
    return (mu - f_best - xi) * normal_cdf(z) + sigma * normal_pdf(z);
}

// index of the EI-maximizing candidate; ties go to the lowest index
template <class Loc, class Dist>
size_t argmax_expected_improvement(const GpPosterior<Loc, Dist>& gp, const std::vector<Loc>& cands,
                                   double xi = 0.01) {
    require(!cands.empty(), "IndexError", "no acquisition candidates");
    double f_best = gp.best_value();
    size_t best_i = 0;
    double best_ei = -1.0;
    for (size_t i = 0; i < cands.size(); ++i) {
        auto [mu, sigma] = gp.posterior(cands[i]);
        double ei = expected_improvement(mu, sigma, f_best, xi);
        if (ei > best_ei) {
            best_ei = ei;
            best_i = i;
        }
    }
    return best_i;
}

}  // namespace graspbo
