#pragma once

#include <cmath>

#include "graspbo/core/types.hpp"

namespace graspbo {

struct KernelParams {
    double sigma = 1.0;  // signal std
    double rho = 1.0;    // length-scale
};

// Matern 5/2 on a precomputed distance
inline double matern52(double d, const KernelParams& p) {
    double r = std::sqrt(5.0) * d / p.rho;
    return p.sigma * p.sigma * (1.0 + r + r * r / 3.0) * std::exp(-r);
}

}  // namespace graspbo
