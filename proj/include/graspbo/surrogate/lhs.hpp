#pragma once

#include <numeric>
#include <vector>

#include "graspbo/core/rng.hpp"
#include "graspbo/core/types.hpp"

namespace graspbo {

// Latin hypercube in [0,1)^dim: each dimension gets one sample per stratum
inline std::vector<VecX> latin_hypercube(int n, int dim, Rng& rng) {
    require(n > 0 && dim > 0, "IndexError", "latin hypercube needs n > 0 and dim > 0");
    std::vector<VecX> out(static_cast<size_t>(n), VecX(dim));
    std::vector<int> perm(static_cast<size_t>(n), 0);
    for (int d = 0; d < dim; ++d) {
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(perm[size_t(i)], perm[size_t(rng.uniform_int(0, i))]);
        for (int i = 0; i < n; ++i)
            out[size_t(i)](d) = (double(perm[size_t(i)]) + rng.uniform01()) / double(n);
    }
    return out;
}

}  // namespace graspbo
