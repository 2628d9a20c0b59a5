#pragma once

#include <cmath>
#include <vector>

#include "graspbo/surrogate/kernel.hpp"

namespace graspbo {

template <class Loc>
struct Dataset {
    std::vector<Loc> locs;
    std::vector<double> values;

    size_t size() const { return locs.size(); }
    bool empty() const { return locs.empty(); }
};

// GP regression over an arbitrary location type with a pluggable metric.
// Prior mean is the running dataset mean; Matern 5/2 on the metric.
template <class Loc, class Dist>
class GpPosterior {
public:
    GpPosterior(Dist dist, KernelParams params, double noise = 1e-4)
        : dist_(std::move(dist)), params_(params), noise_(noise) {}

    // a location within 1e-12 of an existing one overwrites its value
    void add(const Loc& loc, double value) {
        for (size_t i = 0; i < data_.size(); ++i) {
            if (dist_(data_.locs[i], loc) <= 1e-12) {
                data_.values[i] = value;
                dirty_ = true;
                return;
            }
        }
        data_.locs.push_back(loc);
        data_.values.push_back(value);
        dirty_ = true;
    }

    std::pair<double, double> posterior(const Loc& loc) const {
        ensure();
        const long n = long(data_.size());
        VecX k(n);
        for (long i = 0; i < n; ++i) k(i) = matern52(dist_(data_.locs[size_t(i)], loc), params_);
        double mu = mean_ + k.dot(alpha_);
        VecX v = llt_.matrixL().solve(k);
        double var = params_.sigma * params_.sigma + noise_ - v.squaredNorm();
        return {mu, std::sqrt(std::max(0.0, var))};
    }

    double log_marginal() const {
        ensure();
        const long n = long(data_.size());
        VecX r(n);
        for (long i = 0; i < n; ++i) r(i) = data_.values[size_t(i)] - mean_;
        double logdet = 0.0;
        for (long i = 0; i < n; ++i) logdet += std::log(llt_.matrixLLT()(i, i));
        return -0.5 * r.dot(alpha_) - logdet - 0.5 * double(n) * std::log(2.0 * M_PI);
    }

    double best_value() const {
        require(!data_.empty(), "IndexError", "best_value on empty dataset");
        double best = data_.values[0];
        for (double v : data_.values) best = std::max(best, v);
        return best;
    }

    const Dataset<Loc>& data() const { return data_; }
    size_t size() const { return data_.size(); }
    const KernelParams& params() const { return params_; }
    void set_params(const KernelParams& p) {
        params_ = p;
        dirty_ = true;
    }
    void set_values(const std::vector<double>& values) {
        require(values.size() == data_.size(), "IndexError", "set_values size mismatch");
        data_.values = values;
        dirty_ = true;
    }
    const Dist& metric() const { return dist_; }
    double noise() const { return noise_; }

private:
    void ensure() const {
        if (!dirty_) return;
        require(!data_.empty(), "IndexError", "posterior on empty dataset");
        const long n = long(data_.size());
        mean_ = 0.0;
        for (double v : data_.values) mean_ += v;
        mean_ /= double(n);
        MatX k(n, n);
        for (long i = 0; i < n; ++i) {
            k(i, i) = params_.sigma * params_.sigma + noise_;
            for (long j = i + 1; j < n; ++j) {
                double v = matern52(dist_(data_.locs[size_t(i)], data_.locs[size_t(j)]), params_);
                k(i, j) = v;
                k(j, i) = v;
            }
        }
        VecX r(n);
        for (long i = 0; i < n; ++i) r(i) = data_.values[size_t(i)] - mean_;
        double jit = 0.0;
        for (int attempt = 0; attempt < 8; ++attempt) {
            Eigen::LLT<MatX> llt(k + jit * MatX::Identity(n, n));
            if (llt.info() == Eigen::Success) {
                llt_ = llt;
                alpha_ = llt_.solve(r);
                dirty_ = false;
                return;
            }
            // ladder reaches 10*sigma^2: the matern kernel over the composite
            // pose metric is not guaranteed PSD, and measured spectra dip to
            // ~-0.7*sigma^2 at long length-scales, so small nudges cannot save
            // every dataset the planner may produce
            jit = jit == 0.0 ? 1e-6 * params_.sigma * params_.sigma : jit * 10.0;
        }
        fail("SingularKernel", "surrogate kernel not positive definite after jitter escalation");
    }

    Dist dist_;
    KernelParams params_;
    double noise_;
    Dataset<Loc> data_;
    mutable bool dirty_ = true;
    mutable double mean_ = 0.0;
    mutable Eigen::LLT<MatX> llt_;
    mutable VecX alpha_;
};

}  // namespace graspbo
