#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "graspbo/core/log.hpp"
#include "graspbo/geometry/kdtree.hpp"

namespace graspbo {

struct GpisHyper {
    double sigma = 0.0;        // signal std; 0 = auto (0.2 x sample-cloud diagonal)
    double rho = 0.0;          // length-scale; 0 = auto (0.4 x sample-cloud diagonal)
    double jitter = 1e-8;      // relative diagonal jitter, escalated on Cholesky failure
    int surface_cap = 400;     // max surface points kept for training (3x that in total)
};

// Implicit surface f(x) as a GP posterior mean over oriented surface samples:
// targets 0 on the surface and +/-offset along the normals, regressed around a
// constant prior mean of +offset so that far from the data the field reverts
// to "outside" instead of to the surface level. Sign convention f < 0 inside,
// f > 0 outside.
class GpisModel {
public:
    static GpisModel fit(const SurfaceSamples& samples, double offset, GpisHyper hyper = {}) {
        require(samples.size() >= 4, "TooFewSamples",
                "gpis fit needs >= 4 oriented samples, got " + std::to_string(samples.size()));
        require(offset > 0, "TooFewSamples", "gpis offset must be positive");

        size_t n = samples.size();
        size_t stride = 1;
        if (hyper.surface_cap > 0 && n > size_t(hyper.surface_cap)) {
            stride = (n + size_t(hyper.surface_cap) - 1) / size_t(hyper.surface_cap);
        }
        std::vector<size_t> keep;
        for (size_t i = 0; i < n; i += stride) keep.push_back(i);

        size_t m = keep.size();
        GpisModel model;
        model.offset_ = offset;
        model.surface_count_ = static_cast<int>(m);
        model.x_.resize(3 * m, 3);
        model.y_.resize(3 * m);
        for (size_t k = 0; k < m; ++k) {
            const Vec3& p = samples.points[keep[k]];
            const Vec3& nrm = samples.normals[keep[k]];
            model.x_.row(long(k)) = p.transpose();
            model.y_(long(k)) = 0.0;
            model.x_.row(long(m + k)) = (p + offset * nrm).transpose();
            model.y_(long(m + k)) = offset;
            model.x_.row(long(2 * m + k)) = (p - offset * nrm).transpose();
            model.y_(long(2 * m + k)) = -offset;
        }

        Vec3 lo = model.x_.colwise().minCoeff();
        Vec3 hi = model.x_.colwise().maxCoeff();
        double diag = (hi - lo).norm();
        model.sigma_ = hyper.sigma > 0 ? hyper.sigma : 0.2 * diag;
        model.rho_ = hyper.rho > 0 ? hyper.rho : 0.4 * diag;
        model.jitter_ = hyper.jitter;
        model.factorize();
        model.check_surface_residual();
        return model;
    }

    double value(const Vec3& x) const {
        VecX k = kernel_row(x);
        return offset_ + k.dot(alpha_);
    }

    // value and analytic gradient of the posterior mean
    std::pair<double, Vec3> query(const Vec3& x) const {
        const double a = std::sqrt(5.0) / rho_;
        const double c = sigma_ * sigma_ * 5.0 / (3.0 * rho_ * rho_);
        double v = offset_;
        Vec3 g = Vec3::Zero();
        for (long i = 0; i < x_.rows(); ++i) {
            Vec3 diff = x - x_.row(i).transpose();
            double d = diff.norm();
            double e = std::exp(-a * d);
            v += alpha_(i) * sigma_ * sigma_ * (1.0 + a * d + 5.0 * d * d / (3.0 * rho_ * rho_)) * e;
            g -= alpha_(i) * c * (1.0 + a * d) * e * diff;
        }
        return {v, g};
    }

    // batched posterior mean at many points; the hot path for collision
    // checking and the finger-closing sweep
    VecX values(const Eigen::Ref<const MatX>& points) const {
        MatX d2 = (-2.0 * points * x_.transpose());
        d2.colwise() += points.rowwise().squaredNorm();
        d2.rowwise() += x_sq_.transpose();
        d2 = d2.cwiseMax(0.0);
        const double a = std::sqrt(5.0) / rho_;
        const double b = 5.0 / (3.0 * rho_ * rho_);
        MatX d = d2.cwiseSqrt();
        MatX k = (sigma_ * sigma_ *
                  (1.0 + a * d.array() + b * d2.array()) * (-a * d.array()).exp())
                     .matrix();
        return ((k * alpha_).array() + offset_).matrix();
    }

    double sigma() const { return sigma_; }
    double rho() const { return rho_; }
    double jitter() const { return jitter_; }
    double offset() const { return offset_; }
    int surface_count() const { return surface_count_; }
    const MatX& train_inputs() const { return x_; }
    const VecX& train_targets() const { return y_; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["sigma"] = sigma_;
        j["rho"] = rho_;
        j["jitter"] = jitter_;
        j["offset"] = offset_;
        j["surface_count"] = surface_count_;
        std::vector<std::vector<double>> pts(size_t(x_.rows()));
        for (long i = 0; i < x_.rows(); ++i) pts[size_t(i)] = {x_(i, 0), x_(i, 1), x_(i, 2)};
        j["inputs"] = pts;
        j["targets"] = std::vector<double>(y_.data(), y_.data() + y_.size());
        return j;
    }

    static GpisModel from_json(const nlohmann::json& j) {
        GpisModel model;
        model.sigma_ = j.at("sigma").get<double>();
        model.rho_ = j.at("rho").get<double>();
        model.jitter_ = j.at("jitter").get<double>();
        model.offset_ = j.at("offset").get<double>();
        model.surface_count_ = j.at("surface_count").get<int>();
        auto pts = j.at("inputs").get<std::vector<std::vector<double>>>();
        auto tgt = j.at("targets").get<std::vector<double>>();
        require(pts.size() == tgt.size() && !pts.empty(), "ParseError", "gpis model: size mismatch");
        model.x_.resize(long(pts.size()), 3);
        model.y_.resize(long(tgt.size()));
        for (size_t i = 0; i < pts.size(); ++i) {
            require(pts[i].size() == 3, "ParseError", "gpis model: input is not a 3-vector");
            model.x_.row(long(i)) << pts[i][0], pts[i][1], pts[i][2];
            model.y_(long(i)) = tgt[i];
        }
        model.factorize();
        return model;
    }

private:
    GpisModel() = default;

    VecX kernel_row(const Vec3& x) const {
        const double a = std::sqrt(5.0) / rho_;
        VecX k(x_.rows());
        for (long i = 0; i < x_.rows(); ++i) {
            double d = (x - x_.row(i).transpose()).norm();
            k(i) = sigma_ * sigma_ *
                   (1.0 + a * d + 5.0 * d * d / (3.0 * rho_ * rho_)) * std::exp(-a * d);
        }
        return k;
    }

    void factorize() {
        const long n = x_.rows();
        x_sq_ = x_.rowwise().squaredNorm();
        MatX k(n, n);
        const double a = std::sqrt(5.0) / rho_;
        for (long i = 0; i < n; ++i) {
            k(i, i) = sigma_ * sigma_;
            for (long j = i + 1; j < n; ++j) {
                double d = (x_.row(i) - x_.row(j)).norm();
                double v = sigma_ * sigma_ *
                           (1.0 + a * d + 5.0 * d * d / (3.0 * rho_ * rho_)) * std::exp(-a * d);
                k(i, j) = v;
                k(j, i) = v;
            }
        }
        double jit = jitter_;
        for (int attempt = 0; attempt < 8; ++attempt) {
            MatX kj = k + jit * sigma_ * sigma_ * MatX::Identity(n, n);
            Eigen::LLT<MatX> llt(kj);
            if (llt.info() == Eigen::Success) {
                llt_ = llt;
                alpha_ = llt_.solve((y_.array() - offset_).matrix().eval());
                jitter_ = jit;
                return;
            }
            jit *= 10.0;
        }
        fail("SingularKernel", "gpis kernel not positive definite after jitter escalation");
    }

    void check_surface_residual() {
        VecX fitted = values(x_.topRows(surface_count_));
        double worst = fitted.cwiseAbs().maxCoeff();
        if (worst > 0.05 * offset_)
            log::warn("gpis surface residual %.3g exceeds 0.05*offset=%.3g", worst, 0.05 * offset_);
    }

    MatX x_;
    VecX y_;
    VecX x_sq_;
    double sigma_ = 1.0, rho_ = 1.0, jitter_ = 1e-8, offset_ = 0.1;
    int surface_count_ = 0;
    Eigen::LLT<MatX> llt_;
    VecX alpha_;
};

}  // namespace graspbo
