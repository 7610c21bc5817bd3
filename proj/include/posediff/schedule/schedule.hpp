// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "posediff/core/tensor.hpp"

namespace posediff::schedule {

// Forward-process constants for T steps. Arrays are stored in double and
// indexed by t in [1, T]; alpha_bar(0) == 1 is a virtual boundary value.
// Immutable after construction.
class NoiseSchedule {
public:
    NoiseSchedule(std::vector<double> beta);

    int steps() const { return static_cast<int>(beta_.size()); }
    double beta(int t) const { return beta_[index(t)]; }
    double alpha(int t) const { return alpha_[index(t)]; }
    double alpha_bar(int t) const {
        if (t == 0) return 1.0;
        return alpha_bar_[index(t)];
    }
    // beta_tilde_t = (1 - alpha_bar_{t-1}) / (1 - alpha_bar_t) * beta_t; zero at t = 1.
    double posterior_variance(int t) const { return posterior_variance_[index(t)]; }

    const std::vector<double>& beta_array() const { return beta_; }
    const std::vector<double>& alpha_array() const { return alpha_; }
    const std::vector<double>& alpha_bar_array() const { return alpha_bar_; }
    const std::vector<double>& posterior_variance_array() const { return posterior_variance_; }

private:
    size_t index(int t) const {
        if (t < 1 || t > steps())
            throw std::out_of_range("timestep " + std::to_string(t) + " outside [1, " + std::to_string(steps()) + "]");
        return static_cast<size_t>(t - 1);
    }

    std::vector<double> beta_, alpha_, alpha_bar_, posterior_variance_;
};

NoiseSchedule make_linear_schedule(int steps, double beta_start, double beta_end);

// Per-pixel Gaussian reverse distribution N(mean, exp(log_variance)).
// log_variance is -inf where the distribution is deterministic (t = 1).
template <typename T>
struct ReverseDistribution {
    Tensor<T> mean;
    Tensor<T> log_variance;
};

template <typename T>
struct NoisePrediction {
    Tensor<T> eps_hat;
    Tensor<T> v;  // variance interpolation weights in [0,1]; empty if no variance head
};

namespace detail {

inline void check_timesteps(const NoiseSchedule& s, const std::vector<int>& t, int64_t batch) {
    if (static_cast<int64_t>(t.size()) != batch)
        throw std::invalid_argument("timestep array length " + std::to_string(t.size()) + " != batch " +
                                    std::to_string(batch));
    for (int ti : t)
        if (ti < 1 || ti > s.steps())
            throw std::out_of_range("timestep " + std::to_string(ti) + " outside [1, " + std::to_string(s.steps()) +
                                    "]");
}

// Coefficients of the Gaussian posterior mean c0*y0 + c1*yt for a jump whose
// effective one-step variance is beta_eff. Shared by the full schedule and
// the strided sampling schedule so both produce identical arithmetic.
struct PosteriorCoeffs {
    double c0, c1, variance;
};

inline PosteriorCoeffs posterior_coeffs(double alpha_eff, double alpha_bar_t, double alpha_bar_prev, double beta_eff) {
    double denom = 1.0 - alpha_bar_t;
    PosteriorCoeffs pc;
    pc.c0 = std::sqrt(alpha_bar_prev) * beta_eff / denom;
    pc.c1 = std::sqrt(alpha_eff) * (1.0 - alpha_bar_prev) / denom;
    pc.variance = (1.0 - alpha_bar_prev) / denom * beta_eff;
    return pc;
}

// v-interpolated log-variance between log(beta_tilde) and log(beta_eff).
// beta_tilde = 0 (the deterministic final step) maps to -inf unless v == 1.
template <typename T>
inline T interp_log_variance(T v, double beta_eff, double beta_tilde) {
    T log_b = static_cast<T>(std::log(beta_eff));
    if (beta_tilde <= 0.0) return v >= T(1) ? log_b : -std::numeric_limits<T>::infinity();
    T log_bt = static_cast<T>(std::log(beta_tilde));
    return v * log_b + (T(1) - v) * log_bt;
}

}  // namespace detail

// Closed-form forward sample: sqrt(alpha_bar_t) * y0 + sqrt(1 - alpha_bar_t) * eps.
template <typename T>
Tensor<T> q_sample(const NoiseSchedule& s, const Tensor<T>& y0, const std::vector<int>& t, const Tensor<T>& eps) {
    check_same_shape(y0, eps, "q_sample");
    if (y0.rank() == 0) throw std::invalid_argument("q_sample: rank-0 input");
    detail::check_timesteps(s, t, y0.size(0));
    Tensor<T> out(y0.shape());
    int64_t stride = y0.numel() / y0.size(0);
    for (int64_t b = 0; b < y0.size(0); ++b) {
        double ab = s.alpha_bar(t[static_cast<size_t>(b)]);
        T c0 = static_cast<T>(std::sqrt(ab));
        T c1 = static_cast<T>(std::sqrt(1.0 - ab));
        const T* py0 = y0.data() + b * stride;
        const T* pe = eps.data() + b * stride;
        T* po = out.data() + b * stride;
        for (int64_t i = 0; i < stride; ++i) po[i] = c0 * py0[i] + c1 * pe[i];
    }
    return out;
}

// True posterior q(y_{t-1} | y_t, y_0).
template <typename T>
ReverseDistribution<T> q_posterior(const NoiseSchedule& s, const Tensor<T>& y0, const Tensor<T>& yt,
                                   const std::vector<int>& t) {
    check_same_shape(y0, yt, "q_posterior");
    detail::check_timesteps(s, t, y0.size(0));
    ReverseDistribution<T> out{Tensor<T>(y0.shape()), Tensor<T>(y0.shape())};
    int64_t stride = y0.numel() / y0.size(0);
    for (int64_t b = 0; b < y0.size(0); ++b) {
        int ti = t[static_cast<size_t>(b)];
        auto pc = detail::posterior_coeffs(s.alpha(ti), s.alpha_bar(ti), s.alpha_bar(ti - 1), s.beta(ti));
        T c0 = static_cast<T>(pc.c0), c1 = static_cast<T>(pc.c1);
        double bt = s.posterior_variance(ti);
        T lv = bt > 0.0 ? static_cast<T>(std::log(bt)) : -std::numeric_limits<T>::infinity();
        const T* py0 = y0.data() + b * stride;
        const T* pyt = yt.data() + b * stride;
        T* pm = out.mean.data() + b * stride;
        T* pl = out.log_variance.data() + b * stride;
        for (int64_t i = 0; i < stride; ++i) {
            pm[i] = c0 * py0[i] + c1 * pyt[i];
            pl[i] = lv;
        }
    }
    return out;
}

// Inversion of q_sample: y0_hat = (yt - sqrt(1 - alpha_bar_t) * eps_hat) / sqrt(alpha_bar_t),
// optionally clamped to [-1, 1] (stabilizes early reverse steps).
template <typename T>
Tensor<T> predict_y0_from_eps(const NoiseSchedule& s, const Tensor<T>& yt, const std::vector<int>& t,
                              const Tensor<T>& eps_hat, bool clamp = true) {
    check_same_shape(yt, eps_hat, "predict_y0_from_eps");
    detail::check_timesteps(s, t, yt.size(0));
    Tensor<T> out(yt.shape());
    int64_t stride = yt.numel() / yt.size(0);
    for (int64_t b = 0; b < yt.size(0); ++b) {
        double ab = s.alpha_bar(t[static_cast<size_t>(b)]);
        T inv = static_cast<T>(1.0 / std::sqrt(ab));
        T c = static_cast<T>(std::sqrt(1.0 - ab));
        const T* py = yt.data() + b * stride;
        const T* pe = eps_hat.data() + b * stride;
        T* po = out.data() + b * stride;
        for (int64_t i = 0; i < stride; ++i) {
            T v = (py[i] - c * pe[i]) * inv;
            po[i] = clamp ? std::clamp(v, T(-1), T(1)) : v;
        }
    }
    return out;
}

// Model-parameterized reverse distribution: posterior mean evaluated at the
// eps-predicted y0, log-variance interpolated between beta_tilde and beta by v.
template <typename T>
ReverseDistribution<T> p_mean_variance(const NoiseSchedule& s, const Tensor<T>& yt, const std::vector<int>& t,
                                       const Tensor<T>& eps_hat, const Tensor<T>& v, bool clamp_y0 = true) {
    check_same_shape(yt, eps_hat, "p_mean_variance");
    check_same_shape(yt, v, "p_mean_variance(v)");
    detail::check_timesteps(s, t, yt.size(0));
    Tensor<T> y0_hat = predict_y0_from_eps(s, yt, t, eps_hat, clamp_y0);
    ReverseDistribution<T> out{Tensor<T>(yt.shape()), Tensor<T>(yt.shape())};
    int64_t stride = yt.numel() / yt.size(0);
    for (int64_t b = 0; b < yt.size(0); ++b) {
        int ti = t[static_cast<size_t>(b)];
        auto pc = detail::posterior_coeffs(s.alpha(ti), s.alpha_bar(ti), s.alpha_bar(ti - 1), s.beta(ti));
        T c0 = static_cast<T>(pc.c0), c1 = static_cast<T>(pc.c1);
        double beta = s.beta(ti), btilde = s.posterior_variance(ti);
        const T* py0 = y0_hat.data() + b * stride;
        const T* pyt = yt.data() + b * stride;
        const T* pv = v.data() + b * stride;
        T* pm = out.mean.data() + b * stride;
        T* pl = out.log_variance.data() + b * stride;
        for (int64_t i = 0; i < stride; ++i) {
            pm[i] = c0 * py0[i] + c1 * pyt[i];
            pl[i] = detail::interp_log_variance(pv[i], beta, btilde);
        }
    }
    return out;
}

// KL(N(mean1, e^logvar1) || N(mean2, e^logvar2)) per element.
template <typename T>
Tensor<T> gaussian_kl(const Tensor<T>& mean1, const Tensor<T>& logvar1, const Tensor<T>& mean2,
                      const Tensor<T>& logvar2) {
    check_same_shape(mean1, logvar1, "gaussian_kl");
    check_same_shape(mean1, mean2, "gaussian_kl");
    check_same_shape(mean1, logvar2, "gaussian_kl");
    Tensor<T> out(mean1.shape());
    for (int64_t i = 0; i < out.numel(); ++i) {
        T dm = mean1[i] - mean2[i];
        out[i] = T(0.5) * (T(-1) + logvar2[i] - logvar1[i] + std::exp(logvar1[i] - logvar2[i]) +
                           dm * dm * std::exp(-logvar2[i]));
    }
    return out;
}

struct HybridLossOptions {
    double lambda_vib = 1e-3;
    // Treat the mean branch of p as constant w.r.t. eps_hat (the variance
    // head alone learns from the KL term). Disabled only by tests that
    // verify the full-path gradient algebra.
    bool detach_mean = true;
    bool clamp_y0 = true;
};

template <typename T>
struct HybridLossResult {
    double total = 0.0;
    double mse = 0.0;
    double vib = 0.0;  // already lambda-scaled in `total`; this is the raw KL mean
    Tensor<T> grad_eps_hat;
    Tensor<T> grad_v;
};

// L_hybrid = L_mse + lambda * L_vib, with L_vib the per-element KL between the
// true posterior and the model's reverse distribution, averaged over all
// elements. Elements at t = 1 contribute zero KL (the final reverse step is
// deterministic and its fit is already covered by L_mse).
template <typename T>
HybridLossResult<T> hybrid_loss(const NoiseSchedule& s, const Tensor<T>& y0, const std::vector<int>& t,
                                const Tensor<T>& eps, const Tensor<T>& eps_hat, const Tensor<T>& v,
                                const HybridLossOptions& opts = {}) {
    check_same_shape(y0, eps, "hybrid_loss");
    check_same_shape(y0, eps_hat, "hybrid_loss");
    check_same_shape(y0, v, "hybrid_loss(v)");
    detail::check_timesteps(s, t, y0.size(0));

    Tensor<T> yt = q_sample(s, y0, t, eps);
    HybridLossResult<T> res;
    res.grad_eps_hat = Tensor<T>(y0.shape());
    res.grad_v = Tensor<T>(y0.shape());

    const int64_t n = y0.numel();
    const int64_t stride = n / y0.size(0);
    const double inv_n = 1.0 / static_cast<double>(n);
    const T lam = static_cast<T>(opts.lambda_vib);

    double mse_acc = 0.0, kl_acc = 0.0;
    for (int64_t b = 0; b < y0.size(0); ++b) {
        int ti = t[static_cast<size_t>(b)];
        auto pc = detail::posterior_coeffs(s.alpha(ti), s.alpha_bar(ti), s.alpha_bar(ti - 1), s.beta(ti));
        double ab = s.alpha_bar(ti);
        double beta = s.beta(ti), btilde = s.posterior_variance(ti);
        double sqrt_ab = std::sqrt(ab), sqrt_1mab = std::sqrt(1.0 - ab);
        double log_btilde = btilde > 0.0 ? std::log(btilde) : 0.0;
        double log_beta = std::log(beta);
        bool has_kl = btilde > 0.0;

        const T* py0 = y0.data() + b * stride;
        const T* pyt = yt.data() + b * stride;
        const T* pe = eps.data() + b * stride;
        const T* peh = eps_hat.data() + b * stride;
        const T* pv = v.data() + b * stride;
        T* geh = res.grad_eps_hat.data() + b * stride;
        T* gv = res.grad_v.data() + b * stride;

        for (int64_t i = 0; i < stride; ++i) {
            double de = static_cast<double>(pe[i]) - static_cast<double>(peh[i]);
            mse_acc += de * de;
            geh[i] = static_cast<T>(2.0 * inv_n * (static_cast<double>(peh[i]) - static_cast<double>(pe[i])));
            if (!has_kl) {
                gv[i] = T(0);
                continue;
            }
            // q posterior
            double mean1 = pc.c0 * static_cast<double>(py0[i]) + pc.c1 * static_cast<double>(pyt[i]);
            // model reverse distribution
            double y0_hat = (static_cast<double>(pyt[i]) - sqrt_1mab * static_cast<double>(peh[i])) / sqrt_ab;
            bool clamped = false;
            if (opts.clamp_y0) {
                if (y0_hat < -1.0 || y0_hat > 1.0) clamped = true;
                y0_hat = std::clamp(y0_hat, -1.0, 1.0);
            }
            double mean2 = pc.c0 * y0_hat + pc.c1 * static_cast<double>(pyt[i]);
            double vi = static_cast<double>(pv[i]);
            double logvar2 = vi * log_beta + (1.0 - vi) * log_btilde;
            double dm = mean1 - mean2;
            double e_l1_l2 = std::exp(log_btilde - logvar2);
            double e_ml2 = std::exp(-logvar2);
            kl_acc += 0.5 * (-1.0 + logvar2 - log_btilde + e_l1_l2 + dm * dm * e_ml2);
            // dKL/dlogvar2, then chain to v
            double dkl_dlv2 = 0.5 * (1.0 - e_l1_l2 - dm * dm * e_ml2);
            gv[i] = static_cast<T>(opts.lambda_vib * inv_n * dkl_dlv2 * (log_beta - log_btilde));
            if (!opts.detach_mean && !clamped) {
                // full-path gradient of the KL through mean2 back to eps_hat
                double dkl_dm2 = -dm * e_ml2;
                double dm2_deh = pc.c0 * (-sqrt_1mab / sqrt_ab);
                geh[i] += static_cast<T>(opts.lambda_vib * inv_n * dkl_dm2 * dm2_deh);
            }
        }
    }
    res.mse = mse_acc * inv_n;
    res.vib = kl_acc * inv_n;
    res.total = res.mse + static_cast<double>(lam) * res.vib;
    return res;
}

}  // namespace posediff::schedule
