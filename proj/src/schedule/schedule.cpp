// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#include "posediff/schedule/schedule.hpp"

namespace posediff::schedule {

NoiseSchedule::NoiseSchedule(std::vector<double> beta) : beta_(std::move(beta)) {
    if (beta_.empty()) throw std::invalid_argument("schedule needs at least one step");
    alpha_.resize(beta_.size());
    alpha_bar_.resize(beta_.size());
    posterior_variance_.resize(beta_.size());
    double prod = 1.0;
    for (size_t i = 0; i < beta_.size(); ++i) {
        double b = beta_[i];
        if (!(b > 0.0 && b < 1.0))
            throw std::invalid_argument("beta[" + std::to_string(i + 1) + "] = " + std::to_string(b) +
                                        " outside (0, 1)");
        alpha_[i] = 1.0 - b;
        double prev = prod;
        prod *= alpha_[i];
        alpha_bar_[i] = prod;
        // alpha_bar_0 == 1 makes the first posterior variance exactly zero
        posterior_variance_[i] = (1.0 - prev) / (1.0 - prod) * b;
    }
}

NoiseSchedule make_linear_schedule(int steps, double beta_start, double beta_end) {
    if (steps < 2) throw std::invalid_argument("linear schedule needs T >= 2");
    if (!(beta_start > 0.0 && beta_start < 1.0) || !(beta_end > 0.0 && beta_end < 1.0))
        throw std::invalid_argument("schedule endpoints must lie in (0, 1)");
    if (beta_start > beta_end) throw std::invalid_argument("beta_start must not exceed beta_end");
    std::vector<double> beta(static_cast<size_t>(steps));
    for (int t = 0; t < steps; ++t)
        beta[static_cast<size_t>(t)] = beta_start + (beta_end - beta_start) * static_cast<double>(t) /
                                                        static_cast<double>(steps - 1);
    return NoiseSchedule(std::move(beta));
}

}  // namespace posediff::schedule
