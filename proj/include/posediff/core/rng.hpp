// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "posediff/core/tensor.hpp"

namespace posediff {

// Deterministic, platform-independent generator (xoshiro256++ seeded via
// splitmix64). Every consumer derives its own stream from a (seed, tag)
// key so parallel and resumed runs draw identical values.
class Rng {
public:
    explicit Rng(uint64_t seed, uint64_t stream = 0) : key_(mix(seed, stream)) {
        uint64_t sm = key_;
        for (int i = 0; i < 4; ++i) s_[i] = splitmix64(sm);
        has_spare_ = false;
        spare_ = 0.0;
    }

    // Independent stream derived from this generator's construction key,
    // unaffected by how many values have been consumed so far.
    Rng fork(uint64_t tag) const { return Rng(key_, mix(tag, 0x9e3779b97f4a7c15ull)); }
    Rng fork(std::string_view tag) const { return fork(hash_str(tag)); }

    uint64_t next_u64() {
        uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
    uint64_t uniform_int(uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
        return next_u64() % n;
    }

    // Standard normal via Box-Muller (explicit algorithm, not
    // std::normal_distribution, so sequences are implementation-independent).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    template <typename T>
    void fill_normal(Tensor<T>& t) {
        for (int64_t i = 0; i < t.numel(); ++i) t[i] = static_cast<T>(normal());
    }

    template <typename T>
    Tensor<T> normal_tensor(Shape shape) {
        Tensor<T> t(std::move(shape));
        fill_normal(t);
        return t;
    }

    uint64_t key() const { return key_; }

    static uint64_t mix(uint64_t a, uint64_t b) {
        uint64_t x = a + 0x9e3779b97f4a7c15ull * (b + 0x632be59bd9b4e019ull);
        return splitmix64(x);
    }

    static uint64_t hash_str(std::string_view s) {
        // FNV-1a
        uint64_t h = 0xcbf29ce484222325ull;
        for (char c : s) {
            h ^= static_cast<uint8_t>(c);
            h *= 0x100000001b3ull;
        }
        return h;
    }

private:
    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    static uint64_t splitmix64(uint64_t&& x) {
        uint64_t v = x;
        return splitmix64(v);
    }
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t key_;
    uint64_t s_[4];
    bool has_spare_;
    double spare_;
};

}  // namespace posediff
