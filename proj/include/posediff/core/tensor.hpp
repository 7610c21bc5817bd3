// Copyright (C) 2026 posediff contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace posediff {

using Shape = std::vector<int64_t>;

inline std::string shape_str(const Shape& s) {
    std::string r = "[";
    for (size_t i = 0; i < s.size(); ++i) {
        r += std::to_string(s[i]);
        if (i + 1 < s.size()) r += ", ";
    }
    return r + "]";
}

// Dense row-major tensor. Rank is dynamic but in practice <= 4 (NCHW).
template <typename T>
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(Shape shape) : shape_(std::move(shape)) {
        data_.assign(static_cast<size_t>(compute_numel(shape_)), T(0));
    }
    Tensor(Shape shape, T fill) : shape_(std::move(shape)) {
        data_.assign(static_cast<size_t>(compute_numel(shape_)), fill);
    }

    static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }
    static Tensor full(Shape shape, T v) { return Tensor(std::move(shape), v); }
    static Tensor scalar(T v) { return Tensor(Shape{1}, v); }

    const Shape& shape() const { return shape_; }
    int64_t size(size_t dim) const { return shape_.at(dim); }
    size_t rank() const { return shape_.size(); }
    int64_t numel() const { return static_cast<int64_t>(data_.size()); }
    bool empty() const { return data_.empty(); }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    T& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
    const T& operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }

    // NCHW convenience accessor, rank 4 only.
    T& at4(int64_t n, int64_t c, int64_t h, int64_t w) {
        return data_[static_cast<size_t>(((n * shape_[1] + c) * shape_[2] + h) * shape_[3] + w)];
    }
    const T& at4(int64_t n, int64_t c, int64_t h, int64_t w) const {
        return data_[static_cast<size_t>(((n * shape_[1] + c) * shape_[2] + h) * shape_[3] + w)];
    }

    void fill(T v) { std::fill(data_.begin(), data_.end(), v); }
    void zero() { fill(T(0)); }

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

    // Reshape without copying; element count must match.
    Tensor reshaped(Shape s) const {
        if (compute_numel(s) != numel())
            throw std::invalid_argument("reshape: numel mismatch " + shape_str(shape_) + " -> " + shape_str(s));
        Tensor r = *this;
        r.shape_ = std::move(s);
        return r;
    }

    template <typename U>
    Tensor<U> cast() const {
        Tensor<U> r(shape_);
        for (int64_t i = 0; i < numel(); ++i) r[i] = static_cast<U>(data_[static_cast<size_t>(i)]);
        return r;
    }

    bool all_finite() const {
        for (const T& v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    static int64_t compute_numel(const Shape& s) {
        int64_t n = 1;
        for (int64_t d : s) {
            if (d < 0) throw std::invalid_argument("negative dimension in shape " + shape_str(s));
            n *= d;
        }
        return n;
    }

private:
    Shape shape_;
    std::vector<T> data_;
};

template <typename T>
void check_same_shape(const Tensor<T>& a, const Tensor<T>& b, const char* what) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(what) + ": shape mismatch " + shape_str(a.shape()) + " vs " +
                                    shape_str(b.shape()));
}

// ---- elementwise helpers ----

template <typename T>
Tensor<T> operator+(const Tensor<T>& a, const Tensor<T>& b) {
    check_same_shape(a, b, "add");
    Tensor<T> r(a.shape());
    for (int64_t i = 0; i < a.numel(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <typename T>
Tensor<T> operator-(const Tensor<T>& a, const Tensor<T>& b) {
    check_same_shape(a, b, "sub");
    Tensor<T> r(a.shape());
    for (int64_t i = 0; i < a.numel(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <typename T>
Tensor<T> operator*(const Tensor<T>& a, const Tensor<T>& b) {
    check_same_shape(a, b, "mul");
    Tensor<T> r(a.shape());
    for (int64_t i = 0; i < a.numel(); ++i) r[i] = a[i] * b[i];
    return r;
}

template <typename T>
Tensor<T> operator*(const Tensor<T>& a, T s) {
    Tensor<T> r(a.shape());
    for (int64_t i = 0; i < a.numel(); ++i) r[i] = a[i] * s;
    return r;
}

template <typename T>
void add_inplace(Tensor<T>& a, const Tensor<T>& b) {
    check_same_shape(a, b, "add_inplace");
    for (int64_t i = 0; i < a.numel(); ++i) a[i] += b[i];
}

template <typename T>
void axpy(T alpha, const Tensor<T>& x, Tensor<T>& y) {
    check_same_shape(x, y, "axpy");
    for (int64_t i = 0; i < x.numel(); ++i) y[i] += alpha * x[i];
}

template <typename T>
void scale_inplace(Tensor<T>& a, T s) {
    for (int64_t i = 0; i < a.numel(); ++i) a[i] *= s;
}

template <typename T>
void clamp_inplace(Tensor<T>& a, T lo, T hi) {
    for (int64_t i = 0; i < a.numel(); ++i) a[i] = std::clamp(a[i], lo, hi);
}

template <typename T>
T sum(const Tensor<T>& a) {
    T s = 0;
    for (int64_t i = 0; i < a.numel(); ++i) s += a[i];
    return s;
}

template <typename T>
T mean(const Tensor<T>& a) {
    if (a.numel() == 0) throw std::invalid_argument("mean of empty tensor");
    return sum(a) / static_cast<T>(a.numel());
}

template <typename T>
T max_abs(const Tensor<T>& a) {
    T m = 0;
    for (int64_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

// y[b, ...] = coeff[b] * x[b, ...]; coeff has one entry per leading-dim slice.
template <typename T>
void scale_per_batch(Tensor<T>& x, const std::vector<T>& coeff) {
    if (x.rank() == 0 || static_cast<int64_t>(coeff.size()) != x.size(0))
        throw std::invalid_argument("scale_per_batch: coefficient count vs batch mismatch");
    int64_t stride = x.numel() / x.size(0);
    for (int64_t b = 0; b < x.size(0); ++b) {
        T c = coeff[static_cast<size_t>(b)];
        T* p = x.data() + b * stride;
        for (int64_t i = 0; i < stride; ++i) p[i] *= c;
    }
}

}  // namespace posediff
