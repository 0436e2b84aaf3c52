#pragma once

#include <cstdint>
#include <vector>

#include "measure.hpp"

namespace zxh {

// Dense map H^m -> H^n. Entries are stored outputs-major then inputs, first
// leg most significant; each axis runs over the labels lo..hi of [D].
class Tensor {
public:
    Tensor() = default;
    Tensor(int64_t dim, int in_legs, int out_legs);

    static Tensor scalar(int64_t dim, cd value);
    static Tensor identity(int64_t dim);
    static Tensor swap(int64_t dim);
    static Tensor cup(int64_t dim);
    static Tensor cap(int64_t dim);

    int64_t dim() const { return dim_; }
    int in_legs() const { return in_; }
    int out_legs() const { return out_; }
    int legs() const { return in_ + out_; }
    size_t size() const { return data_.size(); }

    cd& operator[](size_t i) { return data_[i]; }
    const cd& operator[](size_t i) const { return data_[i]; }
    std::vector<cd>& data() { return data_; }
    const std::vector<cd>& data() const { return data_; }

    // Axis positions (0..D-1) for outputs then inputs.
    size_t offset(const std::vector<int64_t>& out_pos, const std::vector<int64_t>& in_pos) const;
    cd at(const std::vector<int64_t>& out_pos, const std::vector<int64_t>& in_pos) const;

    Tensor adjoint() const;
    Tensor scaled(cd s) const;
    // Row-major D^n x D^m matrix product view: rows = outputs.
    size_t rows() const;
    size_t cols() const;

private:
    int64_t dim_ = 2;
    int in_ = 0;
    int out_ = 0;
    std::vector<cd> data_;
};

size_t checked_size(int64_t dim, int legs);

Tensor tensor_product(const Tensor& a, const Tensor& b);
Tensor compose(const Tensor& first, const Tensor& second);
double max_abs_diff(const Tensor& a, const Tensor& b);
double max_abs(const Tensor& a);

}  // namespace zxh
