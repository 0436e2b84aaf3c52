#include "tensor.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"

namespace zxh {

namespace {
constexpr size_t kMaxEntries = size_t{1} << 28;

void require_dim(const Tensor& a, const Tensor& b) {
    if (a.dim() != b.dim()) fail(Errc::shape, "dimension mismatch");
}
}  // namespace

size_t checked_size(int64_t dim, int legs) {
    if (legs < 0) fail(Errc::shape, "negative leg count");
    size_t n = 1;
    for (int i = 0; i < legs; ++i) {
        if (n > kMaxEntries / static_cast<size_t>(dim))
            fail(Errc::too_large, "tensor with " + std::to_string(legs) + " legs exceeds the size guard");
        n *= static_cast<size_t>(dim);
    }
    return n;
}

Tensor::Tensor(int64_t dim, int in_legs, int out_legs)
    : dim_(dim), in_(in_legs), out_(out_legs), data_(checked_size(dim, in_legs + out_legs)) {
    if (dim < 2) fail(Errc::param, "dimension must be at least 2");
}

Tensor Tensor::scalar(int64_t dim, cd value) {
    Tensor t(dim, 0, 0);
    t.data_[0] = value;
    return t;
}

Tensor Tensor::identity(int64_t dim) {
    Tensor t(dim, 1, 1);
    for (int64_t i = 0; i < dim; ++i) t.data_[i * dim + i] = 1.0;
    return t;
}

Tensor Tensor::swap(int64_t dim) {
    Tensor t(dim, 2, 2);
    for (int64_t x = 0; x < dim; ++x)
        for (int64_t y = 0; y < dim; ++y) t.data_[t.offset({y, x}, {x, y})] = 1.0;
    return t;
}

Tensor Tensor::cup(int64_t dim) {
    Tensor t(dim, 0, 2);
    for (int64_t x = 0; x < dim; ++x) t.data_[x * dim + x] = 1.0;
    return t;
}

Tensor Tensor::cap(int64_t dim) {
    Tensor t(dim, 2, 0);
    for (int64_t x = 0; x < dim; ++x) t.data_[x * dim + x] = 1.0;
    return t;
}

size_t Tensor::rows() const { return checked_size(dim_, out_); }
size_t Tensor::cols() const { return checked_size(dim_, in_); }

size_t Tensor::offset(const std::vector<int64_t>& out_pos, const std::vector<int64_t>& in_pos) const {
    if (out_pos.size() != static_cast<size_t>(out_) || in_pos.size() != static_cast<size_t>(in_))
        fail(Errc::shape, "index arity mismatch");
    size_t idx = 0;
    for (int64_t p : out_pos) idx = idx * dim_ + static_cast<size_t>(p);
    for (int64_t p : in_pos) idx = idx * dim_ + static_cast<size_t>(p);
    return idx;
}

cd Tensor::at(const std::vector<int64_t>& out_pos, const std::vector<int64_t>& in_pos) const {
    return data_[offset(out_pos, in_pos)];
}

Tensor Tensor::adjoint() const {
    Tensor t(dim_, out_, in_);
    size_t r = rows(), c = cols();
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) t.data_[j * r + i] = std::conj(data_[i * c + j]);
    return t;
}

Tensor Tensor::scaled(cd s) const {
    Tensor t = *this;
    for (auto& v : t.data_) v *= s;
    return t;
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
    require_dim(a, b);
    Tensor t(a.dim(), a.in_legs() + b.in_legs(), a.out_legs() + b.out_legs());
    size_t ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    size_t tc = ac * bc;
    for (size_t i1 = 0; i1 < ar; ++i1)
        for (size_t i2 = 0; i2 < br; ++i2)
            for (size_t j1 = 0; j1 < ac; ++j1)
                for (size_t j2 = 0; j2 < bc; ++j2)
                    t[(i1 * br + i2) * tc + j1 * bc + j2] = a[i1 * ac + j1] * b[i2 * bc + j2];
    return t;
}

Tensor compose(const Tensor& first, const Tensor& second) {
    require_dim(first, second);
    if (first.out_legs() != second.in_legs()) fail(Errc::shape, "leg-count mismatch in composition");
    Tensor t(first.dim(), first.in_legs(), second.out_legs());
    size_t n = second.rows(), k = second.cols(), m = first.cols();
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            cd s = second[i * k + l];
            if (s == cd(0.0, 0.0)) continue;
            for (size_t j = 0; j < m; ++j) t[i * m + j] += s * first[l * m + j];
        }
    return t;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
    require_dim(a, b);
    if (a.in_legs() != b.in_legs() || a.out_legs() != b.out_legs())
        fail(Errc::shape, "shape mismatch: " + std::to_string(a.in_legs()) + "->" + std::to_string(a.out_legs()) +
                              " vs " + std::to_string(b.in_legs()) + "->" + std::to_string(b.out_legs()));
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const Tensor& a) {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace zxh
