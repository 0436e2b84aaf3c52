#include <gtest/gtest.h>

#include <random>

#include "error.hpp"
#include "oracle.hpp"
#include "tensor.hpp"

using namespace zxh;

namespace {

Tensor ident_n(int64_t d, int k) {
    Tensor t = Tensor::scalar(d, 1.0);
    for (int i = 0; i < k; ++i) t = tensor_product(t, Tensor::identity(d));
    return t;
}

Tensor projector(int64_t d, int64_t pos) {
    Tensor t(d, 1, 1);
    t[pos * d + pos] = 1.0;
    return t;
}

}  // namespace

TEST(Tensor, WireExamples) {
    Tensor id = Tensor::identity(3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) EXPECT_EQ(id[r * 3 + c], cd(r == c ? 1.0 : 0.0));
    EXPECT_NEAR(std::abs(compose(Tensor::cup(2), Tensor::cap(2))[0] - cd(2.0)), 0.0, 1e-12);
    for (int64_t d = 2; d <= 4; ++d)
        EXPECT_LT(max_abs_diff(compose(Tensor::swap(d), Tensor::swap(d)), ident_n(d, 2)), 1e-15);
}

TEST(Tensor, CupCapTraceIsDimension) {
    for (int64_t d = 2; d <= 6; ++d) EXPECT_NEAR(std::abs(compose(Tensor::cup(d), Tensor::cap(d))[0] - cd(d)), 0.0, 1e-12);
}

TEST(Tensor, SwapExchangesLegs) {
    int64_t d = 3;
    Tensor s = Tensor::swap(d);
    for (int64_t x = 0; x < d; ++x)
        for (int64_t y = 0; y < d; ++y) EXPECT_EQ(s.at({y, x}, {x, y}), cd(1.0));
}

TEST(Tensor, ProductExamples) {
    EXPECT_LT(max_abs_diff(tensor_product(Tensor::identity(2), Tensor::identity(2)), ident_n(2, 2)), 1e-15);
    Tensor p = tensor_product(Tensor::scalar(2, 2.0), Tensor::scalar(2, cd(0, 3)));
    EXPECT_NEAR(std::abs(p[0] - cd(0, 6)), 0.0, 1e-15);
    Tensor proj = tensor_product(projector(2, 0), projector(2, 1));
    for (size_t i = 0; i < proj.size(); ++i) EXPECT_EQ(proj[i], cd(i == proj.offset({0, 1}, {0, 1}) ? 1.0 : 0.0));
}

TEST(Tensor, ComposeExamples) {
    std::mt19937_64 rng(1);
    Tensor t = oracle::random_tensor(3, 2, 1, rng);
    EXPECT_LT(max_abs_diff(compose(ident_n(3, 2), t), t), 1e-15);
    EXPECT_NEAR(std::abs(compose(Tensor::cup(4), Tensor::cap(4))[0] - cd(4.0)), 0.0, 1e-12);
    // Snake: (cup (x) id) ; (id (x) cap) = id.
    for (int64_t d = 2; d <= 4; ++d) {
        Tensor snake = compose(tensor_product(Tensor::identity(d), Tensor::cup(d)),
                               tensor_product(Tensor::cap(d), Tensor::identity(d)));
        EXPECT_LT(max_abs_diff(snake, Tensor::identity(d)), 1e-12);
    }
}

TEST(Tensor, MaxAbsDiffExamples) {
    std::mt19937_64 rng(2);
    Tensor t = oracle::random_tensor(2, 1, 1, rng);
    EXPECT_EQ(max_abs_diff(t, t), 0.0);
    EXPECT_EQ(max_abs_diff(Tensor::identity(2), Tensor(2, 1, 1)), 1.0);
    EXPECT_THROW(max_abs_diff(Tensor::identity(2), Tensor(2, 2, 0)), Error);
    EXPECT_THROW(max_abs_diff(Tensor::identity(2), Tensor::identity(3)), Error);
}

TEST(Tensor, ShapeErrors) {
    EXPECT_THROW(compose(Tensor::identity(2), Tensor::cup(2)), Error);
    EXPECT_THROW(compose(Tensor::identity(2), Tensor::identity(3)), Error);
    EXPECT_THROW(tensor_product(Tensor::identity(2), Tensor::identity(3)), Error);
    EXPECT_THROW(checked_size(6, 64), Error);
}

TEST(Tensor, ComposeMatchesMatrixProduct) {
    std::mt19937_64 rng(3);
    for (int64_t d = 2; d <= 4; ++d) {
        Tensor a = oracle::random_tensor(d, 1, 2, rng), b = oracle::random_tensor(d, 2, 1, rng);
        Tensor c = compose(a, b);
        for (size_t r = 0; r < c.rows(); ++r)
            for (size_t col = 0; col < c.cols(); ++col) {
                cd s = 0.0;
                for (size_t k = 0; k < a.rows(); ++k) s += b[r * b.cols() + k] * a[k * a.cols() + col];
                EXPECT_NEAR(std::abs(c[r * c.cols() + col] - s), 0.0, 1e-12);
            }
    }
}

TEST(Tensor, InterchangeLaw) {
    std::mt19937_64 rng(4);
    for (int64_t d = 2; d <= 3; ++d)
        for (int trial = 0; trial < 5; ++trial) {
            Tensor a = oracle::random_tensor(d, 1, 2, rng), b = oracle::random_tensor(d, 2, 1, rng);
            Tensor c = oracle::random_tensor(d, 2, 1, rng), e = oracle::random_tensor(d, 1, 1, rng);
            Tensor lhs = compose(tensor_product(a, b), tensor_product(c, e));
            Tensor rhs = tensor_product(compose(a, c), compose(b, e));
            EXPECT_LT(max_abs_diff(lhs, rhs), 1e-10);
        }
}

TEST(Tensor, CupTransposeIdentity) {
    std::mt19937_64 rng(5);
    for (int64_t d = 2; d <= 5; ++d) {
        Tensor t = oracle::random_tensor(d, 1, 1, rng);
        Tensor tt(d, 1, 1);
        for (int64_t r = 0; r < d; ++r)
            for (int64_t c = 0; c < d; ++c) tt[r * d + c] = t[c * d + r];
        Tensor lhs = compose(Tensor::cup(d), tensor_product(Tensor::identity(d), t));
        Tensor rhs = compose(Tensor::cup(d), tensor_product(tt, Tensor::identity(d)));
        EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
    }
}

TEST(Tensor, AdjointIsConjugateTranspose) {
    std::mt19937_64 rng(6);
    Tensor t = oracle::random_tensor(3, 1, 2, rng);
    Tensor a = t.adjoint();
    EXPECT_EQ(a.in_legs(), 2);
    EXPECT_EQ(a.out_legs(), 1);
    for (size_t r = 0; r < t.rows(); ++r)
        for (size_t c = 0; c < t.cols(); ++c) EXPECT_EQ(a[c * a.cols() + r], std::conj(t[r * t.cols() + c]));
    EXPECT_LT(max_abs_diff(a.adjoint(), t), 1e-15);
}

TEST(Tensor, ScalarHasOneEntry) {
    Tensor s = Tensor::scalar(5, cd(1, 2));
    EXPECT_EQ(s.size(), 1u);
    EXPECT_EQ(s.legs(), 0);
    EXPECT_EQ(Tensor(3, 2, 1).size(), 27u);
}
