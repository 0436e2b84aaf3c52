#pragma once

#include <cstdint>

#include "measure.hpp"

namespace zxh {

int jacobi(int64_t k, int64_t m);
cd epsilon(int64_t m);

// Sum over x in 0..N-1 of exp(2 pi i (r x^2 + s x) / N).
cd gauss_sum(int64_t r, int64_t s, int64_t n);
cd gauss_sum_oracle(int64_t r, int64_t s, int64_t n);

struct GammaValue {
    cd value;
    bool zero = false;
    int64_t t = 0;  // |value| = sqrt(t) when nonzero
};

GammaValue gamma(int64_t a, int64_t b, const Context& ctx);
cd gamma_oracle(int64_t a, int64_t b, const Context& ctx);

}  // namespace zxh
