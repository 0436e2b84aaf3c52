#include "measure.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"

namespace zxh {

int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(Errc::overflow, "integer overflow in addition");
    return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(Errc::overflow, "integer overflow in product");
    return r;
}

int64_t checked_pow(int64_t base, int64_t exp) {
    int64_t r = 1;
    for (int64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

int64_t mod(int64_t t, int64_t m) {
    int64_t r = t % m;
    return r < 0 ? r + m : r;
}

int64_t gcd64(int64_t a, int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t inverse_mod(int64_t a, int64_t m) {
    if (m < 1) fail(Errc::param, "modulus must be positive");
    if (m == 1) return 0;
    __int128 r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1;
        __int128 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) fail(Errc::param, std::to_string(a) + " has no inverse modulo " + std::to_string(m));
    int64_t inv = mod(static_cast<int64_t>(s0 % m), m);
    if (static_cast<int64_t>((static_cast<__int128>(inv) * mod(a, m)) % m) != 1)
        fail(Errc::param, "modular inverse check failed");
    return inv;
}

double Context::default_nu(int64_t dim) { return std::pow(static_cast<double>(dim), -0.25); }

Context::Context(int64_t dim) : Context(dim, default_nu(dim)) {}

Context::Context(int64_t dim, double nu) : dim_(dim), nu_(nu) {
    if (dim < 2) fail(Errc::param, "dimension must be at least 2");
    if (dim > (int64_t{1} << 30)) fail(Errc::param, "dimension too large");
    if (!(nu > 0.0) || !std::isfinite(nu)) fail(Errc::param, "nu must be a positive real");
    lo_ = -((dim - 1) / 2);
    hi_ = dim / 2;
    well_tempered_ = std::abs(nu - default_nu(dim)) <= 1e-12;
}

int64_t Context::residue(int64_t t) const {
    int64_t r = mod(t, dim_);
    return r > hi_ ? r - dim_ : r;
}

int64_t Context::negate(int64_t x) const { return residue(sigma() - x); }

cd Context::integrate(const std::function<cd(int64_t)>& f) const {
    cd acc = 0;
    for (int64_t x = lo_; x <= hi_; ++x) acc += f(x);
    return nu_ * nu_ * acc;
}

cd Context::exp_integral(int64_t e) const {
    return mod(e, dim_) == 0 ? cd(dnu4(), 0.0) : cd(0.0, 0.0);
}

cd Context::omega_pow(int64_t e) const {
    int64_t r = mod(e, dim_);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(dim_));
}

cd Context::tau_pow(int64_t e) const {
    // tau = exp(i pi k / D) with k = (D^2 + 1) mod 2D.
    int64_t two_d = 2 * dim_;
    int64_t k = mod(dim_ % 2 == 0 ? 1 : dim_ + 1, two_d);
    __int128 n = static_cast<__int128>(k) * mod(e, two_d);
    int64_t r = static_cast<int64_t>(n % two_d);
    return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / static_cast<double>(dim_));
}

double Context::nu_pow(int64_t k) const { return std::pow(nu_, static_cast<double>(k)); }

}  // namespace zxh
