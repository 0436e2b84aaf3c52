#include "gauss.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace zxh {

int jacobi(int64_t k, int64_t m) {
    if (m < 1 || m % 2 == 0) fail(Errc::param, "jacobi symbol needs an odd positive modulus");
    int64_t a = mod(k, m), n = m;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

cd epsilon(int64_t m) {
    if (m % 2 == 0) fail(Errc::param, "epsilon needs an odd argument");
    return mod(m, 4) == 1 ? cd(1.0, 0.0) : cd(0.0, 1.0);
}

namespace {

// exp(pi i num / den) with num reduced modulo 2 den.
cd half_turns(__int128 num, __int128 den) {
    __int128 period = 2 * den;
    __int128 r = num % period;
    if (r < 0) r += period;
    return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
}

cd i_pow(int64_t k) {
    static const cd units[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return units[mod(k, 4)];
}

// Phase of G(r, s, N) for gcd(r, N) = 1, r in 0..N-1.
cd coprime_phase(int64_t r, int64_t s, int64_t n) {
    if (n % 2 == 1) {
        if (n == 1) return 1.0;
        int64_t u = inverse_mod(r, n);
        int64_t h = inverse_mod(2, n);
        __int128 e = static_cast<__int128>(r) * u % n * u % n;
        e = e * mod(checked_mul(h, h) % n - h, n) % n;
        e = e * mod(s, n) % n * mod(s, n) % n;
        return half_turns(2 * e, n) * i_pow((n - 1) * (n - 1) / 4) * static_cast<double>(jacobi(r, n));
    }
    // N a multiple of 4, s even, r odd and positive.
    int64_t u = inverse_mod(r, n);
    int64_t half = s / 2;
    __int128 e = static_cast<__int128>(u) * mod(half, n) % n * mod(half, n) % n;
    cd phase = half_turns(1, 4) * half_turns(-2 * e, n);
    return phase * i_pow(-((r - 1) * (r - 1) / 4)) * static_cast<double>(jacobi(n, r));
}

struct Closed {
    cd value;
    int64_t norm;  // |value|^2
};

Closed closed_form(int64_t r, int64_t s, int64_t n) {
    if (n < 1) fail(Errc::param, "gauss sum needs N >= 1");
    if (n % 4 == 2) fail(Errc::param, "closed form excludes N = 2 mod 4");
    r = mod(r, n);
    s = mod(s, n);
    int64_t t = gcd64(r, n);
    int64_t nt = n / t;
    if (nt % 2 == 1 && s % t == 0) {
        int64_t norm = checked_mul(t, n);
        return {coprime_phase(r / t, s / t, nt) * std::sqrt(static_cast<double>(norm)), norm};
    }
    if (nt % 4 == 0 && s % (2 * t) == 0) {
        int64_t norm = checked_mul(2 * t, n);
        return {coprime_phase(r / t, s / t, nt) * std::sqrt(static_cast<double>(norm)), norm};
    }
    if (nt % 4 == 2 && s % t == 0 && (s / t) % 2 == 1) {
        // Z_2M = Z_2 x Z_M: G(r,s,2M) = G(rM,s,2) G(2r,s,M), the first factor being 2.
        int64_t m = nt / 2;
        Closed odd = closed_form(2 * (r / t), s / t, m);
        int64_t norm = checked_mul(checked_mul(4, odd.norm), checked_mul(t, t));
        return {2.0 * static_cast<double>(t) * odd.value, norm};
    }
    return {0.0, 0};
}

}  // namespace

cd gauss_sum(int64_t r, int64_t s, int64_t n) { return closed_form(r, s, n).value; }

cd gauss_sum_oracle(int64_t r, int64_t s, int64_t n) {
    if (n < 1) fail(Errc::param, "gauss sum needs N >= 1");
    cd acc = 0;
    for (int64_t x = 0; x < n; ++x) {
        __int128 e = (static_cast<__int128>(mod(r, n)) * x % n * x + static_cast<__int128>(mod(s, n)) * x) % n;
        acc += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n));
    }
    return acc;
}

GammaValue gamma(int64_t a, int64_t b, const Context& ctx) {
    if (!ctx.well_tempered()) fail(Errc::param, "gamma is defined against the well-tempered measure");
    const int64_t d = ctx.dim();
    GammaValue g;
    double root_d = std::sqrt(static_cast<double>(d));
    if (d % 2 == 1) {
        int64_t h = inverse_mod(2, d);
        int64_t r = static_cast<int64_t>(static_cast<__int128>(mod(b, d)) * h % d);
        Closed c = closed_form(r, a, d);
        g.value = c.value / root_d;
        g.t = c.norm / d;
    } else {
        Closed c = closed_form(b, checked_mul(2, a), 2 * d);
        g.value = c.value / (2.0 * root_d);
        g.t = c.norm / (4 * d);
    }
    g.zero = g.t == 0;
    return g;
}

cd gamma_oracle(int64_t a, int64_t b, const Context& ctx) {
    return ctx.integrate([&](int64_t x) {
        int64_t two_d = 2 * ctx.dim();
        __int128 e = 2 * static_cast<__int128>(mod(a, two_d)) * mod(x, two_d) +
                     static_cast<__int128>(mod(b, two_d)) * mod(x, two_d) % two_d * mod(x, two_d);
        return ctx.tau_pow(static_cast<int64_t>(e % two_d));
    });
}

}  // namespace zxh
