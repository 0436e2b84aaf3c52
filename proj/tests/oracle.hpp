#pragma once

// Brute-force references kept independent of the library's evaluator.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "diagram.hpp"
#include "generators.hpp"
#include "measure.hpp"
#include "tensor.hpp"

namespace oracle {

using cd = std::complex<double>;
using zxh::Context;
using zxh::Tensor;

inline int64_t lo(int64_t d) { return -((d - 1) / 2); }

inline int64_t reduce(int64_t t, int64_t d) {
    int64_t r = ((t % d) + d) % d;
    return r > d / 2 ? r - d : r;
}

inline cd omega(int64_t e, int64_t d) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(((e % d) + d) % d) / static_cast<double>(d));
}

inline cd tau(int64_t e, int64_t d) {
    int64_t p = 2 * d;
    int64_t r = ((e * ((d * d + 1) % p)) % p + p) % p;
    return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / static_cast<double>(d));
}

// Tensor filled from a function of the labels (outputs, inputs).
inline Tensor tabulate(int64_t d, int m, int n, const std::function<cd(const std::vector<int64_t>&, const std::vector<int64_t>&)>& f) {
    Tensor t(d, m, n);
    size_t total = t.size();
    for (size_t i = 0; i < total; ++i) {
        size_t rest = i;
        std::vector<int64_t> lab(m + n);
        for (int a = m + n - 1; a >= 0; --a) {
            lab[a] = lo(d) + static_cast<int64_t>(rest % d);
            rest /= d;
        }
        std::vector<int64_t> ys(lab.begin(), lab.begin() + n), xs(lab.begin() + n, lab.end());
        t[i] = f(ys, xs);
    }
    return t;
}

// Standard-basis point mass |x>> = nu^{-1} e_x as a vector over the labels.
inline std::vector<cd> point(const Context& ctx, int64_t x) {
    std::vector<cd> v(ctx.dim(), 0.0);
    v[reduce(x, ctx.dim()) - lo(ctx.dim())] = 1.0 / ctx.nu();
    return v;
}

// |omega^k>> = integral over x of omega^{-kx} |x>>.
inline std::vector<cd> fourier_point(const Context& ctx, int64_t k) {
    int64_t d = ctx.dim();
    std::vector<cd> v(d, 0.0);
    for (int64_t x = lo(d); x < lo(d) + d; ++x) {
        auto p = point(ctx, x);
        for (int64_t i = 0; i < d; ++i) v[i] += ctx.nu() * ctx.nu() * omega(-k * x, d) * p[i];
    }
    return v;
}

inline cd amp(const Context& ctx, const zxh::AmplitudeFn& a, int64_t t) {
    using namespace zxh::amp;
    int64_t d = ctx.dim();
    if (std::holds_alternative<One>(a)) return 1.0;
    if (std::holds_alternative<Zero>(a)) return 0.0;
    if (auto* p = std::get_if<Phase>(&a)) return std::exp(cd(0, p->theta * static_cast<double>(t)));
    if (auto* p = std::get_if<PhaseVec>(&a)) return std::exp(cd(0, p->thetas[reduce(t, d) - lo(d)]));
    if (auto* p = std::get_if<Stab>(&a)) return tau(2 * p->a * t + p->b * t * t, d);
    if (auto* p = std::get_if<Char>(&a)) return omega(p->c * t, d);
    if (auto* p = std::get_if<UnitPow>(&a)) return std::exp(static_cast<double>(t) * std::log(p->alpha));
    if (auto* p = std::get_if<Table>(&a)) return p->values[reduce(t, d) - lo(d)];
    if (auto* p = std::get_if<MBox>(&a)) {
        int64_t u = d / 2, pw = 1;
        for (int64_t i = 0; i < p->k; ++i) pw *= u;
        return t == pw ? p->alpha : cd(1.0);
    }
    if (auto* p = std::get_if<Sign>(&a)) {
        for (auto s : p->set)
            if (s == t) return -1.0;
        return 1.0;
    }
    if (auto* p = std::get_if<Indicator>(&a)) {
        for (auto s : p->set)
            if (s == t) return 1.0;
        return 0.0;
    }
    return 0.0;
}

// Each generator as its defining integral, built from explicit point-mass vectors.
inline Tensor generator(const Context& ctx, const zxh::Generator& g) {
    using zxh::Kind;
    int64_t d = ctx.dim();
    double w = ctx.nu() * ctx.nu();
    auto idx = [&](int64_t x) { return reduce(x, d) - lo(d); };
    return tabulate(d, g.m, g.n, [&](const std::vector<int64_t>& ys, const std::vector<int64_t>& xs) -> cd {
        cd total = 0.0;
        switch (g.kind) {
            case Kind::green:
            case Kind::white:
                for (int64_t z = lo(d); z < lo(d) + d; ++z) {
                    cd term = w * (g.kind == Kind::white ? cd(1.0) : amp(ctx, g.amp, z));
                    for (auto y : ys) term *= point(ctx, z)[idx(y)];
                    for (auto x : xs) term *= std::conj(point(ctx, z)[idx(x)]);
                    total += term;
                }
                return total;
            case Kind::red:
                for (int64_t k = lo(d); k < lo(d) + d; ++k) {
                    cd term = w * amp(ctx, g.amp, k);
                    for (auto y : ys) term *= fourier_point(ctx, -k)[idx(y)];
                    for (auto x : xs) term *= std::conj(fourier_point(ctx, k)[idx(x)]);
                    total += term;
                }
                return total;
            case Kind::hplus:
            case Kind::hminus: {
                int sign = g.kind == Kind::hplus ? 1 : -1;
                for (int64_t k = lo(d); k < lo(d) + d; ++k)
                    for (int64_t x = lo(d); x < lo(d) + d; ++x)
                        total += w * w * omega(sign * k * x, d) * point(ctx, k)[idx(ys[0])] *
                                 std::conj(point(ctx, x)[idx(xs[0])]);
                return total;
            }
            case Kind::hbox: {
                // Sum over all leg assignments with the measure on each.
                int k = g.m + g.n;
                std::vector<int64_t> all(xs);
                all.insert(all.end(), ys.begin(), ys.end());
                int64_t prod = 1;
                for (auto v : all) prod *= v;
                cd term = amp(ctx, g.amp, prod);
                for (int i = 0; i < k; ++i) term *= w / ctx.nu();
                return term;
            }
            case Kind::gray: {
                int64_t s = 0;
                for (auto v : xs) s += v;
                for (auto v : ys) s += v;
                // <<s|0>> = nu^{-2} [s = 0]
                if (reduce(s, d) != 0) return 0.0;
                cd term = 1.0 / (ctx.nu() * ctx.nu());
                for (int i = 0; i < g.m + g.n; ++i) term *= w / ctx.nu();
                return term;
            }
            case Kind::notdot:
                for (int64_t x = lo(d); x < lo(d) + d; ++x)
                    total += w * point(ctx, -g.c - x)[idx(ys[0])] * std::conj(point(ctx, x)[idx(xs[0])]);
                return total;
        }
        return total;
    });
}

// Sums over every assignment of labels to every edge; exponential but obviously correct.
inline Tensor brute_evaluate(const zxh::Diagram& d, const Context& ctx) {
    using zxh::Port;
    int64_t dim = ctx.dim();
    const auto& edges = d.edges();
    std::vector<Tensor> gens;
    for (const auto& n : d.nodes()) gens.push_back(generator(ctx, n.gen));
    int m = d.inputs(), n = d.outputs();
    return tabulate(dim, m, n, [&](const std::vector<int64_t>& ys, const std::vector<int64_t>& xs) -> cd {
        // Edges touching the boundary are fixed; the rest are enumerated.
        std::vector<int64_t> value(edges.size(), 0);
        std::vector<int> free_edges;
        for (size_t e = 0; e < edges.size(); ++e) {
            auto [a, b] = edges[e];
            bool fixed = false;
            for (const Port& p : {a, b}) {
                if (p.side == Port::Side::in) value[e] = xs[p.index], fixed = true;
                if (p.side == Port::Side::out) value[e] = ys[p.index], fixed = true;
            }
            if (a.side != Port::Side::node && b.side != Port::Side::node) {
                int64_t va = a.side == Port::Side::in ? xs[a.index] : ys[a.index];
                int64_t vb = b.side == Port::Side::in ? xs[b.index] : ys[b.index];
                if (va != vb) return 0.0;
            }
            if (!fixed) free_edges.push_back(static_cast<int>(e));
        }
        // Leg -> edge lookup.
        std::vector<std::vector<int>> leg_edge(d.nodes().size());
        for (size_t i = 0; i < d.nodes().size(); ++i) leg_edge[i].assign(d.nodes()[i].gen.legs(), -1);
        for (size_t e = 0; e < edges.size(); ++e)
            for (const Port& p : {edges[e].first, edges[e].second})
                if (p.side == Port::Side::node) leg_edge[p.node][p.index] = static_cast<int>(e);
        cd total = 0.0;
        size_t count = 1;
        for (size_t i = 0; i < free_edges.size(); ++i) count *= dim;
        for (size_t c = 0; c < count; ++c) {
            size_t rest = c;
            for (int e : free_edges) {
                value[e] = lo(dim) + static_cast<int64_t>(rest % dim);
                rest /= dim;
            }
            cd term = 1.0;
            for (size_t i = 0; i < d.nodes().size() && term != cd(0.0); ++i) {
                const auto& g = d.nodes()[i].gen;
                std::vector<int64_t> out_pos, in_pos;
                for (int l = 0; l < g.m; ++l) in_pos.push_back(value[leg_edge[i][l]] - lo(dim));
                for (int l = 0; l < g.n; ++l) out_pos.push_back(value[leg_edge[i][g.m + l]] - lo(dim));
                term *= gens[i].at(out_pos, in_pos);
            }
            total += term;
        }
        return total;
    });
}

inline cd gauss_sum(int64_t r, int64_t s, int64_t n) {
    cd total = 0.0;
    for (int64_t x = 0; x < n; ++x) {
        int64_t e = ((r * x % n) * x + s * x) % n;
        total += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n));
    }
    return total;
}

// Integral of tau^{2ax + bx^2} with the well-tempered measure.
inline cd gamma(int64_t a, int64_t b, int64_t d) {
    cd total = 0.0;
    for (int64_t x = lo(d); x < lo(d) + d; ++x) total += tau(2 * a * x + b * x * x, d);
    return total / std::sqrt(static_cast<double>(d));
}

inline double max_diff(const Tensor& a, const Tensor& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline Tensor random_tensor(int64_t d, int m, int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Tensor t(d, m, n);
    for (auto& v : t.data()) v = cd(g(rng), g(rng));
    return t;
}

}  // namespace oracle
