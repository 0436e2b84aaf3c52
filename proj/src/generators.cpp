#include "generators.hpp"

#include "error.hpp"

namespace zxh {

namespace {
const char* kNames[] = {"green", "red", "hplus", "hminus", "white", "hbox", "gray", "not"};
}

const char* kind_name(Kind k) { return kNames[static_cast<int>(k)]; }

Kind kind_from_name(const std::string& s) {
    for (int i = 0; i < 8; ++i)
        if (s == kNames[i]) return static_cast<Kind>(i);
    fail(Errc::parse, "unknown generator kind '" + s + "'");
}

Generator green(AmplitudeFn a, int m, int n) { return {Kind::green, std::move(a), 0, m, n}; }
Generator red(AmplitudeFn a, int m, int n) { return {Kind::red, std::move(a), 0, m, n}; }
Generator white(int m, int n) { return {Kind::white, amp::One{}, 0, m, n}; }
Generator gray(int m, int n) { return {Kind::gray, amp::One{}, 0, m, n}; }
Generator hbox(AmplitudeFn a, int m, int n) { return {Kind::hbox, std::move(a), 0, m, n}; }
Generator hplus() { return {Kind::hplus, amp::One{}, 0, 1, 1}; }
Generator hminus() { return {Kind::hminus, amp::One{}, 0, 1, 1}; }
Generator notdot(int64_t c) { return {Kind::notdot, amp::One{}, c, 1, 1}; }

void validate(const Context& ctx, const Generator& g) {
    if (g.m < 0 || g.n < 0) fail(Errc::shape, "negative arity");
    if ((g.kind == Kind::hplus || g.kind == Kind::hminus || g.kind == Kind::notdot) && g.legs() != 2)
        fail(Errc::shape, std::string(kind_name(g.kind)) + " must have exactly two legs");
    amp_validate(ctx, g.amp);
    if (g.kind == Kind::hbox) {
        if (g.legs() > 1 && residues_only(g.amp))
            fail(Errc::domain, "residues-only amplitude on an H-box with " + std::to_string(g.legs()) + " legs");
        checked_pow(std::max(-ctx.lo(), ctx.hi()), g.legs());
    }
}

bool same_generator(const Generator& a, const Generator& b) {
    if (a.kind != b.kind || a.m != b.m || a.n != b.n) return false;
    if (a.kind == Kind::notdot) return a.c == b.c;
    if (a.kind == Kind::green || a.kind == Kind::red || a.kind == Kind::hbox) return amp_equal(a.amp, b.amp);
    return true;
}

Kernel::Kernel(const Context& ctx, const Generator& g) : ctx_(ctx), g_(g) {
    validate(ctx, g);
    int k = g.legs();
    switch (g.kind) {
        case Kind::green:
        case Kind::white: scale_ = ctx.nu_pow(2 - k); break;
        case Kind::hplus:
        case Kind::hminus: scale_ = ctx.nu_pow(2); break;
        case Kind::hbox: scale_ = ctx.nu_pow(k); break;
        case Kind::gray: scale_ = ctx.nu_pow(k - 2); break;
        case Kind::notdot: scale_ = 1.0; break;
        case Kind::red: {
            // Entry depends on the residue of the leg sum s only.
            double s = ctx.nu_pow(2 + k);
            red_.resize(ctx.dim());
            for (int64_t sum = 0; sum < ctx.dim(); ++sum) {
                cd acc = 0;
                for (int64_t j = ctx.lo(); j <= ctx.hi(); ++j)
                    acc += amp_eval(ctx, g.amp, j) * ctx.omega_pow(checked_mul(j, sum));
                red_[sum] = s * acc;
            }
            break;
        }
    }
}

cd Kernel::operator()(const int64_t* x) const {
    int k = g_.legs();
    switch (g_.kind) {
        case Kind::green:
        case Kind::white: {
            if (k == 0) return ctx_.integrate([&](int64_t t) { return amp_eval(ctx_, g_.amp, t); });
            for (int i = 1; i < k; ++i)
                if (x[i] != x[0]) return 0.0;
            return scale_ * amp_eval(ctx_, g_.amp, x[0]);
        }
        case Kind::red: {
            int64_t s = 0;
            for (int i = 0; i < k; ++i) s += x[i];
            return red_[mod(s, ctx_.dim())];
        }
        case Kind::hplus: return scale_ * ctx_.omega_pow(x[0] * x[1]);
        case Kind::hminus: return scale_ * ctx_.omega_pow(-x[0] * x[1]);
        case Kind::hbox: {
            int64_t p = 1;
            for (int i = 0; i < k; ++i) p = checked_mul(p, x[i]);
            return scale_ * amp_eval(ctx_, g_.amp, p);
        }
        case Kind::gray: {
            int64_t s = 0;
            for (int i = 0; i < k; ++i) s += x[i];
            return mod(s, ctx_.dim()) == 0 ? cd(scale_, 0.0) : cd(0.0, 0.0);
        }
        case Kind::notdot: return mod(x[1] + g_.c + x[0], ctx_.dim()) == 0 ? 1.0 : 0.0;
    }
    return 0.0;
}

Tensor eval_generator(const Context& ctx, const Generator& g) {
    Kernel kernel(ctx, g);
    Tensor t(ctx.dim(), g.m, g.n);
    int k = g.legs();
    std::vector<int64_t> pos(k, 0), labels(k);
    for (size_t idx = 0; idx < t.size(); ++idx) {
        size_t r = idx;
        for (int i = k - 1; i >= 0; --i) {
            pos[i] = static_cast<int64_t>(r % ctx.dim());
            r /= ctx.dim();
        }
        // Tensor order is outputs then inputs; leg order is inputs then outputs.
        for (int i = 0; i < g.m; ++i) labels[i] = ctx.label(pos[g.n + i]);
        for (int j = 0; j < g.n; ++j) labels[g.m + j] = ctx.label(pos[j]);
        t[idx] = kernel(labels.data());
    }
    return t;
}

Generator adjoint(const Context& ctx, const Generator& g) {
    Generator r = g;
    r.m = g.n;
    r.n = g.m;
    switch (g.kind) {
        case Kind::hplus: r.kind = Kind::hminus; break;
        case Kind::hminus: r.kind = Kind::hplus; break;
        case Kind::red: r.amp = amp_conj_reflect(ctx, g.amp); break;
        case Kind::green:
        case Kind::hbox: r.amp = amp_conj(g.amp); break;
        default: break;
    }
    return r;
}

}  // namespace zxh
