#include "amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "error.hpp"

namespace zxh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool member(const std::vector<int64_t>& s, int64_t t) { return std::find(s.begin(), s.end(), t) != s.end(); }

std::vector<int64_t> normalized(std::vector<int64_t> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace

bool residues_only(const AmplitudeFn& a) {
    return std::holds_alternative<amp::Table>(a) || std::holds_alternative<amp::PhaseVec>(a);
}

std::string amp_name(const AmplitudeFn& a) {
    static const char* names[] = {"one",  "zero",  "phase", "phasevec", "stab",     "char",
                                  "unit", "table", "mbox",  "sign",     "indicator"};
    return names[a.index()];
}

void amp_validate(const Context& ctx, const AmplitudeFn& a) {
    std::visit(overloaded{
                   [&](const amp::PhaseVec& p) {
                       if (static_cast<int64_t>(p.thetas.size()) != ctx.dim())
                           fail(Errc::param, "phasevec needs exactly D entries");
                   },
                   [&](const amp::Table& p) {
                       if (static_cast<int64_t>(p.values.size()) != ctx.dim())
                           fail(Errc::param, "table needs exactly D entries");
                   },
                   [&](const amp::UnitPow& p) {
                       if (p.alpha == cd(0.0, 0.0)) fail(Errc::domain, "unit power needs a nonzero base");
                   },
                   [&](const amp::MBox& p) {
                       if (p.k < 0) fail(Errc::param, "mbox exponent must be non-negative");
                       checked_pow(ctx.hi(), p.k);
                   },
                   [](const auto&) {},
               },
               a);
}

cd amp_eval(const Context& ctx, const AmplitudeFn& a, int64_t t) {
    return std::visit(
        overloaded{
            [](const amp::One&) { return cd(1.0, 0.0); },
            [](const amp::Zero&) { return cd(0.0, 0.0); },
            [&](const amp::Phase& p) { return std::polar(1.0, p.theta * static_cast<double>(t)); },
            [&](const amp::PhaseVec& p) {
                if (!ctx.contains(t)) fail(Errc::domain, "phasevec queried outside [D]");
                return std::polar(1.0, p.thetas.at(ctx.index(t)));
            },
            [&](const amp::Stab& p) {
                int64_t two_d = 2 * ctx.dim();
                int64_t tr = mod(t, two_d);
                __int128 e = 2 * static_cast<__int128>(mod(p.a, two_d)) * tr +
                             static_cast<__int128>(mod(p.b, two_d)) * tr % two_d * tr;
                return ctx.tau_pow(static_cast<int64_t>(e % two_d));
            },
            [&](const amp::Char& p) {
                __int128 e = static_cast<__int128>(mod(p.c, ctx.dim())) * mod(t, ctx.dim());
                return ctx.omega_pow(static_cast<int64_t>(e % ctx.dim()));
            },
            [&](const amp::UnitPow& p) {
                if (p.alpha == cd(0.0, 0.0)) fail(Errc::domain, "unit power needs a nonzero base");
                if (t == 0) return cd(1.0, 0.0);
                return std::exp(static_cast<double>(t) * std::log(p.alpha));
            },
            [&](const amp::Table& p) {
                if (!ctx.contains(t)) fail(Errc::domain, "table queried outside [D]");
                return p.values.at(ctx.index(t));
            },
            [&](const amp::MBox& p) { return t == checked_pow(ctx.hi(), p.k) ? p.alpha : cd(1.0, 0.0); },
            [&](const amp::Sign& p) { return member(p.set, t) ? cd(-1.0, 0.0) : cd(1.0, 0.0); },
            [&](const amp::Indicator& p) { return member(p.set, t) ? cd(1.0, 0.0) : cd(0.0, 0.0); },
        },
        a);
}

AmplitudeFn amp_table(const Context& ctx, const AmplitudeFn& a) {
    amp::Table t;
    for (int64_t x = ctx.lo(); x <= ctx.hi(); ++x) t.values.push_back(amp_eval(ctx, a, x));
    return t;
}

AmplitudeFn amp_multiply(const Context& ctx, const AmplitudeFn& a, const AmplitudeFn& b) {
    if (std::holds_alternative<amp::One>(a)) return b;
    if (std::holds_alternative<amp::One>(b)) return a;
    if (std::holds_alternative<amp::Zero>(a) || std::holds_alternative<amp::Zero>(b)) return amp::Zero{};
    if (a.index() == b.index()) {
        if (auto* p = std::get_if<amp::Phase>(&a)) return amp::Phase{p->theta + std::get<amp::Phase>(b).theta};
        if (auto* p = std::get_if<amp::Stab>(&a)) {
            const auto& q = std::get<amp::Stab>(b);
            return amp::Stab{checked_add(p->a, q.a), checked_add(p->b, q.b)};
        }
        if (auto* p = std::get_if<amp::Char>(&a)) return amp::Char{checked_add(p->c, std::get<amp::Char>(b).c)};
        if (auto* p = std::get_if<amp::UnitPow>(&a)) return amp::UnitPow{p->alpha * std::get<amp::UnitPow>(b).alpha};
        if (auto* p = std::get_if<amp::PhaseVec>(&a)) {
            const auto& q = std::get<amp::PhaseVec>(b);
            if (p->thetas.size() != q.thetas.size()) fail(Errc::param, "phasevec length mismatch");
            amp::PhaseVec r = *p;
            for (size_t i = 0; i < r.thetas.size(); ++i) r.thetas[i] += q.thetas[i];
            return r;
        }
        if (auto* p = std::get_if<amp::Indicator>(&a)) {
            const auto& q = std::get<amp::Indicator>(b);
            amp::Indicator r;
            for (int64_t v : normalized(p->set))
                if (member(q.set, v)) r.set.push_back(v);
            return r;
        }
        if (auto* p = std::get_if<amp::Sign>(&a)) {
            auto s = normalized(p->set), t = normalized(std::get<amp::Sign>(b).set);
            amp::Sign r;
            std::set_symmetric_difference(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(r.set));
            return r;
        }
    }
    if (auto* p = std::get_if<amp::Char>(&a))
        if (auto* q = std::get_if<amp::Stab>(&b)) return amp::Stab{checked_add(q->a, p->c), q->b};
    if (auto* p = std::get_if<amp::Stab>(&a))
        if (auto* q = std::get_if<amp::Char>(&b)) return amp::Stab{checked_add(p->a, q->c), p->b};
    amp::Table t;
    for (int64_t x = ctx.lo(); x <= ctx.hi(); ++x) t.values.push_back(amp_eval(ctx, a, x) * amp_eval(ctx, b, x));
    return t;
}

AmplitudeFn amp_conj(const AmplitudeFn& a) {
    return std::visit(overloaded{
                          [](const amp::Phase& p) -> AmplitudeFn { return amp::Phase{-p.theta}; },
                          [](const amp::PhaseVec& p) -> AmplitudeFn {
                              amp::PhaseVec r = p;
                              for (auto& th : r.thetas) th = -th;
                              return r;
                          },
                          [](const amp::Stab& p) -> AmplitudeFn { return amp::Stab{-p.a, -p.b}; },
                          [](const amp::Char& p) -> AmplitudeFn { return amp::Char{-p.c}; },
                          [](const amp::UnitPow& p) -> AmplitudeFn { return amp::UnitPow{std::conj(p.alpha)}; },
                          [](const amp::Table& p) -> AmplitudeFn {
                              amp::Table r = p;
                              for (auto& v : r.values) v = std::conj(v);
                              return r;
                          },
                          [](const amp::MBox& p) -> AmplitudeFn { return amp::MBox{p.k, std::conj(p.alpha)}; },
                          [](const auto& p) -> AmplitudeFn { return p; },
                      },
                      a);
}

AmplitudeFn amp_conj_reflect(const Context& ctx, const AmplitudeFn& a) {
    if (std::holds_alternative<amp::One>(a) || std::holds_alternative<amp::Zero>(a) ||
        std::holds_alternative<amp::Char>(a))
        return a;
    if (auto* p = std::get_if<amp::Stab>(&a)) return amp::Stab{p->a, -p->b};
    amp::Table t;
    for (int64_t x = ctx.lo(); x <= ctx.hi(); ++x) t.values.push_back(std::conj(amp_eval(ctx, a, ctx.residue(-x))));
    return t;
}

bool amp_equal(const AmplitudeFn& a, const AmplitudeFn& b) {
    if (a.index() != b.index()) return false;
    return std::visit(overloaded{
                          [](const amp::One&) { return true; },
                          [](const amp::Zero&) { return true; },
                          [&](const amp::Phase& p) { return p.theta == std::get<amp::Phase>(b).theta; },
                          [&](const amp::PhaseVec& p) { return p.thetas == std::get<amp::PhaseVec>(b).thetas; },
                          [&](const amp::Stab& p) {
                              const auto& q = std::get<amp::Stab>(b);
                              return p.a == q.a && p.b == q.b;
                          },
                          [&](const amp::Char& p) { return p.c == std::get<amp::Char>(b).c; },
                          [&](const amp::UnitPow& p) { return p.alpha == std::get<amp::UnitPow>(b).alpha; },
                          [&](const amp::Table& p) { return p.values == std::get<amp::Table>(b).values; },
                          [&](const amp::MBox& p) {
                              const auto& q = std::get<amp::MBox>(b);
                              return p.k == q.k && p.alpha == q.alpha;
                          },
                          [&](const amp::Sign& p) {
                              return normalized(p.set) == normalized(std::get<amp::Sign>(b).set);
                          },
                          [&](const amp::Indicator& p) {
                              return normalized(p.set) == normalized(std::get<amp::Indicator>(b).set);
                          },
                      },
                      a);
}

}  // namespace zxh
