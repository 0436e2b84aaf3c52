#include <cmath>
#include <functional>

#include "error.hpp"
#include "rewrite.hpp"

namespace zxh {

namespace {

Port leg(int node, int l) { return Port::leg(node, l); }

struct Build {
    Diagram d;
    explicit Build(const Context& ctx) : d(ctx.dim()) {}
    int add(Generator g, const std::string& id = {}) { return d.add(std::move(g), id); }
    Port in() { return Port::in(d.add_input()); }
    Port out() { return Port::out(d.add_output()); }
    void link(Port a, Port b) { d.connect(a, b); }
    void scalar(cd v) { add(hbox(amp::UnitPow{v}, 0, 0), "scalar" + std::to_string(d.nodes().size())); }
};

using Sides = std::pair<Diagram, Diagram>;

int64_t pick(Rng& rng, int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng); }

void need_range(const Params& p, const std::string& name, int64_t lo, int64_t hi) {
    int64_t v = param_int(p, name);
    if (v < lo || v > hi)
        fail(Errc::param, name + " must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
}

void need_unit(const Context& ctx, const Params& p, const std::string& name) {
    if (gcd64(param_int(p, name), ctx.dim()) != 1) fail(Errc::param, name + " must be a unit modulo D");
}

void need_amp(const Context& ctx, const Params& p, const std::string& name) { amp_validate(ctx, param_amp(p, name)); }

void no_params(const Context&, const Params&) {}
std::optional<Params> no_sample(const Context&, Rng&) { return Params{}; }

// Scalar (D nu^4)^k; vanishes at the well-tempered nu, so it is omitted there.
void dnu4_scalar(Build& b, const Context& ctx, int k) {
    if (!ctx.well_tempered()) b.scalar(std::pow(ctx.dnu4(), k));
}

Diagram chain(const Context& ctx, const std::vector<Generator>& gens) {
    Build b(ctx);
    Port prev = b.in();
    for (size_t i = 0; i < gens.size(); ++i) {
        int v = b.add(gens[i], "v" + std::to_string(i));
        b.link(prev, leg(v, 0));
        prev = leg(v, 1);
    }
    b.link(prev, b.out());
    return std::move(b.d);
}

Diagram lone(const Context& ctx, const Generator& g) {
    Build b(ctx);
    int v = b.add(g, "v");
    for (int i = 0; i < g.m; ++i) b.link(b.in(), leg(v, i));
    for (int j = 0; j < g.n; ++j) b.link(leg(v, g.m + j), b.out());
    return std::move(b.d);
}

// first: k -> m+1, second: l+1 -> n, joined by one wire.
Diagram fused_pair(const Context& ctx, const Generator& first, const Generator& second) {
    Build b(ctx);
    int k = first.m, m = first.n - 1, l = second.m - 1, n = second.n;
    int g1 = b.add(first, "a"), g2 = b.add(second, "b");
    for (int i = 0; i < k; ++i) b.link(b.in(), leg(g1, i));
    for (int i = 0; i < l; ++i) b.link(b.in(), leg(g2, 1 + i));
    for (int j = 0; j < m; ++j) b.link(leg(g1, k + j), b.out());
    for (int j = 0; j < n; ++j) b.link(leg(g2, l + 1 + j), b.out());
    b.link(leg(g1, k + m), leg(g2, 0));
    return std::move(b.d);
}

// Every boundary leg of `center` passes through a copy of `wrap` (1 -> 1).
Diagram wrapped(const Context& ctx, const Generator& center, const Generator& wrap) {
    Build b(ctx);
    int c = b.add(center, "c");
    for (int i = 0; i < center.m; ++i) {
        int w = b.add(wrap, "i" + std::to_string(i));
        b.link(b.in(), leg(w, 0));
        b.link(leg(w, 1), leg(c, i));
    }
    for (int j = 0; j < center.n; ++j) {
        int w = b.add(wrap, "o" + std::to_string(j));
        b.link(leg(c, center.m + j), leg(w, 0));
        b.link(leg(w, 1), b.out());
    }
    return std::move(b.d);
}

// Two 0 -> 1 / 1 -> 0 generators joined into a scalar.
void lollipop(Build& b, const Generator& a, const Generator& z, const std::string& tag) {
    int x = b.add(a, tag + "a"), y = b.add(z, tag + "b");
    b.link(leg(x, 0), leg(y, 0));
}

Diagram empty(const Context& ctx) { return Diagram(ctx.dim()); }

// m inputs each copied n ways by `spider`, feeding n `collector`s with one output each.
Diagram bipartite(const Context& ctx, int m, int n, const Generator& spider, const Generator& collector) {
    Build b(ctx);
    std::vector<int> s(m), c(n);
    for (int h = 0; h < m; ++h) s[h] = b.add(spider, "s" + std::to_string(h));
    for (int j = 0; j < n; ++j) c[j] = b.add(collector, "c" + std::to_string(j));
    for (int h = 0; h < m; ++h) b.link(b.in(), leg(s[h], 0));
    for (int h = 0; h < m; ++h)
        for (int j = 0; j < n; ++j) b.link(leg(s[h], 1 + j), leg(c[j], h));
    for (int j = 0; j < n; ++j) b.link(leg(c[j], m), b.out());
    return std::move(b.d);
}

// m inputs into `collector` (m -> 1), whose output feeds `spreader` (1 -> n).
Diagram funnel(const Context& ctx, int m, int n, const Generator& collector, const Generator& spreader) {
    Build b(ctx);
    int c = b.add(collector, "c"), s = b.add(spreader, "s");
    for (int h = 0; h < m; ++h) b.link(b.in(), leg(c, h));
    b.link(leg(c, m), leg(s, 0));
    for (int j = 0; j < n; ++j) b.link(leg(s, 1 + j), b.out());
    return std::move(b.d);
}

// Input copied `edges` times by `spider` into `collector`, whose last leg is the output.
Diagram parallel_edges(const Context& ctx, int edges, const Generator& spider, const Generator& collector,
                       const std::vector<Generator>& tail = {}) {
    Build b(ctx);
    int s = b.add(spider, "s"), c = b.add(collector, "c");
    b.link(b.in(), leg(s, 0));
    for (int i = 0; i < edges; ++i) b.link(leg(s, 1 + i), leg(c, i));
    Port prev = leg(c, edges);
    for (size_t i = 0; i < tail.size(); ++i) {
        int t = b.add(tail[i], "t" + std::to_string(i));
        b.link(prev, leg(t, 0));
        prev = leg(t, 1);
    }
    b.link(prev, b.out());
    return std::move(b.d);
}

// Input absorbed by `sink` (1 -> 0); output emitted by `source` (0 -> 1).
Diagram split(const Context& ctx, const Generator& sink, const Generator& source) {
    Build b(ctx);
    int x = b.add(sink, "k"), y = b.add(source, "e");
    b.link(b.in(), leg(x, 0));
    b.link(leg(y, 0), b.out());
    return std::move(b.d);
}

// spider 1 -> 2, collector 2 -> 1, with `mid` (1 -> 1) on the second edge.
Diagram antipode_loop(const Context& ctx, const Generator& spider, const Generator& collector, const Generator& mid) {
    Build b(ctx);
    int s = b.add(spider, "s"), c = b.add(collector, "c"), a = b.add(mid, "a");
    b.link(b.in(), leg(s, 0));
    b.link(leg(s, 1), leg(c, 0));
    b.link(leg(s, 2), leg(a, 0));
    b.link(leg(a, 1), leg(c, 1));
    b.link(leg(c, 2), b.out());
    return std::move(b.d);
}

Params arities(Rng& rng, std::initializer_list<std::pair<const char*, std::pair<int64_t, int64_t>>> ranges,
               int64_t max_total) {
    for (;;) {
        Params p;
        int64_t total = 0;
        for (const auto& [name, range] : ranges) {
            int64_t v = pick(rng, range.first, range.second);
            p[name] = v;
            total += v;
        }
        if (total <= max_total) return p;
    }
}

int ai(const Params& p, const char* name) { return static_cast<int>(param_int(p, name)); }

std::vector<RuleSpec> zx_rules() {
    std::vector<RuleSpec> r;
    const auto any = NuRequirement::any;
    const auto wt = NuRequirement::well_tempered;

    r.push_back({"ZX-GI", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{lone(ctx, green(amp::One{}, 1, 1)), wire_diagram(ctx.dim())};
                 }});

    r.push_back({"ZX-RI", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{chain(ctx, {red(amp::One{}, 1, 1), red(amp::One{}, 1, 1)}), wire_diagram(ctx.dim())};
                 }});

    r.push_back({"ZX-HI", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{chain(ctx, {hplus(), hminus()}), wire_diagram(ctx.dim())};
                 }});

    r.push_back({"ZX-GF", {"Theta", "Phi", "k", "m", "l", "n"}, any, 0,
                 [](const Context& ctx, const Params& p) {
                     need_amp(ctx, p, "Theta");
                     need_amp(ctx, p, "Phi");
                     for (auto name : {"k", "m", "l", "n"}) need_range(p, name, 0, 3);
                 },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     Params p = arities(rng, {{"k", {0, 2}}, {"m", {0, 2}}, {"l", {0, 2}}, {"n", {0, 2}}}, 5);
                     p["Theta"] = sample_amplitude(ctx, rng, false);
                     p["Phi"] = sample_amplitude(ctx, rng, false);
                     return p;
                 },
                 [](const Context& ctx, const Params& p) {
                     int k = ai(p, "k"), m = ai(p, "m"), l = ai(p, "l"), n = ai(p, "n");
                     const auto& th = param_amp(p, "Theta");
                     const auto& ph = param_amp(p, "Phi");
                     return Sides{fused_pair(ctx, green(th, k, m + 1), green(ph, l + 1, n)),
                                  lone(ctx, green(amp_multiply(ctx, th, ph), k + l, m + n))};
                 }});

    r.push_back({"ZX-GFP", {"theta", "phi"}, wt, 0, no_params,
                 [](const Context&, Rng& rng) -> std::optional<Params> {
                     return Params{{"theta", sample_angle(rng)}, {"phi", sample_angle(rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     double th = param_real(p, "theta"), ph = param_real(p, "phi");
                     return Sides{chain(ctx, {green(amp::Phase{th}, 1, 1), green(amp::Phase{ph}, 1, 1)}),
                                  lone(ctx, green(amp::Phase{th + ph}, 1, 1))};
                 }});

    r.push_back({"ZX-GFS", {"a1", "b1", "a2", "b2"}, wt, 0, no_params,
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"a1", sample_label(ctx, rng)},
                                   {"b1", sample_label(ctx, rng)},
                                   {"a2", sample_label(ctx, rng)},
                                   {"b2", sample_label(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t a1 = param_int(p, "a1"), b1 = param_int(p, "b1");
                     int64_t a2 = param_int(p, "a2"), b2 = param_int(p, "b2");
                     return Sides{chain(ctx, {green(amp::Stab{a1, b1}, 1, 1), green(amp::Stab{a2, b2}, 1, 1)}),
                                  lone(ctx, green(amp::Stab{a1 + a2, b1 + b2}, 1, 1))};
                 }});

    r.push_back({"ZX-RGC", {"Theta", "m", "n"}, wt, 0,
                 [](const Context& ctx, const Params& p) {
                     need_amp(ctx, p, "Theta");
                     need_range(p, "m", 0, 3);
                     need_range(p, "n", 0, 3);
                 },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     Params p = arities(rng, {{"m", {0, 2}}, {"n", {0, 2}}}, 3);
                     p["Theta"] = sample_amplitude(ctx, rng, false);
                     return p;
                 },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     const auto& th = param_amp(p, "Theta");
                     return Sides{wrapped(ctx, green(th, m, n), hplus()), lone(ctx, red(th, m, n))};
                 }});

    r.push_back({"ZX-RGB", {"m", "n"}, wt, 0,
                 [](const Context&, const Params& p) {
                     need_range(p, "m", 1, 3);
                     need_range(p, "n", 1, 3);
                 },
                 [](const Context&, Rng& rng) -> std::optional<Params> {
                     return arities(rng, {{"m", {1, 2}}, {"n", {1, 2}}}, 4);
                 },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     return Sides{bipartite(ctx, m, n, green(amp::One{}, 1, n), red(amp::One{}, m, 1)),
                                  funnel(ctx, m, n, red(amp::One{}, m, 1), green(amp::One{}, 1, n))};
                 }});

    r.push_back({"ZX-CPY", {"a", "n"}, any, 0, [](const Context&, const Params& p) { need_range(p, "n", 0, 4); },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"a", sample_label(ctx, rng)}, {"n", pick(rng, 1, 3)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t a = param_int(p, "a");
                     int n = ai(p, "n");
                     Build l(ctx);
                     int src = l.add(red(amp::Stab{a, 0}, 0, 1), "r"), g = l.add(green(amp::One{}, 1, n), "g");
                     l.link(leg(src, 0), leg(g, 0));
                     for (int j = 0; j < n; ++j) l.link(leg(g, 1 + j), l.out());
                     Build rr(ctx);
                     for (int j = 0; j < n; ++j) {
                         int v = rr.add(red(amp::Stab{a, 0}, 0, 1), "r" + std::to_string(j));
                         rr.link(leg(v, 0), rr.out());
                     }
                     dnu4_scalar(rr, ctx, 1 - n);
                     return Sides{std::move(l.d), std::move(rr.d)};
                 }});

    r.push_back({"ZX-NS", {"theta", "m", "n"}, wt, 0,
                 [](const Context&, const Params& p) {
                     need_range(p, "m", 0, 3);
                     need_range(p, "n", 0, 3);
                 },
                 [](const Context&, Rng& rng) -> std::optional<Params> {
                     Params p = arities(rng, {{"m", {0, 2}}, {"n", {0, 2}}}, 3);
                     p["theta"] = sample_angle(rng);
                     return p;
                 },
                 [](const Context& ctx, const Params& p) {
                     double th = param_real(p, "theta");
                     int m = ai(p, "m"), n = ai(p, "n");
                     amp::Stab neg{-ctx.sigma(), 0};
                     Diagram lhs = wrapped(ctx, green(amp::Phase{th}, m, n), red(neg, 1, 1));
                     Build b(ctx);
                     b.d = lone(ctx, green(amp::Phase{-th}, m, n));
                     lollipop(b, green(amp::Phase{th}, 0, 1), red(neg, 1, 0), "p");
                     return Sides{std::move(lhs), std::move(b.d)};
                 }});

    r.push_back({"ZX-RS", {"a", "b", "c"}, wt, 0, no_params,
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{
                         {"a", sample_label(ctx, rng)}, {"b", sample_label(ctx, rng)}, {"c", sample_label(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t a = param_int(p, "a"), bb = param_int(p, "b"), c = param_int(p, "c");
                     Diagram lhs = chain(
                         ctx, {green(amp::Stab{c, 0}, 1, 1), red(amp::Stab{a, bb}, 1, 1), green(amp::Stab{c, 0}, 1, 1)});
                     Build b(ctx);
                     b.d = lone(ctx, red(amp::Stab{a - checked_mul(bb, c), bb}, 1, 1));
                     lollipop(b, green(amp::Stab{a, bb}, 0, 1), red(amp::Stab{c, 0}, 1, 0), "p");
                     return Sides{std::move(lhs), std::move(b.d)};
                 }});

    r.push_back({"ZX-Z", {"n"}, wt, 0, [](const Context&, const Params& p) { need_range(p, "n", 0, 4); },
                 [](const Context&, Rng& rng) -> std::optional<Params> { return Params{{"n", pick(rng, 0, 3)}}; },
                 [](const Context& ctx, const Params& p) {
                     int n = ai(p, "n");
                     return Sides{lone(ctx, green(amp::Zero{}, 0, n)), lone(ctx, red(amp::Zero{}, 0, n))};
                 }});

    r.push_back({"ZX-ZCP", {"a"}, wt, 0,
                 [](const Context& ctx, const Params& p) {
                     if (mod(param_int(p, "a"), ctx.dim()) == 0) fail(Errc::param, "a must not be a multiple of D");
                 },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     int64_t a;
                     do a = sample_label(ctx, rng);
                     while (mod(a, ctx.dim()) == 0);
                     return Params{{"a", a}};
                 },
                 [](const Context& ctx, const Params& p) {
                     return Sides{lone(ctx, green(amp::Stab{param_int(p, "a"), 0}, 0, 0)),
                                  lone(ctx, green(amp::Zero{}, 0, 0))};
                 }});

    r.push_back({"ZX-ZSP", {"u", "t", "t'"}, wt, 0,
                 [](const Context& ctx, const Params& p) {
                     need_unit(ctx, p, "u");
                     int64_t t = param_int(p, "t"), tp = param_int(p, "t'");
                     if (t <= 1 || t >= ctx.dim() || ctx.dim() % t != 0)
                         fail(Errc::param, "t must be a divisor of D with 1 < t < D");
                     if (tp <= 1 || tp >= t || t % tp != 0)
                         fail(Errc::param, "t' must be a divisor of t with 1 < t' < t");
                 },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     std::vector<std::pair<int64_t, int64_t>> pairs;
                     for (int64_t t = 2; t < ctx.dim(); ++t)
                         if (ctx.dim() % t == 0)
                             for (int64_t tp = 2; tp < t; ++tp)
                                 if (t % tp == 0) pairs.emplace_back(t, tp);
                     if (pairs.empty()) return std::nullopt;
                     auto [t, tp] = pairs[pick(rng, 0, static_cast<int64_t>(pairs.size()) - 1)];
                     return Params{{"u", sample_unit(ctx, rng)}, {"t", t}, {"t'", tp}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t u = param_int(p, "u"), t = param_int(p, "t"), tp = param_int(p, "t'");
                     return Sides{lone(ctx, green(amp::Stab{checked_mul(u, tp), t}, 0, 0)),
                                  lone(ctx, green(amp::Zero{}, 0, 0))};
                 }});

    r.push_back({"ZX-MH", {"u"}, wt, 0, [](const Context& ctx, const Params& p) { need_unit(ctx, p, "u"); },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"u", sample_unit(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t u = param_int(p, "u");
                     int e = static_cast<int>(u);
                     Diagram lhs = parallel_edges(ctx, e, green(amp::One{}, 1, e), red(amp::One{}, e, 1),
                                                  {red(amp::One{}, 1, 1)});
                     int64_t ui = label_inverse(ctx, u);
                     Build b(ctx);
                     b.d = chain(ctx, {green(amp::Stab{0, u}, 1, 1), red(amp::Stab{0, ui}, 1, 1),
                                       green(amp::Stab{0, u}, 1, 1), hplus()});
                     b.add(green(amp::Stab{0, -u}, 0, 0), "gamma");
                     return Sides{std::move(lhs), std::move(b.d)};
                 }});

    r.push_back({"ZX-ME", {"a", "b", "u"}, wt, 0, [](const Context& ctx, const Params& p) { need_unit(ctx, p, "u"); },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{
                         {"a", sample_label(ctx, rng)}, {"b", sample_label(ctx, rng)}, {"u", sample_unit(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t a = param_int(p, "a"), bb = param_int(p, "b"), u = param_int(p, "u");
                     int e = static_cast<int>(u);
                     Build l(ctx);
                     int s = l.add(green(amp::One{}, 1, e), "s"), c = l.add(red(amp::One{}, e, 1), "c");
                     int t = l.add(red(amp::Stab{a, bb}, 1, 0), "t");
                     l.link(l.in(), leg(s, 0));
                     for (int i = 0; i < e; ++i) l.link(leg(s, 1 + i), leg(c, i));
                     l.link(leg(c, e), leg(t, 0));
                     int64_t ui = label_inverse(ctx, u);
                     Diagram rhs = lone(ctx, red(amp::Stab{-checked_mul(a, ui), checked_mul(bb, checked_mul(ui, ui))}, 1, 0));
                     return Sides{std::move(l.d), std::move(rhs)};
                 }});

    r.push_back({"ZX-MEH", {}, wt, 7, no_params, no_sample, [](const Context& ctx, const Params&) {
                     int d = static_cast<int>(ctx.dim());
                     return Sides{parallel_edges(ctx, d, green(amp::One{}, 1, d), red(amp::One{}, d, 1)),
                                  split(ctx, green(amp::One{}, 1, 0), red(amp::One{}, 0, 1))};
                 }});

    r.push_back({"ZX-A", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{antipode_loop(ctx, green(amp::One{}, 1, 2), red(amp::One{}, 2, 1), red(amp::One{}, 1, 1)),
                                  split(ctx, green(amp::One{}, 1, 0), red(amp::One{}, 0, 1))};
                 }});

    r.push_back({"ZX-PU", {"theta"}, any, 0, no_params,
                 [](const Context&, Rng& rng) -> std::optional<Params> { return Params{{"theta", sample_angle(rng)}}; },
                 [](const Context& ctx, const Params& p) {
                     Build l(ctx);
                     lollipop(l, green(amp::Phase{param_real(p, "theta")}, 0, 1), red(amp::One{}, 1, 0), "p");
                     Build rr(ctx);
                     dnu4_scalar(rr, ctx, 1);
                     return Sides{std::move(l.d), std::move(rr.d)};
                 }});

    r.push_back({"ZX-SU", {"a", "b"}, wt, 0, no_params,
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"a", sample_label(ctx, rng)}, {"b", sample_label(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     Build l(ctx);
                     lollipop(l, green(amp::Stab{param_int(p, "a"), param_int(p, "b")}, 0, 1), red(amp::One{}, 1, 0), "p");
                     return Sides{std::move(l.d), empty(ctx)};
                 }});

    r.push_back({"ZX-GU", {"a", "u"}, wt, 0, [](const Context& ctx, const Params& p) { need_unit(ctx, p, "u"); },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"a", sample_label(ctx, rng)}, {"u", sample_unit(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t a = param_int(p, "a"), u = param_int(p, "u");
                     Build l(ctx);
                     l.add(green(amp::Stab{-a, -u}, 0, 0), "neg");
                     l.add(green(amp::Stab{a, u}, 0, 0), "pos");
                     return Sides{std::move(l.d), empty(ctx)};
                 }});
    return r;
}

std::optional<Params> sample_mn(Rng& rng, int64_t max_total) {
    return arities(rng, {{"m", {0, 2}}, {"n", {0, 2}}}, max_total);
}

void mn_domain(const Context&, const Params& p) {
    need_range(p, "m", 0, 4);
    need_range(p, "n", 0, 4);
}

std::vector<RuleSpec> zxh_rules() {
    std::vector<RuleSpec> r;
    const auto wt = NuRequirement::well_tempered;
    auto theta_sample = [](const Context& ctx, Rng& rng) -> std::optional<Params> {
        return Params{{"Theta", sample_amplitude(ctx, rng, false)}};
    };
    auto theta_domain = [](const Context& ctx, const Params& p) { need_amp(ctx, p, "Theta"); };

    r.push_back({"ZXH-GW", {"m", "n"}, wt, 0, mn_domain,
                 [](const Context&, Rng& rng) { return sample_mn(rng, 4); },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     return Sides{lone(ctx, green(amp::One{}, m, n)), lone(ctx, white(m, n))};
                 }});

    r.push_back({"ZXH-RG", {"m", "n"}, wt, 0, mn_domain,
                 [](const Context&, Rng& rng) { return sample_mn(rng, 4); },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     return Sides{lone(ctx, red(amp::One{}, m, n)), lone(ctx, gray(m, n))};
                 }});

    r.push_back({"ZXH-GP", {"theta", "m", "n"}, wt, 0, mn_domain,
                 [](const Context&, Rng& rng) -> std::optional<Params> {
                     Params p = *sample_mn(rng, 3);
                     p["theta"] = sample_angle(rng);
                     return p;
                 },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     double th = param_real(p, "theta");
                     Build b(ctx);
                     int w = b.add(white(m, n + 1), "w"), h = b.add(hbox(amp::Phase{th}, 1, 0), "h");
                     for (int i = 0; i < m; ++i) b.link(b.in(), leg(w, i));
                     for (int j = 0; j < n; ++j) b.link(leg(w, m + j), b.out());
                     b.link(leg(w, m + n), leg(h, 0));
                     return Sides{lone(ctx, green(amp::Phase{th}, m, n)), std::move(b.d)};
                 }});

    r.push_back({"ZXH-WH", {"Theta"}, wt, 0, theta_domain, theta_sample, [](const Context& ctx, const Params& p) {
                     const auto& th = param_amp(p, "Theta");
                     return Sides{lone(ctx, green(th, 0, 1)), lone(ctx, hbox(th, 0, 1))};
                 }});

    r.push_back({"ZXH-RN", {"c"}, wt, 0, no_params,
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> { return Params{{"c", sample_label(ctx, rng)}}; },
                 [](const Context& ctx, const Params& p) {
                     int64_t c = param_int(p, "c");
                     return Sides{lone(ctx, red(amp::Stab{c, 0}, 1, 1)), lone(ctx, notdot(c))};
                 }});

    r.push_back({"ZXH-RA", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{lone(ctx, red(amp::One{}, 1, 1)), lone(ctx, gray(1, 1))};
                 }});

    r.push_back({"ZXH-HP", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{lone(ctx, hplus()), lone(ctx, hbox(amp::Char{1}, 1, 1))};
                 }});

    r.push_back({"ZXH-HM", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{lone(ctx, hminus()), lone(ctx, hbox(amp::Char{-1}, 1, 1))};
                 }});

    r.push_back({"ZXH-GH0", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     Build b(ctx);
                     lollipop(b, white(0, 1), hbox(amp::One{}, 1, 0), "p");
                     return Sides{lone(ctx, green(amp::One{}, 0, 0)), std::move(b.d)};
                 }});

    r.push_back({"ZXH-GH", {"Theta"}, wt, 0, theta_domain, theta_sample, [](const Context& ctx, const Params& p) {
                     const auto& th = param_amp(p, "Theta");
                     Build b(ctx);
                     lollipop(b, white(0, 1), hbox(th, 1, 0), "p");
                     return Sides{lone(ctx, green(th, 0, 0)), std::move(b.d)};
                 }});

    r.push_back({"ZXH-S0", {"Theta"}, wt, 0, theta_domain, theta_sample, [](const Context& ctx, const Params& p) {
                     const auto& th = param_amp(p, "Theta");
                     Build l(ctx), rr(ctx);
                     lollipop(l, green(th, 0, 1), red(amp::One{}, 1, 0), "p");
                     lollipop(rr, hbox(th, 0, 1), gray(1, 0), "p");
                     return Sides{std::move(l.d), std::move(rr.d)};
                 }});

    r.push_back({"ZXH-S", {"Theta", "c"}, wt, 0, theta_domain,
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"Theta", sample_amplitude(ctx, rng, false)}, {"c", sample_label(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     const auto& th = param_amp(p, "Theta");
                     int64_t c = param_int(p, "c");
                     Build l(ctx), rr(ctx);
                     lollipop(l, green(th, 0, 1), red(amp::Stab{c, 0}, 1, 0), "p");
                     int h = rr.add(hbox(th, 0, 1), "h"), nd = rr.add(notdot(c), "not"), g = rr.add(gray(1, 0), "g");
                     rr.link(leg(h, 0), leg(nd, 0));
                     rr.link(leg(nd, 1), leg(g, 0));
                     return Sides{std::move(l.d), std::move(rr.d)};
                 }});
    return r;
}


Generator hchar(int64_t c, int m, int n) { return hbox(amp::Char{c}, m, n); }

std::optional<Params> sample_u(const Context& ctx, Rng& rng) { return Params{{"u", sample_unit(ctx, rng)}}; }

void u_domain(const Context& ctx, const Params& p) { need_unit(ctx, p, "u"); }

std::optional<Params> sample_umn(const Context& ctx, Rng& rng, int64_t lo, int64_t max_total) {
    Params p = arities(rng, {{"m", {lo, 2}}, {"n", {lo, 2}}}, max_total);
    p["u"] = sample_unit(ctx, rng);
    return p;
}

void umn_domain(const Context& ctx, const Params& p) {
    need_unit(ctx, p, "u");
    mn_domain(ctx, p);
}

void arity4_domain(const Context&, const Params& p) {
    for (auto name : {"k", "m", "l", "n"}) need_range(p, name, 0, 3);
}

Params sample_arity4(Rng& rng) { return arities(rng, {{"k", {0, 2}}, {"m", {0, 2}}, {"l", {0, 2}}, {"n", {0, 2}}}, 5); }

// Inputs a_j (j = 0..D-1) each enter an H(1) box splitting into y_j and w_j; w_j passes not(j) into a white
// dot carrying the output. `y_side` decides what terminates each y_j.
Diagram char_fan(const Context& ctx, const std::function<void(Build&, const std::vector<Port>&)>& y_side) {
    Build b(ctx);
    int d = static_cast<int>(ctx.dim());
    int w = b.add(white(d, 1), "w");
    std::vector<Port> ys;
    for (int j = 0; j < d; ++j) {
        std::string t = std::to_string(j);
        int h = b.add(hchar(1, 1, 2), "h" + t), nd = b.add(notdot(j), "not" + t);
        b.link(b.in(), leg(h, 0));
        b.link(leg(h, 2), leg(nd, 0));
        b.link(leg(nd, 1), leg(w, j));
        ys.push_back(leg(h, 1));
    }
    b.link(leg(w, d), b.out());
    y_side(b, ys);
    return std::move(b.d);
}

std::vector<RuleSpec> zh_rules() {
    std::vector<RuleSpec> r;
    const auto any = NuRequirement::any;
    const auto wt = NuRequirement::well_tempered;

    r.push_back({"ZH-WI", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{lone(ctx, white(1, 1)), wire_diagram(ctx.dim())};
                 }});

    r.push_back({"ZH-WQS", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     Build b(ctx);
                     b.d = parallel_edges(ctx, 2, white(1, 2), white(2, 1));
                     b.scalar(1.0 / std::sqrt(static_cast<double>(ctx.dim())));
                     return Sides{std::move(b.d), wire_diagram(ctx.dim())};
                 }});

    r.push_back({"ZH-AI", {}, any, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{chain(ctx, {gray(1, 1), gray(1, 1)}), wire_diagram(ctx.dim())};
                 }});

    r.push_back({"ZH-HI", {"u"}, wt, 0, u_domain, sample_u, [](const Context& ctx, const Params& p) {
                     int64_t u = param_int(p, "u");
                     return Sides{chain(ctx, {hchar(u, 1, 1), hchar(-u, 1, 1)}), wire_diagram(ctx.dim())};
                 }});

    r.push_back({"ZH-WF", {"k", "m", "l", "n"}, wt, 0, arity4_domain,
                 [](const Context&, Rng& rng) -> std::optional<Params> { return sample_arity4(rng); },
                 [](const Context& ctx, const Params& p) {
                     int k = ai(p, "k"), m = ai(p, "m"), l = ai(p, "l"), n = ai(p, "n");
                     return Sides{fused_pair(ctx, white(k, m + 1), white(l + 1, n)), lone(ctx, white(k + l, m + n))};
                 }});

    r.push_back({"ZH-GWC", {"u", "m", "n"}, wt, 0, umn_domain,
                 [](const Context& ctx, Rng& rng) { return sample_umn(ctx, rng, 0, 3); },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     return Sides{wrapped(ctx, gray(m, n), hchar(param_int(p, "u"), 1, 1)), lone(ctx, white(m, n))};
                 }});

    r.push_back({"ZH-WNS", {"c", "m", "n"}, any, 0, mn_domain,
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     Params p = *sample_mn(rng, 3);
                     p["c"] = sample_label(ctx, rng);
                     return p;
                 },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     return Sides{wrapped(ctx, white(m, n), notdot(param_int(p, "c"))), lone(ctx, white(m, n))};
                 }});

    r.push_back({"ZH-GF", {"k", "m", "l", "n"}, wt, 0, arity4_domain,
                 [](const Context&, Rng& rng) -> std::optional<Params> { return sample_arity4(rng); },
                 [](const Context& ctx, const Params& p) {
                     int k = ai(p, "k"), m = ai(p, "m"), l = ai(p, "l"), n = ai(p, "n");
                     Build b(ctx);
                     int g1 = b.add(gray(k, m + 1), "a"), mid = b.add(gray(1, 1), "mid"), g2 = b.add(gray(l + 1, n), "b");
                     for (int i = 0; i < k; ++i) b.link(b.in(), leg(g1, i));
                     for (int i = 0; i < l; ++i) b.link(b.in(), leg(g2, 1 + i));
                     for (int j = 0; j < m; ++j) b.link(leg(g1, k + j), b.out());
                     for (int j = 0; j < n; ++j) b.link(leg(g2, l + 1 + j), b.out());
                     b.link(leg(g1, k + m), leg(mid, 0));
                     b.link(leg(mid, 1), leg(g2, 0));
                     return Sides{std::move(b.d), lone(ctx, gray(k + l, m + n))};
                 }});

    r.push_back({"ZH-GL", {"m", "n"}, wt, 0, mn_domain,
                 [](const Context&, Rng& rng) { return sample_mn(rng, 4); },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     Build b(ctx);
                     int g = b.add(gray(m, n + 1), "g"), t = b.add(gray(1, 0), "t");
                     for (int i = 0; i < m; ++i) b.link(b.in(), leg(g, i));
                     for (int j = 0; j < n; ++j) b.link(leg(g, m + j), b.out());
                     b.link(leg(g, m + n), leg(t, 0));
                     return Sides{std::move(b.d), lone(ctx, gray(m, n))};
                 }});

    r.push_back({"ZH-WGC", {"u", "m", "n"}, wt, 0, umn_domain,
                 [](const Context& ctx, Rng& rng) { return sample_umn(ctx, rng, 0, 3); },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     return Sides{wrapped(ctx, white(m, n), hchar(param_int(p, "u"), 1, 1)), lone(ctx, gray(m, n))};
                 }});

    r.push_back({"ZH-MEH", {}, wt, 7, no_params, no_sample, [](const Context& ctx, const Params&) {
                     int d = static_cast<int>(ctx.dim());
                     return Sides{parallel_edges(ctx, d, white(1, d), gray(d, 1)), split(ctx, white(1, 0), gray(0, 1))};
                 }});

    r.push_back({"ZH-A", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{antipode_loop(ctx, white(1, 2), gray(2, 1), gray(1, 1)),
                                  split(ctx, white(1, 0), gray(0, 1))};
                 }});

    r.push_back({"ZH-WGB", {"m", "n"}, any, 0,
                 [](const Context&, const Params& p) {
                     need_range(p, "m", 1, 3);
                     need_range(p, "n", 1, 3);
                 },
                 [](const Context&, Rng& rng) -> std::optional<Params> {
                     return arities(rng, {{"m", {1, 2}}, {"n", {1, 2}}}, 4);
                 },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     return Sides{bipartite(ctx, m, n, white(1, n), gray(m, 1)), funnel(ctx, m, n, gray(m, 1), white(1, n))};
                 }});

    r.push_back({"ZH-HM", {"A", "B"}, any, 0,
                 [](const Context& ctx, const Params& p) {
                     need_amp(ctx, p, "A");
                     need_amp(ctx, p, "B");
                 },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"A", sample_amplitude(ctx, rng, true)}, {"B", sample_amplitude(ctx, rng, true)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     const auto& a = param_amp(p, "A");
                     const auto& bb = param_amp(p, "B");
                     Build b(ctx);
                     int ha = b.add(hbox(a, 0, 1), "a"), hb = b.add(hbox(bb, 0, 1), "b"), w = b.add(white(2, 1), "w");
                     b.link(leg(ha, 0), leg(w, 0));
                     b.link(leg(hb, 0), leg(w, 1));
                     b.link(leg(w, 2), b.out());
                     return Sides{std::move(b.d), lone(ctx, hbox(amp_multiply(ctx, a, bb), 0, 1))};
                 }});

    r.push_back({"ZH-HU", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{lone(ctx, hbox(amp::One{}, 0, 1)), lone(ctx, white(0, 1))};
                 }});

    r.push_back({"ZH-EC", {"alpha", "m"}, wt, 0,
                 [](const Context&, const Params& p) {
                     need_range(p, "m", 0, 3);
                     if (std::abs(param_complex(p, "alpha")) == 0.0) fail(Errc::param, "alpha must be nonzero");
                 },
                 [](const Context&, Rng& rng) -> std::optional<Params> {
                     return Params{{"alpha", sample_alpha(rng)}, {"m", pick(rng, 1, 2)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     cd alpha = param_complex(p, "alpha");
                     int m = ai(p, "m");
                     Build l(ctx);
                     int h = l.add(hbox(amp::UnitPow{alpha}, m, 1), "h"), nd = l.add(notdot(-ctx.sigma()), "not");
                     for (int i = 0; i < m; ++i) l.link(l.in(), leg(h, i));
                     l.link(leg(h, m), leg(nd, 0));
                     l.link(leg(nd, 1), l.out());
                     Build rr(ctx);
                     cd shifted = ctx.sigma() == 0 ? cd(1.0) : alpha;
                     int h1 = rr.add(hbox(amp::UnitPow{1.0 / alpha}, m, 1), "inv");
                     int h2 = rr.add(hbox(amp::UnitPow{shifted}, m, 0), "shift");
                     for (int i = 0; i < m; ++i) {
                         int w = rr.add(white(1, 2), "w" + std::to_string(i));
                         rr.link(rr.in(), leg(w, 0));
                         rr.link(leg(w, 1), leg(h1, i));
                         rr.link(leg(w, 2), leg(h2, i));
                     }
                     rr.link(leg(h1, m), rr.out());
                     return Sides{std::move(l.d), std::move(rr.d)};
                 }});

    r.push_back({"ZH-MF", {"c1", "c2", "u", "k", "m", "l", "n"}, wt, 0,
                 [](const Context& ctx, const Params& p) {
                     need_unit(ctx, p, "u");
                     arity4_domain(ctx, p);
                 },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     Params p = arities(rng, {{"k", {0, 2}}, {"m", {0, 2}}, {"l", {0, 2}}, {"n", {0, 2}}}, 4);
                     p["c1"] = sample_label(ctx, rng);
                     p["c2"] = sample_label(ctx, rng);
                     p["u"] = sample_unit(ctx, rng);
                     return p;
                 },
                 [](const Context& ctx, const Params& p) {
                     int k = ai(p, "k"), m = ai(p, "m"), l = ai(p, "l"), n = ai(p, "n");
                     int64_t c1 = param_int(p, "c1"), c2 = param_int(p, "c2"), u = param_int(p, "u");
                     Build b(ctx);
                     int h1 = b.add(hchar(c1, k, m + 1), "a"), mid = b.add(hchar(-u, 1, 1), "mid");
                     int h2 = b.add(hchar(c2, l + 1, n), "b");
                     for (int i = 0; i < k; ++i) b.link(b.in(), leg(h1, i));
                     for (int i = 0; i < l; ++i) b.link(b.in(), leg(h2, 1 + i));
                     for (int j = 0; j < m; ++j) b.link(leg(h1, k + j), b.out());
                     for (int j = 0; j < n; ++j) b.link(leg(h2, l + 1 + j), b.out());
                     b.link(leg(h1, k + m), leg(mid, 0));
                     b.link(leg(mid, 1), leg(h2, 0));
                     int64_t ui = inverse_mod(mod(u, ctx.dim()), ctx.dim());
                     int64_t c = mod(checked_mul(mod(checked_mul(ui, mod(c1, ctx.dim())), ctx.dim()), mod(c2, ctx.dim())),
                                     ctx.dim());
                     return Sides{std::move(b.d), lone(ctx, hchar(c, k + l, m + n))};
                 }});

    r.push_back({"ZH-MCA", {"c1", "c2", "m"}, wt, 0, [](const Context&, const Params& p) { need_range(p, "m", 1, 3); },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"c1", sample_label(ctx, rng)}, {"c2", sample_label(ctx, rng)}, {"m", pick(rng, 1, 3)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t c1 = param_int(p, "c1"), c2 = param_int(p, "c2");
                     int m = ai(p, "m");
                     Build b(ctx);
                     int h1 = b.add(hchar(c1, m, 0), "a"), h2 = b.add(hchar(c2, m, 0), "b");
                     for (int i = 0; i < m; ++i) {
                         int w = b.add(white(0, 3), "w" + std::to_string(i));
                         b.link(leg(w, 0), b.out());
                         b.link(leg(w, 1), leg(h1, i));
                         b.link(leg(w, 2), leg(h2, i));
                     }
                     return Sides{std::move(b.d), lone(ctx, hchar(c1 + c2, 0, m))};
                 }});

    r.push_back({"ZH-UM", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     Build l(ctx);
                     for (int i = 0; i < 2; ++i) {
                         std::string t = std::to_string(i);
                         int h = l.add(hchar(1, 1, 2), "h" + t), w = l.add(white(0, 1), "w" + t);
                         int nb = l.add(hchar(-1, 1, 0), "n" + t);
                         l.link(l.in(), leg(h, 0));
                         l.link(leg(h, 1), leg(w, 0));
                         l.link(leg(h, 2), leg(nb, 0));
                     }
                     Build rr(ctx);
                     int h = rr.add(hchar(1, 2, 2), "h"), w = rr.add(white(0, 1), "w"), nb = rr.add(hchar(-1, 1, 0), "n");
                     rr.link(rr.in(), leg(h, 0));
                     rr.link(rr.in(), leg(h, 1));
                     rr.link(leg(h, 2), leg(w, 0));
                     rr.link(leg(h, 3), leg(nb, 0));
                     return Sides{std::move(l.d), std::move(rr.d)};
                 }});

    r.push_back({"ZH-O", {}, wt, 7, no_params, no_sample, [](const Context& ctx, const Params&) {
                     int d = static_cast<int>(ctx.dim());
                     Diagram lhs = char_fan(ctx, [d](Build& b, const std::vector<Port>& ys) {
                         int g = b.add(gray(d, 0), "g");
                         for (int j = 0; j < d; ++j) b.link(ys[j], leg(g, j));
                         b.scalar(std::sqrt(static_cast<double>(d)));
                     });
                     Diagram rhs = char_fan(ctx, [](Build& b, const std::vector<Port>& ys) {
                         for (size_t j = 0; j < ys.size(); ++j) {
                             int w = b.add(white(0, 1), "e" + std::to_string(j));
                             b.link(ys[j], leg(w, 0));
                         }
                     });
                     return Sides{std::move(lhs), std::move(rhs)};
                 }});

    r.push_back({"ZH-HWB", {"u", "m", "n"}, wt, 0,
                 [](const Context& ctx, const Params& p) {
                     need_unit(ctx, p, "u");
                     need_range(p, "m", 1, 3);
                     need_range(p, "n", 1, 3);
                 },
                 [](const Context& ctx, Rng& rng) { return sample_umn(ctx, rng, 1, 4); },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     int64_t u = param_int(p, "u");
                     Build l(ctx);
                     std::vector<int> ws(m);
                     for (int h = 0; h < m; ++h) {
                         ws[h] = l.add(white(1, n), "w" + std::to_string(h));
                         l.link(l.in(), leg(ws[h], 0));
                     }
                     for (int j = 0; j < n; ++j) {
                         std::string t = std::to_string(j);
                         int hj = l.add(hchar(u, m, 1), "h" + t), nj = l.add(hchar(-u, 1, 1), "n" + t);
                         for (int h = 0; h < m; ++h) l.link(leg(ws[h], 1 + j), leg(hj, h));
                         l.link(leg(hj, m), leg(nj, 0));
                         l.link(leg(nj, 1), l.out());
                     }
                     Build rr(ctx);
                     int h = rr.add(hchar(u, m, 1), "h"), nb = rr.add(hchar(-u, 1, 1), "n"), w = rr.add(white(1, n), "w");
                     for (int i = 0; i < m; ++i) rr.link(rr.in(), leg(h, i));
                     rr.link(leg(h, m), leg(nb, 0));
                     rr.link(leg(nb, 1), leg(w, 0));
                     for (int j = 0; j < n; ++j) rr.link(leg(w, 1 + j), rr.out());
                     return Sides{std::move(l.d), std::move(rr.d)};
                 }});

    r.push_back({"ZH-HMB", {"u", "m", "n"}, wt, 0,
                 [](const Context& ctx, const Params& p) {
                     need_unit(ctx, p, "u");
                     need_range(p, "m", 1, 3);
                     need_range(p, "n", 1, 3);
                 },
                 [](const Context& ctx, Rng& rng) { return sample_umn(ctx, rng, 1, 4); },
                 [](const Context& ctx, const Params& p) {
                     int m = ai(p, "m"), n = ai(p, "n");
                     int64_t u = param_int(p, "u");
                     return Sides{bipartite(ctx, m, n, white(1, n), hchar(u, m, 1)),
                                  funnel(ctx, m, n, hchar(-u, m, 1), gray(1, n))};
                 }});

    r.push_back({"ZH-ME", {"k", "u"}, wt, 0,
                 [](const Context& ctx, const Params& p) {
                     need_unit(ctx, p, "u");
                     need_range(p, "k", 1, 8);
                 },
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"k", pick(rng, 1, std::min<int64_t>(ctx.dim() + 1, 5))}, {"u", sample_unit(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int k = ai(p, "k");
                     int64_t u = param_int(p, "u");
                     Build l(ctx);
                     l.d = parallel_edges(ctx, k, white(1, k), gray(k, 1), {gray(1, 1)});
                     dnu4_scalar(l, ctx, 1);
                     return Sides{std::move(l.d), chain(ctx, {hchar(checked_mul(u, k), 1, 1), hchar(-u, 1, 1)})};
                 }});

    r.push_back({"ZH-ND", {"c1", "c2"}, wt, 0, no_params,
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"c1", sample_label(ctx, rng)}, {"c2", sample_label(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t c1 = param_int(p, "c1"), c2 = param_int(p, "c2");
                     return Sides{chain(ctx, {notdot(c1), notdot(c2)}), chain(ctx, {gray(1, 1), notdot(c2 - c1)})};
                 }});

    r.push_back({"ZH-NH", {"u", "c"}, wt, 0, u_domain,
                 [](const Context& ctx, Rng& rng) -> std::optional<Params> {
                     return Params{{"u", sample_unit(ctx, rng)}, {"c", sample_label(ctx, rng)}};
                 },
                 [](const Context& ctx, const Params& p) {
                     int64_t u = param_int(p, "u"), c = param_int(p, "c");
                     Build l(ctx);
                     int h1 = l.add(hchar(u, 1, 1), "a"), w = l.add(white(1, 2), "w");
                     int hc = l.add(hchar(c, 1, 0), "c"), h2 = l.add(hchar(u, 1, 1), "b");
                     l.link(l.in(), leg(h1, 0));
                     l.link(leg(h1, 1), leg(w, 0));
                     l.link(leg(w, 1), leg(h2, 0));
                     l.link(leg(w, 2), leg(hc, 0));
                     l.link(leg(h2, 1), l.out());
                     int64_t ui = inverse_mod(mod(u, ctx.dim()), ctx.dim());
                     return Sides{std::move(l.d), lone(ctx, notdot(mod(checked_mul(ui, mod(c, ctx.dim())), ctx.dim())))};
                 }});

    r.push_back({"ZH-NA", {}, wt, 0, no_params, no_sample, [](const Context& ctx, const Params&) {
                     return Sides{lone(ctx, notdot(0)), lone(ctx, gray(1, 1))};
                 }});

    r.push_back({"ZH-DH", {"u"}, wt, 0, u_domain, sample_u, [](const Context& ctx, const Params& p) {
                     int64_t u = param_int(p, "u");
                     return Sides{chain(ctx, {hchar(u, 1, 1), hchar(u, 1, 1)}), lone(ctx, gray(1, 1))};
                 }});

    r.push_back({"ZH-ZPL", {}, wt, 7, no_params, no_sample, [](const Context& ctx, const Params&) {
                     int d = static_cast<int>(ctx.dim());
                     auto through_minus = [](Build& b, const std::vector<Port>& ys, const std::function<Port(int)>& end) {
                         for (size_t j = 0; j < ys.size(); ++j) {
                             int hm = b.add(hchar(-1, 1, 1), "m" + std::to_string(j));
                             b.link(ys[j], leg(hm, 0));
                             b.link(leg(hm, 1), end(static_cast<int>(j)));
                         }
                     };
                     Diagram lhs = char_fan(ctx, [&](Build& b, const std::vector<Port>& ys) {
                         int g = b.add(white(d, 0), "g");
                         through_minus(b, ys, [g](int j) { return leg(g, j); });
                     });
                     Diagram rhs = char_fan(ctx, [&](Build& b, const std::vector<Port>& ys) {
                         through_minus(b, ys, [&b](int j) { return leg(b.add(gray(1, 0), "z" + std::to_string(j)), 0); });
                         b.scalar(1.0 / std::sqrt(static_cast<double>(ctx.dim())));
                     });
                     return Sides{std::move(lhs), std::move(rhs)};
                 }});
    return r;
}

}  // namespace

const std::vector<RuleSpec>& catalog() {
    static const std::vector<RuleSpec> rules = [] {
        std::vector<RuleSpec> all = zx_rules();
        for (auto& r : zxh_rules()) all.push_back(std::move(r));
        for (auto& r : zh_rules()) all.push_back(std::move(r));
        return all;
    }();
    return rules;
}

}  // namespace zxh
