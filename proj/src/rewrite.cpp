#include "rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "error.hpp"

namespace zxh {

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

template <class T>
const T& typed(const Params& p, const std::string& name, const char* what) {
    auto it = p.find(name);
    if (it == p.end()) fail(Errc::param, "missing parameter '" + name + "'");
    const T* v = std::get_if<T>(&it->second);
    if (!v) fail(Errc::param, "parameter '" + name + "' must be " + what);
    return *v;
}

}  // namespace

int64_t param_int(const Params& p, const std::string& name) { return typed<int64_t>(p, name, "an integer"); }

double param_real(const Params& p, const std::string& name) {
    auto it = p.find(name);
    if (it != p.end())
        if (auto* i = std::get_if<int64_t>(&it->second)) return static_cast<double>(*i);
    return typed<double>(p, name, "a real");
}

cd param_complex(const Params& p, const std::string& name) {
    auto it = p.find(name);
    if (it != p.end()) {
        if (auto* i = std::get_if<int64_t>(&it->second)) return static_cast<double>(*i);
        if (auto* r = std::get_if<double>(&it->second)) return *r;
    }
    return typed<cd>(p, name, "a complex number");
}

const AmplitudeFn& param_amp(const Params& p, const std::string& name) {
    return typed<AmplitudeFn>(p, name, "an amplitude function");
}

int64_t sample_unit(const Context& ctx, Rng& rng) {
    std::vector<int64_t> units;
    for (int64_t u = 1; u < ctx.dim(); ++u)
        if (gcd64(u, ctx.dim()) == 1) units.push_back(u);
    return units[std::uniform_int_distribution<size_t>(0, units.size() - 1)(rng)];
}

int64_t sample_label(const Context& ctx, Rng& rng) {
    return std::uniform_int_distribution<int64_t>(-ctx.dim(), ctx.dim())(rng);
}

double sample_angle(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng); }

cd sample_alpha(Rng& rng) {
    double r = std::uniform_real_distribution<double>(0.9, 1.1)(rng);
    return std::polar(r, sample_angle(rng));
}

AmplitudeFn sample_amplitude(const Context& ctx, Rng& rng, bool all_integers) {
    int pick = std::uniform_int_distribution<int>(0, all_integers ? 3 : 5)(rng);
    switch (pick) {
        case 0: return amp::Phase{sample_angle(rng)};
        case 1: return amp::Stab{sample_label(ctx, rng), sample_label(ctx, rng)};
        case 2: return amp::Char{sample_label(ctx, rng)};
        case 3: return amp::UnitPow{sample_alpha(rng)};
        case 4: {
            amp::Table t;
            std::normal_distribution<double> g(0.0, 1.0);
            for (int64_t i = 0; i < ctx.dim(); ++i) t.values.emplace_back(g(rng), g(rng));
            return t;
        }
        default: {
            amp::PhaseVec t;
            for (int64_t i = 0; i < ctx.dim(); ++i) t.thetas.push_back(sample_angle(rng));
            return t;
        }
    }
}

int64_t label_inverse(const Context& ctx, int64_t u) {
    return inverse_mod(u, ctx.dim() % 2 == 0 ? 2 * ctx.dim() : ctx.dim());
}

const RuleSpec* find_rule(const std::string& id) {
    for (const auto& r : catalog())
        if (r.id == id) return &r;
    return nullptr;
}

std::pair<Diagram, Diagram> instantiate(const RuleSpec& rule, const Params& params, const Context& ctx) {
    if (rule.nu == NuRequirement::well_tempered && !ctx.well_tempered())
        fail(Errc::param, rule.id + " holds only at the well-tempered nu");
    rule.domain(ctx, params);
    auto sides = rule.build(ctx, params);
    if (sides.first.inputs() != sides.second.inputs() || sides.first.outputs() != sides.second.outputs())
        fail(Errc::semantic, rule.id + ": sides have different boundary arities");
    return sides;
}

SoundnessReport check_soundness(const RuleSpec& rule, const Params& params, const Context& ctx, double tol) {
    auto [lhs, rhs] = instantiate(rule, params, ctx);
    SoundnessReport r;
    r.max_err = max_abs_diff(evaluate(lhs, ctx), evaluate(rhs, ctx));
    r.pass = r.max_err <= tol;
    return r;
}

const char* status_name(CellStatus s) {
    switch (s) {
        case CellStatus::pass: return "pass";
        case CellStatus::fail: return "fail";
        default: return "skip";
    }
}

std::vector<SuiteCell> check_all(const SuiteOptions& opt) {
    if (opt.dim_lo < 2 || opt.dim_hi < opt.dim_lo) fail(Errc::param, "dimension range must start at 2 or more");
    if (opt.samples < 1) fail(Errc::param, "need at least one sample");
    std::vector<const RuleSpec*> rules;
    if (opt.rules.empty()) {
        for (const auto& r : catalog()) rules.push_back(&r);
    } else {
        for (const auto& id : opt.rules) {
            const RuleSpec* r = find_rule(id);
            if (!r) fail(Errc::parse, "unknown rule '" + id + "'");
            rules.push_back(r);
        }
    }
    std::sort(rules.begin(), rules.end(), [](auto* a, auto* b) { return a->id < b->id; });
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    std::vector<SuiteCell> cells;
    for (const RuleSpec* rule : rules) {
        uint64_t rule_hash = fnv1a(rule->id);
        for (int64_t dim = opt.dim_lo; dim <= opt.dim_hi; ++dim) {
            Context ctx = opt.nu ? Context(dim, *opt.nu) : Context(dim);
            for (int s = 0; s < opt.samples; ++s) {
                SuiteCell cell{rule->id, dim, s, {}, 0.0, CellStatus::skip, {}, ctx.nu()};
                std::seed_seq seq{static_cast<uint32_t>(opt.seed), static_cast<uint32_t>(opt.seed >> 32),
                                  static_cast<uint32_t>(rule_hash), static_cast<uint32_t>(dim),
                                  static_cast<uint32_t>(s)};
                Rng rng(seq);
                if (rule->nu == NuRequirement::well_tempered && !ctx.well_tempered()) {
                    cell.note = "requires well-tempered nu";
                } else if (rule->max_dim > 0 && dim > rule->max_dim) {
                    cell.note = "size cap";
                } else if (auto params = rule->sample(ctx, rng)) {
                    cell.params = *params;
                    try {
                        auto rep = check_soundness(*rule, *params, ctx, opt.tol);
                        cell.max_err = rep.max_err;
                        cell.status = rep.pass ? CellStatus::pass : CellStatus::fail;
                    } catch (const Error& e) {
                        cell.status = CellStatus::fail;
                        cell.note = e.what();
                    }
                } else {
                    cell.note = "no valid parameters";
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

Diagram apply(const Diagram& host, const RuleSpec& rule, const Params& params,
              const std::map<std::string, std::string>& anchor, const Context& ctx) {
    auto [lhs, rhs] = instantiate(rule, params, ctx);
    host.check();
    if (host.dim() != lhs.dim()) fail(Errc::match, "dimension mismatch");
    // Node binding.
    std::vector<int> bind(lhs.nodes().size(), -1);
    std::set<int> matched;
    for (size_t i = 0; i < lhs.nodes().size(); ++i) {
        const Node& ln = lhs.nodes()[i];
        auto it = anchor.find(ln.id);
        if (it == anchor.end()) fail(Errc::match, "lhs node '" + ln.id + "' is not anchored");
        int h = host.find(it->second);
        if (h < 0) fail(Errc::match, "host has no node '" + it->second + "'");
        if (!matched.insert(h).second) fail(Errc::match, "host node '" + it->second + "' anchored twice");
        if (!same_generator(ln.gen, host.nodes()[h].gen))
            fail(Errc::match, "node '" + it->second + "' does not match lhs node '" + ln.id + "'");
        bind[i] = h;
    }
    for (const auto& [id, target] : anchor)
        if (lhs.find(id) < 0) fail(Errc::match, "anchor names unknown lhs node '" + id + "'");

    auto host_partner = [&](const Port& p) -> std::pair<Port, size_t> {
        for (size_t e = 0; e < host.edges().size(); ++e) {
            const auto& [a, b] = host.edges()[e];
            if (a == p) return {b, e};
            if (b == p) return {a, e};
        }
        fail(Errc::match, "dangling host leg");
    };
    auto to_host = [&](const Port& p) { return Port::leg(bind[p.node], p.index); };
    auto inside = [&](const Port& p) { return p.side == Port::Side::node && matched.count(p.node) > 0; };

    std::set<size_t> consumed;
    std::vector<std::optional<Port>> cut_in(lhs.inputs()), cut_out(lhs.outputs());
    for (const auto& [a, b] : lhs.edges()) {
        bool an = a.side == Port::Side::node, bn = b.side == Port::Side::node;
        if (an && bn) {
            Port ha = to_host(a), hb = to_host(b);
            auto [partner, e] = host_partner(ha);
            if (!(partner == hb) || consumed.count(e))
                fail(Errc::match, "host wiring differs at " + host.nodes()[ha.node].id + ":" + std::to_string(ha.index));
            consumed.insert(e);
        } else if (an || bn) {
            const Port& leg = an ? a : b;
            const Port& bd = an ? b : a;
            auto [partner, e] = host_partner(to_host(leg));
            if (inside(partner)) fail(Errc::match, "boundary leg of the match is wired back into the match");
            consumed.insert(e);
            (bd.side == Port::Side::in ? cut_in : cut_out)[bd.index] = partner;
        } else {
            fail(Errc::match, "lhs with a bare boundary wire cannot be anchored");
        }
    }

    Diagram out(host.dim());
    std::vector<int> keep(host.nodes().size(), -1);
    for (size_t i = 0; i < host.nodes().size(); ++i)
        if (!matched.count(static_cast<int>(i))) keep[i] = out.add(host.nodes()[i].gen, host.nodes()[i].id);
    out.set_boundary(host.inputs(), host.outputs());
    auto remap = [&](Port p) {
        if (p.side == Port::Side::node) p.node = keep[p.node];
        return p;
    };
    for (size_t e = 0; e < host.edges().size(); ++e) {
        const auto& [a, b] = host.edges()[e];
        if (inside(a) || inside(b)) continue;
        out.connect(remap(a), remap(b));
    }
    std::vector<int> fresh(rhs.nodes().size());
    for (size_t i = 0; i < rhs.nodes().size(); ++i) {
        std::string id = rule.id + "." + rhs.nodes()[i].id;
        while (out.find(id) >= 0) id += "'";
        fresh[i] = out.add(rhs.nodes()[i].gen, id);
    }
    auto place = [&](const Port& p) -> Port {
        if (p.side == Port::Side::node) return Port::leg(fresh[p.node], p.index);
        const auto& cut = p.side == Port::Side::in ? cut_in : cut_out;
        if (!cut[p.index]) fail(Errc::match, "unmatched boundary position");
        return remap(*cut[p.index]);
    };
    for (const auto& [a, b] : rhs.edges()) out.connect(place(a), place(b));
    out.check();
    return out;
}

}  // namespace zxh
