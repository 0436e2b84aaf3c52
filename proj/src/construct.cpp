#include "construct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "error.hpp"

namespace zxh {

namespace {

Port leg(int node, int l) { return Port::leg(node, l); }
Port in(int i) { return Port::in(i); }
Port out(int j) { return Port::out(j); }

Diagram frame(const Context& ctx, int m, int n) {
    Diagram d(ctx.dim());
    d.set_boundary(m, n);
    return d;
}

using LabelFn = std::function<cd(const std::vector<int64_t>& outs, const std::vector<int64_t>& ins)>;

Tensor tabulate(const Context& ctx, int m, int n, const LabelFn& f) {
    Tensor t(ctx.dim(), m, n);
    int k = m + n;
    std::vector<int64_t> pos(k, 0), outs(n), ins(m);
    for (size_t i = 0; i < t.size(); ++i) {
        for (int j = 0; j < n; ++j) outs[j] = ctx.label(pos[j]);
        for (int j = 0; j < m; ++j) ins[j] = ctx.label(pos[n + j]);
        t[i] = f(outs, ins);
        for (int a = k - 1; a >= 0; --a) {
            if (++pos[a] < ctx.dim()) break;
            pos[a] = 0;
        }
    }
    return t;
}

cd delta(bool b) { return b ? cd(1.0) : cd(0.0); }

int edge_count(const Context& ctx, int64_t u) {
    int64_t e = mod(u, ctx.dim());
    return static_cast<int>(e == 0 ? ctx.dim() : e);
}

// Copies of controls (white or green 1 -> 2) pass straight through; returns the branch ports.
std::vector<Port> controls(Diagram& d, int count, bool zx) {
    std::vector<Port> branch;
    for (int i = 0; i < count; ++i) {
        int c = d.add(zx ? green(amp::One{}, 1, 2) : white(1, 2), "ctl" + std::to_string(i));
        d.connect(in(i), leg(c, 0));
        d.connect(leg(c, 1), out(i));
        branch.push_back(leg(c, 2));
    }
    return branch;
}

// Diagonal phase omega^{c * prod} over `wires` white copies, with the last wire optionally Fourier-conjugated.
Diagram controlled(const Context& ctx, int wires, int64_t c, bool shift_last) {
    Diagram d = frame(ctx, wires, wires);
    int plain = shift_last ? wires - 1 : wires;
    std::vector<Port> branch = controls(d, plain, false);
    if (shift_last) {
        int t = wires - 1;
        int f = d.add(hbox(amp::Char{1}, 1, 1), "fwd");
        int w = d.add(white(1, 2), "tgt");
        int b = d.add(hbox(amp::Char{-1}, 1, 1), "back");
        d.connect(in(t), leg(f, 0));
        d.connect(leg(f, 1), leg(w, 0));
        d.connect(leg(w, 1), leg(b, 0));
        d.connect(leg(b, 1), out(t));
        branch.push_back(leg(w, 2));
    }
    int h = d.add(hbox(amp::Char{c}, wires, 0), "h");
    for (int i = 0; i < wires; ++i) d.connect(branch[i], leg(h, i));
    return d;
}

Diagram ket(const Context& ctx, Generator first) {
    Diagram d = frame(ctx, 0, 1);
    int a = d.add(std::move(first), "a"), r = d.add(red(amp::One{}, 1, 1), "antipode");
    d.connect(leg(a, 0), leg(r, 0));
    d.connect(leg(r, 1), out(0));
    return d;
}

Diagram cx_diagram(const Context& ctx) {
    Diagram d = frame(ctx, 2, 2);
    std::vector<Port> branch = controls(d, 1, true);
    int r = d.add(red(amp::One{}, 2, 1), "sum"), a = d.add(red(amp::One{}, 1, 1), "antipode");
    d.connect(in(1), leg(r, 0));
    d.connect(branch[0], leg(r, 1));
    d.connect(leg(r, 2), leg(a, 0));
    d.connect(leg(a, 1), out(1));
    return d;
}

Diagram cz_diagram(const Context& ctx) {
    Diagram d = frame(ctx, 2, 2);
    std::vector<Port> branch = controls(d, 2, true);
    int h = d.add(hplus(), "h");
    d.connect(branch[0], leg(h, 0));
    d.connect(branch[1], leg(h, 1));
    return d;
}

Diagram multiplier_edges(const Context& ctx, int64_t u) {
    int e = edge_count(ctx, u);
    Diagram d = frame(ctx, 1, 1);
    int g = d.add(green(amp::One{}, 1, e), "copy"), r = d.add(red(amp::One{}, e, 1), "sum");
    int a = d.add(red(amp::One{}, 1, 1), "antipode");
    d.connect(in(0), leg(g, 0));
    for (int i = 0; i < e; ++i) d.connect(leg(g, 1 + i), leg(r, i));
    d.connect(leg(r, e), leg(a, 0));
    d.connect(leg(a, 1), out(0));
    return d;
}

void add_mbox(Diagram& d, const std::vector<Port>& inputs, cd alpha, const Context& ctx, const std::string& tag) {
    int m = static_cast<int>(inputs.size());
    int h = d.add(hbox(amp::MBox{2 * m, alpha}, 2 * m, 0), tag + "h");
    for (int i = 0; i < m; ++i) {
        std::string t = tag + std::to_string(i);
        int w = d.add(white(1, 2), t + "w"), nd = d.add(notdot(1 - ctx.sigma()), t + "not");
        d.connect(inputs[i], leg(w, 0));
        d.connect(leg(w, 1), leg(h, 2 * i));
        d.connect(leg(w, 2), leg(nd, 0));
        d.connect(leg(nd, 1), leg(h, 2 * i + 1));
    }
}

int64_t pint(const Params& p, const char* name) { return param_int(p, name); }

struct Entry {
    GadgetInfo info;
    std::function<Diagram(const Context&, const Params&)> build;
    std::function<Tensor(const Context&, const Params&)> target;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list = [] {
        std::vector<Entry> e;
        e.push_back({{"ket_a", {"a"}},
                     [](const Context& ctx, const Params& p) { return ket(ctx, red(amp::Stab{pint(p, "a"), 0}, 0, 1)); },
                     [](const Context& ctx, const Params& p) {
                         int64_t a = ctx.residue(pint(p, "a"));
                         double s = 1.0 / ctx.nu();
                         return tabulate(ctx, 0, 1, [&](auto& o, auto&) { return s * delta(o[0] == a); });
                     }});
        e.push_back({{"ket_omega_a", {"a"}},
                     [](const Context& ctx, const Params& p) { return ket(ctx, green(amp::Stab{pint(p, "a"), 0}, 0, 1)); },
                     [](const Context& ctx, const Params& p) {
                         int64_t a = pint(p, "a");
                         return tabulate(ctx, 0, 1, [&](auto& o, auto&) {
                             return ctx.nu() * ctx.omega_pow(-checked_mul(a, o[0]));
                         });
                     }});
        e.push_back({{"pauli_x", {}},
                     [](const Context& ctx, const Params&) {
                         Diagram d = frame(ctx, 1, 1);
                         int r = d.add(red(amp::Stab{1, 0}, 1, 1), "shift"), a = d.add(red(amp::One{}, 1, 1), "antipode");
                         d.connect(in(0), leg(r, 0));
                         d.connect(leg(r, 1), leg(a, 0));
                         d.connect(leg(a, 1), out(0));
                         return d;
                     },
                     [](const Context& ctx, const Params&) {
                         return tabulate(ctx, 1, 1, [&](auto& o, auto& i) { return delta(o[0] == ctx.residue(i[0] + 1)); });
                     }});
        e.push_back({{"pauli_z", {}},
                     [](const Context& ctx, const Params&) { return single(ctx.dim(), green(amp::Stab{1, 0}, 1, 1)); },
                     [](const Context& ctx, const Params&) {
                         return tabulate(ctx, 1, 1, [&](auto& o, auto& i) { return delta(o[0] == i[0]) * ctx.omega_pow(i[0]); });
                     }});
        e.push_back({{"s_gate", {}},
                     [](const Context& ctx, const Params&) { return single(ctx.dim(), green(amp::Stab{0, 1}, 1, 1)); },
                     [](const Context& ctx, const Params&) {
                         return tabulate(ctx, 1, 1,
                                         [&](auto& o, auto& i) { return delta(o[0] == i[0]) * ctx.tau_pow(i[0] * i[0]); });
                     }});
        e.push_back({{"fourier", {}}, [](const Context& ctx, const Params&) { return single(ctx.dim(), hplus()); },
                     [](const Context& ctx, const Params&) {
                         double s = 1.0 / std::sqrt(static_cast<double>(ctx.dim()));
                         return tabulate(ctx, 1, 1, [&](auto& o, auto& i) { return s * ctx.omega_pow(o[0] * i[0]); });
                     }});
        auto mult_target = [](const Context& ctx, int64_t u) {
            return tabulate(ctx, 1, 1,
                            [&](auto& o, auto& i) { return delta(o[0] == ctx.residue(checked_mul(u, i[0]))); });
        };
        e.push_back({{"m_mult", {"u"}},
                     [](const Context& ctx, const Params& p) { return multiplier_edges(ctx, pint(p, "u")); },
                     [mult_target](const Context& ctx, const Params& p) { return mult_target(ctx, pint(p, "u")); }});
        e.push_back({{"cx", {}}, [](const Context& ctx, const Params&) { return cx_diagram(ctx); },
                     [](const Context& ctx, const Params&) {
                         return tabulate(ctx, 2, 2, [&](auto& o, auto& i) {
                             return delta(o[0] == i[0] && o[1] == ctx.residue(i[0] + i[1]));
                         });
                     }});
        e.push_back({{"cz", {}}, [](const Context& ctx, const Params&) { return cz_diagram(ctx); },
                     [](const Context& ctx, const Params&) {
                         return tabulate(ctx, 2, 2, [&](auto& o, auto& i) {
                             return delta(o[0] == i[0] && o[1] == i[1]) * ctx.omega_pow(i[0] * i[1]);
                         });
                     }});
        auto shift_target = [](const Context& ctx, int wires, int64_t c) {
            return tabulate(ctx, wires, wires, [&](auto& o, auto& i) {
                int64_t prod = c;
                bool same = true;
                for (int w = 0; w + 1 < wires; ++w) {
                    prod = checked_mul(prod, i[w]);
                    same = same && o[w] == i[w];
                }
                return delta(same && o[wires - 1] == ctx.residue(checked_add(i[wires - 1], prod)));
            });
        };
        auto phase_target = [](const Context& ctx, int wires, int64_t c) {
            return tabulate(ctx, wires, wires, [&](auto& o, auto& i) {
                int64_t prod = c;
                bool same = true;
                for (int w = 0; w < wires; ++w) {
                    prod = checked_mul(prod, i[w]);
                    same = same && o[w] == i[w];
                }
                return delta(same) * ctx.omega_pow(prod);
            });
        };
        e.push_back({{"cx_pow", {"c"}},
                     [](const Context& ctx, const Params& p) { return controlled(ctx, 2, pint(p, "c"), true); },
                     [shift_target](const Context& ctx, const Params& p) { return shift_target(ctx, 2, pint(p, "c")); }});
        e.push_back({{"cz_pow", {"c"}},
                     [](const Context& ctx, const Params& p) { return controlled(ctx, 2, pint(p, "c"), false); },
                     [phase_target](const Context& ctx, const Params& p) { return phase_target(ctx, 2, pint(p, "c")); }});
        e.push_back({{"ccx_pow", {"c"}},
                     [](const Context& ctx, const Params& p) { return controlled(ctx, 3, pint(p, "c"), true); },
                     [shift_target](const Context& ctx, const Params& p) { return shift_target(ctx, 3, pint(p, "c")); }});
        e.push_back({{"ccz_pow", {"c"}},
                     [](const Context& ctx, const Params& p) { return controlled(ctx, 3, pint(p, "c"), false); },
                     [phase_target](const Context& ctx, const Params& p) { return phase_target(ctx, 3, pint(p, "c")); }});
        e.push_back({{"multiplier", {"c"}},
                     [](const Context& ctx, const Params& p) {
                         Diagram d = frame(ctx, 1, 1);
                         int h = d.add(hbox(amp::Char{pint(p, "c")}, 1, 1), "h"), b = d.add(hminus(), "back");
                         d.connect(in(0), leg(h, 0));
                         d.connect(leg(h, 1), leg(b, 0));
                         d.connect(leg(b, 1), out(0));
                         return d;
                     },
                     [mult_target](const Context& ctx, const Params& p) { return mult_target(ctx, pint(p, "c")); }});
        e.push_back({{"fourier_box", {"c"}},
                     [](const Context& ctx, const Params& p) { return single(ctx.dim(), hbox(amp::Char{pint(p, "c")}, 1, 1)); },
                     [](const Context& ctx, const Params& p) {
                         int64_t c = pint(p, "c");
                         double s = ctx.nu() * ctx.nu();
                         return tabulate(ctx, 1, 1,
                                         [&](auto& o, auto& i) { return s * ctx.omega_pow(checked_mul(c, checked_mul(o[0], i[0]))); });
                     }});
        e.push_back({{"scalar", {"alpha"}},
                     [](const Context& ctx, const Params& p) {
                         cd a = param_complex(p, "alpha");
                         if (a == cd(0.0)) return single(ctx.dim(), hbox(amp::Zero{}, 0, 0));
                         return single(ctx.dim(), hbox(amp::UnitPow{a}, 0, 0));
                     },
                     [](const Context& ctx, const Params& p) { return Tensor::scalar(ctx.dim(), param_complex(p, "alpha")); }});
        e.push_back({{"diag_theta", {"Theta"}},
                     [](const Context& ctx, const Params& p) { return single(ctx.dim(), green(param_amp(p, "Theta"), 1, 1)); },
                     [](const Context& ctx, const Params& p) {
                         const auto& th = param_amp(p, "Theta");
                         return tabulate(ctx, 1, 1,
                                         [&](auto& o, auto& i) { return delta(o[0] == i[0]) * amp_eval(ctx, th, i[0]); });
                     }});
        e.push_back({{"diag_a2", {"A"}},
                     [](const Context& ctx, const Params& p) {
                         Diagram d = frame(ctx, 2, 2);
                         std::vector<Port> branch = controls(d, 2, false);
                         int h = d.add(hbox(param_amp(p, "A"), 2, 0), "h");
                         d.connect(branch[0], leg(h, 0));
                         d.connect(branch[1], leg(h, 1));
                         return d;
                     },
                     [](const Context& ctx, const Params& p) {
                         const auto& a = param_amp(p, "A");
                         return tabulate(ctx, 2, 2, [&](auto& o, auto& i) {
                             return delta(o[0] == i[0] && o[1] == i[1]) * amp_eval(ctx, a, checked_mul(i[0], i[1]));
                         });
                     }});
        return e;
    }();
    return list;
}

const Entry& entry(const std::string& name) {
    for (const auto& e : entries())
        if (e.info.name == name) return e;
    fail(Errc::param, "unknown gadget: " + name);
}

const Entry& checked_entry(const std::string& name, const Params& params) {
    const Entry& e = entry(name);
    for (const auto& [key, value] : params)
        if (std::find(e.info.params.begin(), e.info.params.end(), key) == e.info.params.end())
            fail(Errc::param, "gadget " + name + " has no parameter '" + key + "'");
    return e;
}

}  // namespace

const std::vector<GadgetInfo>& gadgets() {
    static const std::vector<GadgetInfo> list = [] {
        std::vector<GadgetInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return list;
}

Diagram build_gadget(const std::string& name, const Params& params, const Context& ctx) {
    Diagram d = checked_entry(name, params).build(ctx, params);
    for (const auto& n : d.nodes()) validate(ctx, n.gen);
    d.check();
    return d;
}

Tensor gadget_target(const std::string& name, const Params& params, const Context& ctx) {
    return checked_entry(name, params).target(ctx, params);
}

Diagram mbox_gadget(int m, cd alpha, const Context& ctx) {
    if (m < 0) fail(Errc::param, "mbox gadget needs a non-negative input count");
    checked_pow(ctx.hi(), checked_mul(2, m));
    Diagram d = frame(ctx, m, 0);
    std::vector<Port> inputs;
    for (int i = 0; i < m; ++i) inputs.push_back(in(i));
    add_mbox(d, inputs, alpha, ctx, "m");
    return d;
}

Diagram normal_form(const Tensor& omega, const Context& ctx) {
    if (!ctx.well_tempered()) fail(Errc::domain, "normal form requires the well-tempered nu");
    if (omega.dim() != ctx.dim()) fail(Errc::shape, "tensor dimension does not match the context");
    int m = omega.in_legs(), n = omega.out_legs(), k = m + n;
    checked_pow(ctx.hi(), checked_mul(2, k));
    size_t coeffs = omega.size();
    if (checked_mul(static_cast<int64_t>(coeffs), k) > (int64_t{1} << 20))
        fail(Errc::too_large, "normal form exceeds the size guard");

    Diagram d = frame(ctx, m, n);
    int branches = static_cast<int>(coeffs);
    // Wire order: outputs then inputs, matching the tensor axes.
    std::vector<int> fan(k);
    for (int w = 0; w < k; ++w) {
        std::string t = "fan" + std::to_string(w);
        if (w < n) {
            fan[w] = d.add(white(0, branches + 1), t);
            d.connect(leg(fan[w], 0), out(w));
        } else {
            fan[w] = d.add(white(1, branches), t);
            d.connect(in(w - n), leg(fan[w], 0));
        }
    }
    double scale = std::pow(ctx.nu(), -k);
    std::vector<int64_t> pos(k, 0);
    for (size_t idx = 0; idx < coeffs; ++idx) {
        std::string tag = "c" + std::to_string(idx) + ".";
        std::vector<Port> shifted;
        for (int w = 0; w < k; ++w) {
            int64_t c = -ctx.hi() - ctx.label(pos[w]);
            int nd = d.add(notdot(c), tag + "s" + std::to_string(w));
            d.connect(leg(fan[w], 1 + static_cast<int>(idx)), leg(nd, 0));
            shifted.push_back(leg(nd, 1));
        }
        add_mbox(d, shifted, scale * omega[idx], ctx, tag);
        for (int a = k - 1; a >= 0; --a) {
            if (++pos[a] < ctx.dim()) break;
            pos[a] = 0;
        }
    }
    return d;
}

}  // namespace zxh
