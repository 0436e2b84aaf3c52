#include "diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "error.hpp"

namespace zxh {

int Diagram::add(Generator g, std::string id) {
    if (id.empty()) {
        int k = static_cast<int>(nodes_.size());
        do id = "n" + std::to_string(k++);
        while (find(id) >= 0);
    } else if (find(id) >= 0) {
        fail(Errc::parse, "duplicate node id '" + id + "'");
    }
    if (id == "in" || id == "out" || id.find(':') != std::string::npos)
        fail(Errc::parse, "reserved node id '" + id + "'");
    nodes_.push_back({std::move(id), std::move(g)});
    return static_cast<int>(nodes_.size()) - 1;
}

int Diagram::find(const std::string& id) const {
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id == id) return static_cast<int>(i);
    return -1;
}

namespace {

std::string port_text(const Diagram& d, const Port& p) {
    if (p.side == Port::Side::in) return "in:" + std::to_string(p.index);
    if (p.side == Port::Side::out) return "out:" + std::to_string(p.index);
    if (p.node < 0 || p.node >= static_cast<int>(d.nodes().size())) return "?:" + std::to_string(p.index);
    return d.nodes()[p.node].id + ":" + std::to_string(p.index);
}

// Flat numbering of every leg and boundary port.
struct Slots {
    std::vector<int> base;
    int in_base = 0;
    int out_base = 0;
    int total = 0;

    explicit Slots(const Diagram& d) {
        int s = 0;
        for (const auto& n : d.nodes()) {
            base.push_back(s);
            s += n.gen.legs();
        }
        in_base = s;
        out_base = s + d.inputs();
        total = out_base + d.outputs();
    }

    int of(const Diagram& d, const Port& p) const {
        switch (p.side) {
            case Port::Side::in:
                if (p.index < 0 || p.index >= d.inputs()) fail(Errc::semantic, "unknown port " + port_text(d, p));
                return in_base + p.index;
            case Port::Side::out:
                if (p.index < 0 || p.index >= d.outputs()) fail(Errc::semantic, "unknown port " + port_text(d, p));
                return out_base + p.index;
            case Port::Side::node:
                if (p.node < 0 || p.node >= static_cast<int>(d.nodes().size()) || p.index < 0 ||
                    p.index >= d.nodes()[p.node].gen.legs())
                    fail(Errc::semantic, "unknown port " + port_text(d, p));
                return base[p.node] + p.index;
        }
        return -1;
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int root(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(int a, int b) {
        a = root(a);
        b = root(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

struct Factor {
    std::vector<int> vars;
    std::vector<cd> data;
};

constexpr size_t kMaxFactor = size_t{1} << 27;

size_t power(int64_t dim, size_t k) {
    size_t n = 1;
    for (size_t i = 0; i < k; ++i) {
        if (n > kMaxFactor / static_cast<size_t>(dim)) fail(Errc::too_large, "contraction exceeds the size guard");
        n *= static_cast<size_t>(dim);
    }
    return n;
}

// Multiplies the factors and sums out `elim` (or nothing when elim < 0).
Factor sum_product(const std::vector<const Factor*>& fs, int elim, int64_t dim) {
    std::set<int> all;
    for (const Factor* f : fs) all.insert(f->vars.begin(), f->vars.end());
    Factor r;
    for (int v : all)
        if (v != elim) r.vars.push_back(v);
    std::vector<int> digits = r.vars;
    bool summed = elim >= 0 && all.count(elim) > 0;
    if (summed) digits.push_back(elim);
    r.data.assign(power(dim, r.vars.size()), 0.0);
    size_t nd = digits.size(), nf = fs.size();
    // stride[f * nd + d]: step of factor f when digit d increments.
    std::vector<size_t> stride(nf * nd, 0);
    for (size_t f = 0; f < nf; ++f) {
        size_t s = 1;
        for (int i = static_cast<int>(fs[f]->vars.size()) - 1; i >= 0; --i) {
            size_t d = std::find(digits.begin(), digits.end(), fs[f]->vars[i]) - digits.begin();
            stride[f * nd + d] += s;
            s *= static_cast<size_t>(dim);
        }
    }
    size_t total = power(dim, nd);
    size_t inner = summed ? static_cast<size_t>(dim) : 1;
    std::vector<int64_t> cur(nd, 0);
    std::vector<size_t> off(nf, 0);
    for (size_t step = 0; step < total; ++step) {
        cd p = 1.0;
        for (size_t f = 0; f < nf && p != cd(0.0, 0.0); ++f) p *= fs[f]->data[off[f]];
        r.data[step / inner] += p;
        for (int d = static_cast<int>(nd) - 1; d >= 0; --d) {
            if (++cur[d] < dim) {
                for (size_t f = 0; f < nf; ++f) off[f] += stride[f * nd + d];
                break;
            }
            cur[d] = 0;
            for (size_t f = 0; f < nf; ++f) off[f] -= stride[f * nd + d] * static_cast<size_t>(dim - 1);
        }
    }
    return r;
}

}  // namespace

void Diagram::check() const {
    Slots slots(*this);
    std::vector<int> uses(slots.total, 0);
    for (const auto& [a, b] : edges_) {
        ++uses[slots.of(*this, a)];
        ++uses[slots.of(*this, b)];
    }
    for (size_t i = 0; i < nodes_.size(); ++i)
        for (int l = 0; l < nodes_[i].gen.legs(); ++l) {
            int u = uses[slots.base[i] + l];
            if (u != 1)
                fail(Errc::semantic, "leg " + nodes_[i].id + ":" + std::to_string(l) + " used " + std::to_string(u) +
                                         " times");
        }
    for (int p = 0; p < n_in_; ++p)
        if (uses[slots.in_base + p] != 1) fail(Errc::semantic, "boundary in:" + std::to_string(p) + " not wired once");
    for (int p = 0; p < n_out_; ++p)
        if (uses[slots.out_base + p] != 1) fail(Errc::semantic, "boundary out:" + std::to_string(p) + " not wired once");
}

Tensor evaluate(const Diagram& d, const Context& ctx) {
    if (d.dim() != ctx.dim()) fail(Errc::shape, "diagram dimension differs from context");
    d.check();
    const int64_t dim = ctx.dim();
    Slots slots(d);
    UnionFind uf(slots.total);
    for (const auto& [a, b] : d.edges()) uf.join(slots.of(d, a), slots.of(d, b));
    for (size_t i = 0; i < d.nodes().size(); ++i) {
        const Generator& g = d.nodes()[i].gen;
        if (g.copies())
            for (int l = 1; l < g.legs(); ++l) uf.join(slots.base[i], slots.base[i] + l);
    }
    std::vector<int> var_of(slots.total, -1);
    int nvars = 0;
    for (int s = 0; s < slots.total; ++s) {
        int r = uf.root(s);
        if (var_of[r] < 0) var_of[r] = nvars++;
        var_of[s] = var_of[r];
    }

    cd scalar = 1.0;
    std::vector<std::optional<Factor>> factors;
    for (size_t i = 0; i < d.nodes().size(); ++i) {
        const Generator& g = d.nodes()[i].gen;
        Kernel kernel(ctx, g);
        int k = g.legs();
        if (k == 0) {
            scalar *= kernel(nullptr);
            continue;
        }
        std::vector<int> leg_var(k);
        for (int l = 0; l < k; ++l) leg_var[l] = var_of[slots.base[i] + l];
        Factor f;
        for (int v : leg_var)
            if (std::find(f.vars.begin(), f.vars.end(), v) == f.vars.end()) f.vars.push_back(v);
        f.data.resize(power(dim, f.vars.size()));
        std::vector<int64_t> value(f.vars.size()), labels(k);
        for (size_t idx = 0; idx < f.data.size(); ++idx) {
            size_t r = idx;
            for (int j = static_cast<int>(f.vars.size()) - 1; j >= 0; --j) {
                value[j] = ctx.label(static_cast<int64_t>(r % dim));
                r /= dim;
            }
            for (int l = 0; l < k; ++l)
                labels[l] = value[std::find(f.vars.begin(), f.vars.end(), leg_var[l]) - f.vars.begin()];
            f.data[idx] = kernel(labels.data());
        }
        factors.push_back(std::move(f));
    }

    std::vector<bool> boundary(nvars, false);
    for (int s = slots.in_base; s < slots.total; ++s) boundary[var_of[s]] = true;

    // Greedy elimination: the variable whose removal leaves the fewest legs.
    std::vector<std::vector<size_t>> touching(nvars);
    auto index_factor = [&](size_t i) {
        for (int v : factors[i]->vars) touching[v].push_back(i);
    };
    for (size_t i = 0; i < factors.size(); ++i) index_factor(i);
    for (;;) {
        int best = -1;
        size_t best_cost = 0;
        for (int v = 0; v < nvars; ++v) {
            if (boundary[v] || touching[v].empty()) continue;
            std::set<int> uni;
            for (size_t i : touching[v]) uni.insert(factors[i]->vars.begin(), factors[i]->vars.end());
            if (best < 0 || uni.size() - 1 < best_cost) {
                best = v;
                best_cost = uni.size() - 1;
            }
        }
        if (best < 0) break;
        std::vector<size_t> members = touching[best];
        std::vector<const Factor*> group;
        for (size_t i : members) group.push_back(&*factors[i]);
        Factor merged = sum_product(group, best, dim);
        for (size_t i : members) {
            for (int v : factors[i]->vars) std::erase(touching[v], i);
            factors[i].reset();
        }
        if (merged.vars.empty()) {
            scalar *= merged.data[0];
        } else {
            factors.push_back(std::move(merged));
            index_factor(factors.size() - 1);
        }
    }

    std::vector<const Factor*> rest;
    for (const auto& f : factors)
        if (f) rest.push_back(&*f);
    Factor final_factor = rest.empty() ? Factor{{}, {1.0}} : sum_product(rest, -1, dim);

    Tensor t(dim, d.inputs(), d.outputs());
    std::vector<int> port_var;
    for (int p = 0; p < d.outputs(); ++p) port_var.push_back(var_of[slots.out_base + p]);
    for (int p = 0; p < d.inputs(); ++p) port_var.push_back(var_of[slots.in_base + p]);
    std::vector<int64_t> assigned(nvars, -1);
    size_t np = port_var.size();
    std::vector<int64_t> pos(np);
    for (size_t idx = 0; idx < t.size(); ++idx) {
        size_t r = idx;
        for (int j = static_cast<int>(np) - 1; j >= 0; --j) {
            pos[j] = static_cast<int64_t>(r % dim);
            r /= dim;
        }
        bool ok = true;
        for (size_t j = 0; j < np; ++j) assigned[port_var[j]] = -1;
        for (size_t j = 0; j < np && ok; ++j) {
            int64_t& a = assigned[port_var[j]];
            if (a >= 0 && a != pos[j]) ok = false;
            a = pos[j];
        }
        if (!ok) continue;
        size_t off = 0;
        for (int v : final_factor.vars) off = off * dim + static_cast<size_t>(assigned[v]);
        t[idx] = scalar * final_factor.data[off];
    }
    return t;
}

Diagram wire_diagram(int64_t dim, int wires) {
    Diagram d(dim);
    d.set_boundary(wires, wires);
    for (int i = 0; i < wires; ++i) d.connect(Port::in(i), Port::out(i));
    return d;
}

Diagram single(int64_t dim, const Generator& g) {
    Diagram d(dim);
    int v = d.add(g);
    d.set_boundary(g.m, g.n);
    for (int i = 0; i < g.m; ++i) d.connect(Port::in(i), Port::leg(v, i));
    for (int j = 0; j < g.n; ++j) d.connect(Port::leg(v, g.m + j), Port::out(j));
    return d;
}

namespace {

// Appends b's nodes to a, renaming clashing ids; returns the index offset.
int absorb_nodes(Diagram& a, const Diagram& b) {
    int offset = static_cast<int>(a.nodes().size());
    for (const auto& n : b.nodes()) {
        std::string id = n.id;
        while (a.find(id) >= 0) id += "'";
        a.add(n.gen, id);
    }
    return offset;
}

Port shifted(Port p, int node_off, int in_off, int out_off) {
    if (p.side == Port::Side::node) p.node += node_off;
    if (p.side == Port::Side::in) p.index += in_off;
    if (p.side == Port::Side::out) p.index += out_off;
    return p;
}

}  // namespace

Diagram compose_parallel(const Diagram& a, const Diagram& b) {
    if (a.dim() != b.dim()) fail(Errc::shape, "dimension mismatch");
    Diagram r = a;
    int off = absorb_nodes(r, b);
    for (const auto& [p, q] : b.edges())
        r.connect(shifted(p, off, a.inputs(), a.outputs()), shifted(q, off, a.inputs(), a.outputs()));
    r.set_boundary(a.inputs() + b.inputs(), a.outputs() + b.outputs());
    return r;
}

Diagram compose_serial(const Diagram& a, const Diagram& b) {
    if (a.dim() != b.dim()) fail(Errc::shape, "dimension mismatch");
    if (a.outputs() != b.inputs()) fail(Errc::shape, "arity mismatch in serial composition");
    Diagram r(a.dim());
    for (const auto& n : a.nodes()) r.add(n.gen, n.id);
    int off = absorb_nodes(r, b);
    // Junction j stands for a's out:j glued to b's in:j; encode as in-ports past the end.
    const int junction = a.inputs();
    std::vector<std::pair<Port, Port>> edges;
    auto map_a = [&](Port p) {
        if (p.side == Port::Side::out) return Port::in(junction + p.index);
        return p;
    };
    auto map_b = [&](Port p) {
        if (p.side == Port::Side::in) return Port::in(junction + p.index);
        return shifted(p, off, 0, 0);
    };
    for (const auto& [p, q] : a.edges()) edges.emplace_back(map_a(p), map_a(q));
    for (const auto& [p, q] : b.edges()) edges.emplace_back(map_b(p), map_b(q));
    auto is_junction = [&](const Port& p) { return p.side == Port::Side::in && p.index >= junction; };
    int loops = 0;
    for (int j = 0; j < a.outputs(); ++j) {
        Port jp = Port::in(junction + j);
        std::vector<size_t> hits;
        for (size_t e = 0; e < edges.size(); ++e) {
            if (edges[e].first == jp) hits.push_back(e);
            if (edges[e].second == jp) hits.push_back(e);
        }
        if (hits.size() != 2) fail(Errc::semantic, "boundary port not wired once during composition");
        if (hits[0] == hits[1]) {
            ++loops;
            edges.erase(edges.begin() + static_cast<long>(hits[0]));
            continue;
        }
        auto other = [&](size_t e) { return edges[e].first == jp ? edges[e].second : edges[e].first; };
        Port x = other(hits[0]), y = other(hits[1]);
        edges[hits[0]] = {x, y};
        edges.erase(edges.begin() + static_cast<long>(hits[1]));
    }
    for (const auto& [p, q] : edges) {
        if (is_junction(p) || is_junction(q)) fail(Errc::semantic, "dangling junction during composition");
        r.connect(p, q);
    }
    for (int i = 0; i < loops; ++i) r.add(hbox(amp::UnitPow{cd(static_cast<double>(a.dim()), 0.0)}, 0, 0));
    r.set_boundary(a.inputs(), b.outputs());
    return r;
}

Diagram adjoint(const Diagram& d, const Context& ctx) {
    Diagram r(d.dim());
    for (const auto& n : d.nodes()) r.add(adjoint(ctx, n.gen), n.id);
    auto flip = [&](Port p) {
        if (p.side == Port::Side::in) return Port::out(p.index);
        if (p.side == Port::Side::out) return Port::in(p.index);
        const Generator& g = d.nodes()[p.node].gen;
        p.index = p.index < g.m ? g.n + p.index : p.index - g.m;
        return p;
    };
    for (const auto& [p, q] : d.edges()) r.connect(flip(p), flip(q));
    r.set_boundary(d.outputs(), d.inputs());
    return r;
}

Diagram permute_nodes(const Diagram& d, const std::vector<int>& order) {
    if (order.size() != d.nodes().size()) fail(Errc::param, "permutation size mismatch");
    Diagram r(d.dim());
    std::vector<int> where(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        const Node& n = d.nodes().at(order[i]);
        where[order[i]] = r.add(n.gen, n.id);
    }
    for (auto [p, q] : d.edges()) {
        if (p.side == Port::Side::node) p.node = where[p.node];
        if (q.side == Port::Side::node) q.node = where[q.node];
        r.connect(p, q);
    }
    r.set_boundary(d.inputs(), d.outputs());
    return r;
}

}  // namespace zxh
