#include "serialize.hpp"

#include "error.hpp"

namespace zxh {

namespace {

json complex_pair(cd v) { return json::array({v.real(), v.imag()}); }

cd complex_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(Errc::parse, "expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(Errc::parse, std::string("missing field '") + key + "'");
    return j.at(key);
}

int64_t int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) fail(Errc::parse, std::string("field '") + key + "' must be an integer");
    return v.get<int64_t>();
}

double real_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number()) fail(Errc::parse, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::vector<int64_t> int_list(const json& j) {
    if (!j.is_array()) fail(Errc::parse, "expected an integer list");
    std::vector<int64_t> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) fail(Errc::parse, "expected an integer list");
        out.push_back(v.get<int64_t>());
    }
    return out;
}

std::string port_string(const Diagram& d, const Port& p) {
    switch (p.side) {
        case Port::Side::in: return "in:" + std::to_string(p.index);
        case Port::Side::out: return "out:" + std::to_string(p.index);
        default: return d.nodes()[p.node].id + ":" + std::to_string(p.index);
    }
}

Port parse_port(const Diagram& d, const json& j) {
    if (!j.is_string()) fail(Errc::parse, "port references must be strings");
    std::string s = j.get<std::string>();
    auto colon = s.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == s.size())
        fail(Errc::parse, "malformed port '" + s + "'");
    std::string id = s.substr(0, colon);
    int idx = 0;
    try {
        size_t used = 0;
        idx = std::stoi(s.substr(colon + 1), &used);
        if (used != s.size() - colon - 1) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        fail(Errc::parse, "malformed port '" + s + "'");
    }
    if (idx < 0) fail(Errc::parse, "negative index in port '" + s + "'");
    if (id == "in") return Port::in(idx);
    if (id == "out") return Port::out(idx);
    int node = d.find(id);
    if (node < 0) fail(Errc::parse, "unknown node in port '" + s + "'");
    return Port::leg(node, idx);
}

}  // namespace

json amp_to_json(const AmplitudeFn& a) {
    json j;
    j["type"] = amp_name(a);
    if (auto* p = std::get_if<amp::Phase>(&a)) j["theta"] = p->theta;
    if (auto* p = std::get_if<amp::PhaseVec>(&a)) j["thetas"] = p->thetas;
    if (auto* p = std::get_if<amp::Stab>(&a)) {
        j["a"] = p->a;
        j["b"] = p->b;
    }
    if (auto* p = std::get_if<amp::Char>(&a)) j["c"] = p->c;
    if (auto* p = std::get_if<amp::UnitPow>(&a)) {
        j["re"] = p->alpha.real();
        j["im"] = p->alpha.imag();
    }
    if (auto* p = std::get_if<amp::Table>(&a)) {
        j["values"] = json::array();
        for (cd v : p->values) j["values"].push_back(complex_pair(v));
    }
    if (auto* p = std::get_if<amp::MBox>(&a)) {
        j["k"] = p->k;
        j["alpha"] = complex_pair(p->alpha);
    }
    if (auto* p = std::get_if<amp::Sign>(&a)) j["set"] = p->set;
    if (auto* p = std::get_if<amp::Indicator>(&a)) j["set"] = p->set;
    return j;
}

AmplitudeFn amp_from_json(const json& j) {
    const json& t = field(j, "type");
    if (!t.is_string()) fail(Errc::parse, "amplitude type must be a string");
    std::string type = t.get<std::string>();
    if (type == "one") return amp::One{};
    if (type == "zero") return amp::Zero{};
    if (type == "phase") return amp::Phase{real_field(j, "theta")};
    if (type == "stab") return amp::Stab{int_field(j, "a"), int_field(j, "b")};
    if (type == "char") return amp::Char{int_field(j, "c")};
    if (type == "unit") return amp::UnitPow{{real_field(j, "re"), real_field(j, "im")}};
    if (type == "mbox") return amp::MBox{int_field(j, "k"), complex_from(field(j, "alpha"))};
    if (type == "sign") return amp::Sign{int_list(field(j, "set"))};
    if (type == "indicator") return amp::Indicator{int_list(field(j, "set"))};
    if (type == "table") {
        amp::Table r;
        const json& vs = field(j, "values");
        if (!vs.is_array()) fail(Errc::parse, "table values must be an array");
        for (const auto& v : vs) r.values.push_back(complex_from(v));
        return r;
    }
    if (type == "phasevec") {
        amp::PhaseVec r;
        const json& vs = field(j, "thetas");
        if (!vs.is_array()) fail(Errc::parse, "phasevec thetas must be an array");
        for (const auto& v : vs) {
            if (!v.is_number()) fail(Errc::parse, "phasevec thetas must be numbers");
            r.thetas.push_back(v.get<double>());
        }
        return r;
    }
    fail(Errc::parse, "unknown amplitude type '" + type + "'");
}

json diagram_to_json(const Diagram& d) {
    json j;
    j["dimension"] = d.dim();
    json nodes = json::object();
    for (const auto& n : d.nodes()) {
        json g;
        g["kind"] = kind_name(n.gen.kind);
        if (n.gen.kind == Kind::green || n.gen.kind == Kind::red || n.gen.kind == Kind::hbox)
            g["amp"] = amp_to_json(n.gen.amp);
        if (n.gen.kind == Kind::notdot) g["c"] = n.gen.c;
        g["legs"] = n.gen.legs();
        g["in"] = n.gen.m;
        nodes[n.id] = g;
    }
    j["nodes"] = nodes;
    json edges = json::array();
    for (const auto& [p, q] : d.edges()) edges.push_back(json::array({port_string(d, p), port_string(d, q)}));
    j["edges"] = edges;
    j["inputs"] = json::array();
    for (int p = 0; p < d.inputs(); ++p) j["inputs"].push_back("in:" + std::to_string(p));
    j["outputs"] = json::array();
    for (int p = 0; p < d.outputs(); ++p) j["outputs"].push_back("out:" + std::to_string(p));
    return j;
}

Diagram diagram_from_json(const json& j) {
    int64_t dim = int_field(j, "dimension");
    if (dim < 2) fail(Errc::parse, "dimension must be at least 2");
    Diagram d(dim);
    const json& nodes = field(j, "nodes");
    if (!nodes.is_object()) fail(Errc::parse, "nodes must be an object");
    for (const auto& [id, g] : nodes.items()) {
        Generator gen;
        const json& k = field(g, "kind");
        if (!k.is_string()) fail(Errc::parse, "kind must be a string");
        gen.kind = kind_from_name(k.get<std::string>());
        int64_t legs = int_field(g, "legs");
        int64_t in = g.contains("in") ? int_field(g, "in") : 0;
        if (legs < 0 || legs > 64 || in < 0 || in > legs) fail(Errc::parse, "bad leg counts on node '" + id + "'");
        if ((gen.kind == Kind::hplus || gen.kind == Kind::hminus || gen.kind == Kind::notdot) && !g.contains("in"))
            in = 1;
        gen.m = static_cast<int>(in);
        gen.n = static_cast<int>(legs - in);
        if (gen.kind == Kind::green || gen.kind == Kind::red || gen.kind == Kind::hbox)
            gen.amp = g.contains("amp") ? amp_from_json(g.at("amp")) : AmplitudeFn{amp::One{}};
        if (gen.kind == Kind::notdot) gen.c = g.contains("c") ? int_field(g, "c") : 0;
        d.add(gen, id);
    }
    const json& ins = field(j, "inputs");
    const json& outs = field(j, "outputs");
    if (!ins.is_array() || !outs.is_array()) fail(Errc::parse, "inputs/outputs must be arrays");
    d.set_boundary(static_cast<int>(ins.size()), static_cast<int>(outs.size()));
    const json& edges = field(j, "edges");
    if (!edges.is_array()) fail(Errc::parse, "edges must be an array");
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2) fail(Errc::parse, "edges must be port pairs");
        d.connect(parse_port(d, e[0]), parse_port(d, e[1]));
    }
    auto bind = [&](const json& list, bool input) {
        for (size_t p = 0; p < list.size(); ++p) {
            Port port = parse_port(d, list[p]);
            Port self = input ? Port::in(static_cast<int>(p)) : Port::out(static_cast<int>(p));
            if (port.side == Port::Side::node)
                d.connect(self, port);
            else if (!(port == self))
                fail(Errc::parse, "boundary list entry " + std::to_string(p) + " names a different position");
        }
    };
    bind(ins, true);
    bind(outs, false);
    return d;
}

Diagram diagram_from_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(Errc::parse, std::string("invalid JSON: ") + e.what());
    }
    return diagram_from_json(j);
}

json tensor_to_json(const Tensor& t) {
    json j;
    j["dim"] = t.dim();
    j["in_legs"] = t.in_legs();
    j["out_legs"] = t.out_legs();
    j["entries"] = json::array();
    for (cd v : t.data()) j["entries"].push_back(complex_pair(v));
    return j;
}

Tensor tensor_from_json(const json& j) {
    int64_t dim = int_field(j, "dim");
    int64_t in = int_field(j, "in_legs"), out = int_field(j, "out_legs");
    if (dim < 2 || in < 0 || out < 0 || in + out > 32) fail(Errc::parse, "bad tensor header");
    Tensor t(dim, static_cast<int>(in), static_cast<int>(out));
    const json& e = field(j, "entries");
    if (!e.is_array() || e.size() != t.size()) fail(Errc::parse, "tensor entry count does not match D^(m+n)");
    for (size_t i = 0; i < t.size(); ++i) t[i] = complex_from(e[i]);
    return t;
}

json params_to_json(const Params& p) {
    json j = json::object();
    for (const auto& [name, v] : p) {
        if (auto* i = std::get_if<int64_t>(&v)) j[name] = *i;
        else if (auto* r = std::get_if<double>(&v)) j[name] = *r;
        else if (auto* c = std::get_if<cd>(&v)) j[name] = complex_pair(*c);
        else j[name] = amp_to_json(std::get<AmplitudeFn>(v));
    }
    return j;
}

namespace {

Param param_from(const json& v) {
    if (v.is_number_integer()) return v.get<int64_t>();
    if (v.is_number()) return v.get<double>();
    if (v.is_array()) return complex_from(v);
    if (v.is_object()) return amp_from_json(v);
    fail(Errc::parse, "unsupported parameter value");
}

}  // namespace

Params params_from_json(const json& j) {
    if (!j.is_object()) fail(Errc::parse, "parameters must be a JSON object");
    Params p;
    for (const auto& [name, v] : j.items()) p[name] = param_from(v);
    return p;
}

Param param_from_text(const std::string& text) {
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded()) fail(Errc::parse, "cannot parse parameter value '" + text + "'");
    return param_from(v);
}

json suite_to_json(const std::vector<SuiteCell>& cells) {
    json out = json::array();
    for (const auto& c : cells) {
        json j;
        j["rule"] = c.rule;
        j["dim"] = c.dim;
        j["nu"] = c.nu;
        j["sample"] = c.sample;
        j["params"] = params_to_json(c.params);
        j["max_err"] = c.max_err;
        j["status"] = status_name(c.status);
        if (!c.note.empty()) j["note"] = c.note;
        out.push_back(j);
    }
    return out;
}

}  // namespace zxh
