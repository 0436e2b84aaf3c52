#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zxh/zxh.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_semantic = 3;

struct Failure {
    int code;
    std::string message;
};

int exit_for(int status) {
    switch (status) {
        case ZXH_ERR_PARAM:
        case ZXH_ERR_PARSE: return exit_usage;
        default: return exit_semantic;
    }
}

void ok(int status) {
    if (status != ZXH_OK) throw Failure{exit_for(status), zxh_last_error()};
}

struct Deleter {
    void operator()(zxh_context* p) const { zxh_context_destroy(p); }
    void operator()(zxh_diagram* p) const { zxh_diagram_destroy(p); }
    void operator()(zxh_tensor* p) const { zxh_tensor_destroy(p); }
    void operator()(char* p) const { zxh_string_free(p); }
};
using ContextPtr = std::unique_ptr<zxh_context, Deleter>;
using DiagramPtr = std::unique_ptr<zxh_diagram, Deleter>;
using TensorPtr = std::unique_ptr<zxh_tensor, Deleter>;
using StringPtr = std::unique_ptr<char, Deleter>;

std::string take(char* s) { return std::string(StringPtr(s).get()); }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{exit_usage, "cannot open " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw Failure{exit_usage, "cannot write " + path};
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

// "well-tempered" or a positive real.
std::optional<double> parse_nu(const std::string& s) {
    if (s.empty() || s == "well-tempered") return std::nullopt;
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size() || !(v > 0)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Failure{exit_usage, "--nu expects a positive real or 'well-tempered'"};
    }
}

std::pair<int64_t, int64_t> parse_dims(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int64_t d = std::stoll(s);
            return {d, d};
        }
        return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw Failure{exit_usage, "--dims expects A..B"};
    }
}

ContextPtr make_context(int64_t dim, const std::optional<double>& nu) {
    zxh_context* c = nullptr;
    ok(nu ? zxh_context_create_nu(dim, *nu, &c) : zxh_context_create(dim, &c));
    return ContextPtr(c);
}

json parse_params(const std::vector<std::string>& items) {
    json p = json::object();
    for (const auto& kv : items) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw Failure{exit_usage, "--param expects key=value"};
        json v = json::parse(kv.substr(eq + 1), nullptr, false);
        if (v.is_discarded()) throw Failure{exit_usage, "cannot parse value of " + kv.substr(0, eq)};
        p[kv.substr(0, eq)] = v;
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qudit ZX/ZH diagrams with well-tempered semantics"};
    app.require_subcommand(1);

    std::string out_path, nu_text, dims_text, input, tensor_path, rule, name;
    int64_t dim = 0;
    double tol = 1e-8;
    uint64_t seed = 0;
    int samples = 5;
    bool emit_tensor = false;
    std::vector<std::string> params;

    auto* eval = app.add_subcommand("eval", "Evaluate a diagram file to a tensor");
    eval->add_option("file", input, "Diagram file")->required();
    eval->add_option("--nu", nu_text, "Real nu or 'well-tempered'");
    eval->add_option("-o", out_path, "Output path");

    auto* check = app.add_subcommand("check", "Run the rewrite soundness suite");
    check->add_option("rule", rule, "Rule id; all rules when omitted");
    check->add_option("--dim", dim, "Single dimension");
    check->add_option("--dims", dims_text, "Dimension range A..B (default 2..6)");
    check->add_option("--nu", nu_text, "Real nu or 'well-tempered'");
    check->add_option("--tol", tol, "Absolute tolerance");
    check->add_option("--seed", seed, "Sampling seed");
    check->add_option("--samples", samples, "Parameter samples per rule and dimension");
    check->add_option("-o", out_path, "Report path");

    auto* gadget = app.add_subcommand("gadget", "Build a named gadget");
    gadget->add_option("name", name, "Gadget name")->required();
    gadget->add_option("--dim", dim, "Dimension")->required();
    gadget->add_option("--nu", nu_text, "Real nu or 'well-tempered'");
    gadget->add_option("--param", params, "Parameter key=value (JSON value)");
    gadget->add_flag("--emit-tensor", emit_tensor, "Write the closed-form target tensor instead");
    gadget->add_option("-o", out_path, "Output path");

    auto* nf = app.add_subcommand("normal-form", "Synthesize a normal-form diagram for a tensor");
    nf->add_option("--tensor", tensor_path, "Tensor file")->required();
    nf->add_option("-o", out_path, "Output path");

    auto* gt = app.add_subcommand("gamma-table", "Tabulate the Gaussian integral Gamma(a,b,D)");
    gt->add_option("--dim", dim, "Single dimension");
    gt->add_option("--dims", dims_text, "Dimension range A..B (default 2..8)");
    gt->add_option("-o", out_path, "Output path");

    auto* info = app.add_subcommand("info", "Print the constants for a dimension");
    info->add_option("--dim", dim, "Dimension")->required();
    info->add_option("--nu", nu_text, "Real nu or 'well-tempered'");
    info->add_option("-o", out_path, "Output path");

    auto* rules = app.add_subcommand("rules", "List the rewrite catalog");
    rules->add_option("-o", out_path, "Output path");
    auto* gadgets = app.add_subcommand("gadgets", "List the gadget builders");
    gadgets->add_option("-o", out_path, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*eval) {
            zxh_diagram* raw = nullptr;
            ok(zxh_diagram_parse(read_file(input).c_str(), &raw));
            DiagramPtr d(raw);
            ContextPtr ctx = make_context(zxh_diagram_dim(d.get()), parse_nu(nu_text));
            zxh_tensor* t = nullptr;
            ok(zxh_evaluate(ctx.get(), d.get(), &t));
            TensorPtr tensor(t);
            char* s = nullptr;
            ok(zxh_tensor_to_json(tensor.get(), &s));
            emit(take(s), out_path);
            return exit_ok;
        }
        if (*check) {
            json opt;
            auto [lo, hi] = dims_text.empty() ? std::pair<int64_t, int64_t>{2, 6} : parse_dims(dims_text);
            if (dim != 0) lo = hi = dim;
            opt["dim_lo"] = lo;
            opt["dim_hi"] = hi;
            opt["samples"] = samples;
            opt["seed"] = seed;
            opt["tol"] = tol;
            if (auto nu = parse_nu(nu_text)) opt["nu"] = *nu;
            if (!rule.empty()) opt["rules"] = json::array({rule});
            char* report = nullptr;
            int failures = 0;
            ok(zxh_check_suite(opt.dump().c_str(), &report, &failures));
            emit(take(report), out_path);
            return failures == 0 ? exit_ok : exit_check_failed;
        }
        if (*gadget) {
            ContextPtr ctx = make_context(dim, parse_nu(nu_text));
            std::string p = parse_params(params).dump();
            char* s = nullptr;
            if (emit_tensor) {
                zxh_tensor* t = nullptr;
                ok(zxh_gadget_target(ctx.get(), name.c_str(), p.c_str(), &t));
                TensorPtr tensor(t);
                ok(zxh_tensor_to_json(tensor.get(), &s));
            } else {
                zxh_diagram* d = nullptr;
                ok(zxh_gadget_build(ctx.get(), name.c_str(), p.c_str(), &d));
                DiagramPtr diagram(d);
                ok(zxh_diagram_to_json(diagram.get(), &s));
            }
            emit(take(s), out_path);
            return exit_ok;
        }
        if (*nf) {
            zxh_tensor* t = nullptr;
            ok(zxh_tensor_parse(read_file(tensor_path).c_str(), &t));
            TensorPtr tensor(t);
            int64_t d = 0;
            ok(zxh_tensor_shape(tensor.get(), &d, nullptr, nullptr, nullptr));
            ContextPtr ctx = make_context(d, std::nullopt);
            zxh_diagram* raw = nullptr;
            ok(zxh_normal_form(ctx.get(), tensor.get(), &raw));
            DiagramPtr diagram(raw);
            char* s = nullptr;
            ok(zxh_diagram_to_json(diagram.get(), &s));
            emit(take(s), out_path);
            return exit_ok;
        }
        if (*gt) {
            auto [lo, hi] = dims_text.empty() ? std::pair<int64_t, int64_t>{2, 8} : parse_dims(dims_text);
            if (dim != 0) lo = hi = dim;
            char* csv = nullptr;
            ok(zxh_gamma_table(lo, hi, &csv));
            emit(take(csv), out_path);
            return exit_ok;
        }
        if (*info) {
            ContextPtr ctx = make_context(dim, parse_nu(nu_text));
            char* s = nullptr;
            ok(zxh_context_info(ctx.get(), &s));
            emit(take(s), out_path);
            return exit_ok;
        }
        char* s = nullptr;
        ok(*rules ? zxh_rule_list(&s) : zxh_gadget_list(&s));
        emit(take(s), out_path);
        return exit_ok;
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    }
}
