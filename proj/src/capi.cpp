#include "zxh/zxh.h"

#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <new>
#include <sstream>
#include <string>

#include "construct.hpp"
#include "error.hpp"
#include "gauss.hpp"
#include "rewrite.hpp"
#include "serialize.hpp"

struct zxh_context {
    zxh::Context ctx;
};
struct zxh_diagram {
    zxh::Diagram d;
};
struct zxh_tensor {
    zxh::Tensor t;
};

namespace {

thread_local std::string last_error;

template <class F>
int guarded(F&& f) {
    last_error.clear();
    try {
        f();
        return ZXH_OK;
    } catch (const zxh::Error& e) {
        last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return ZXH_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return ZXH_ERR_TOO_LARGE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return ZXH_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) zxh::fail(zxh::Errc::param, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

zxh::Params parse_params(const char* text) {
    if (!text || !*text) return {};
    return zxh::params_from_json(zxh::json::parse(text));
}

const zxh::RuleSpec& rule_named(const char* id) {
    need(id, "rule id");
    const zxh::RuleSpec* r = zxh::find_rule(id);
    if (!r) zxh::fail(zxh::Errc::param, std::string("unknown rule: ") + id);
    return *r;
}

zxh::json complex_json(zxh::cd v) { return zxh::json::array({v.real(), v.imag()}); }

}  // namespace

extern "C" {

const char* zxh_last_error(void) { return last_error.c_str(); }

void zxh_string_free(char* s) { std::free(s); }

int zxh_context_create(int64_t dim, zxh_context** out) {
    return guarded([&] {
        need(out, "out");
        *out = new zxh_context{zxh::Context(dim)};
    });
}

int zxh_context_create_nu(int64_t dim, double nu, zxh_context** out) {
    return guarded([&] {
        need(out, "out");
        *out = new zxh_context{zxh::Context(dim, nu)};
    });
}

void zxh_context_destroy(zxh_context* ctx) { delete ctx; }

int64_t zxh_context_dim(const zxh_context* ctx) { return ctx ? ctx->ctx.dim() : 0; }

int zxh_context_info(const zxh_context* ctx, char** json_out) {
    return guarded([&] {
        need(ctx, "context");
        need(json_out, "out");
        const auto& c = ctx->ctx;
        zxh::json j;
        j["D"] = c.dim();
        j["L"] = c.lo();
        j["U"] = c.hi();
        j["sigma"] = c.sigma();
        j["nu"] = c.nu();
        j["well_tempered"] = c.well_tempered();
        j["tau"] = complex_json(c.tau());
        j["omega"] = complex_json(c.omega());
        *json_out = dup(j.dump(2));
    });
}

int zxh_diagram_parse(const char* text, zxh_diagram** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        std::string s(text);
        size_t first = s.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && s[first] == '{')
            *out = new zxh_diagram{zxh::diagram_from_json(zxh::json::parse(s))};
        else
            *out = new zxh_diagram{zxh::diagram_from_text(s)};
    });
}

int zxh_diagram_to_json(const zxh_diagram* d, char** json_out) {
    return guarded([&] {
        need(d, "diagram");
        need(json_out, "out");
        *json_out = dup(zxh::diagram_to_json(d->d).dump(2));
    });
}

void zxh_diagram_destroy(zxh_diagram* d) { delete d; }

int64_t zxh_diagram_dim(const zxh_diagram* d) { return d ? d->d.dim() : 0; }

int zxh_diagram_boundary(const zxh_diagram* d, int* inputs, int* outputs) {
    return guarded([&] {
        need(d, "diagram");
        if (inputs) *inputs = d->d.inputs();
        if (outputs) *outputs = d->d.outputs();
    });
}

int zxh_diagram_adjoint(const zxh_context* ctx, const zxh_diagram* d, zxh_diagram** out) {
    return guarded([&] {
        need(ctx, "context");
        need(d, "diagram");
        need(out, "out");
        *out = new zxh_diagram{zxh::adjoint(d->d, ctx->ctx)};
    });
}

int zxh_diagram_compose(const zxh_diagram* first, const zxh_diagram* second, int parallel, zxh_diagram** out) {
    return guarded([&] {
        need(first, "first");
        need(second, "second");
        need(out, "out");
        *out = new zxh_diagram{parallel ? zxh::compose_parallel(first->d, second->d)
                                        : zxh::compose_serial(first->d, second->d)};
    });
}

int zxh_evaluate(const zxh_context* ctx, const zxh_diagram* d, zxh_tensor** out) {
    return guarded([&] {
        need(ctx, "context");
        need(d, "diagram");
        need(out, "out");
        *out = new zxh_tensor{zxh::evaluate(d->d, ctx->ctx)};
    });
}

int zxh_tensor_parse(const char* json, zxh_tensor** out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        *out = new zxh_tensor{zxh::tensor_from_json(zxh::json::parse(json))};
    });
}

int zxh_tensor_to_json(const zxh_tensor* t, char** json_out) {
    return guarded([&] {
        need(t, "tensor");
        need(json_out, "out");
        *json_out = dup(zxh::tensor_to_json(t->t).dump(2));
    });
}

void zxh_tensor_destroy(zxh_tensor* t) { delete t; }

int zxh_tensor_shape(const zxh_tensor* t, int64_t* dim, int* in_legs, int* out_legs, size_t* size) {
    return guarded([&] {
        need(t, "tensor");
        if (dim) *dim = t->t.dim();
        if (in_legs) *in_legs = t->t.in_legs();
        if (out_legs) *out_legs = t->t.out_legs();
        if (size) *size = t->t.size();
    });
}

int zxh_tensor_entry(const zxh_tensor* t, size_t index, double* re, double* im) {
    return guarded([&] {
        need(t, "tensor");
        if (index >= t->t.size()) zxh::fail(zxh::Errc::shape, "entry index out of range");
        if (re) *re = t->t[index].real();
        if (im) *im = t->t[index].imag();
    });
}

int zxh_tensor_max_abs_diff(const zxh_tensor* a, const zxh_tensor* b, double* out) {
    return guarded([&] {
        need(a, "first tensor");
        need(b, "second tensor");
        need(out, "out");
        *out = zxh::max_abs_diff(a->t, b->t);
    });
}

int zxh_rule_list(char** json_out) {
    return guarded([&] {
        need(json_out, "out");
        zxh::json arr = zxh::json::array();
        for (const auto& r : zxh::catalog()) {
            zxh::json j;
            j["id"] = r.id;
            j["params"] = r.params;
            j["nu"] = r.nu == zxh::NuRequirement::any ? "any" : "well_tempered";
            j["max_dim"] = r.max_dim;
            arr.push_back(j);
        }
        *json_out = dup(arr.dump(2));
    });
}

int zxh_rule_instantiate(const zxh_context* ctx, const char* rule, const char* params_json, zxh_diagram** lhs,
                         zxh_diagram** rhs) {
    return guarded([&] {
        need(ctx, "context");
        need(lhs, "lhs");
        need(rhs, "rhs");
        auto sides = zxh::instantiate(rule_named(rule), parse_params(params_json), ctx->ctx);
        *lhs = new zxh_diagram{std::move(sides.first)};
        *rhs = new zxh_diagram{std::move(sides.second)};
    });
}

int zxh_rule_check(const zxh_context* ctx, const char* rule, const char* params_json, double tol, double* max_err,
                   int* pass) {
    return guarded([&] {
        need(ctx, "context");
        auto rep = zxh::check_soundness(rule_named(rule), parse_params(params_json), ctx->ctx, tol);
        if (max_err) *max_err = rep.max_err;
        if (pass) *pass = rep.pass ? 1 : 0;
    });
}

int zxh_rule_apply(const zxh_context* ctx, const zxh_diagram* host, const char* rule, const char* params_json,
                   const char* anchor_json, zxh_diagram** out) {
    return guarded([&] {
        need(ctx, "context");
        need(host, "host");
        need(anchor_json, "anchor");
        need(out, "out");
        zxh::json a = zxh::json::parse(anchor_json);
        if (!a.is_object()) zxh::fail(zxh::Errc::parse, "anchor must be a JSON object");
        std::map<std::string, std::string> anchor;
        for (const auto& [k, v] : a.items()) anchor[k] = v.get<std::string>();
        *out = new zxh_diagram{zxh::apply(host->d, rule_named(rule), parse_params(params_json), anchor, ctx->ctx)};
    });
}

int zxh_check_suite(const char* options_json, char** report_json, int* failures) {
    return guarded([&] {
        need(report_json, "out");
        zxh::SuiteOptions opt;
        if (options_json && *options_json) {
            zxh::json j = zxh::json::parse(options_json);
            if (!j.is_object()) zxh::fail(zxh::Errc::parse, "options must be a JSON object");
            opt.dim_lo = j.value("dim_lo", opt.dim_lo);
            opt.dim_hi = j.value("dim_hi", opt.dim_hi);
            opt.samples = j.value("samples", opt.samples);
            opt.seed = j.value("seed", opt.seed);
            opt.tol = j.value("tol", opt.tol);
            if (j.contains("nu") && !j["nu"].is_null()) opt.nu = j["nu"].get<double>();
            if (j.contains("rules")) opt.rules = j["rules"].get<std::vector<std::string>>();
        }
        for (const auto& id : opt.rules) rule_named(id.c_str());
        if (opt.dim_lo < 2 || opt.dim_hi < opt.dim_lo) zxh::fail(zxh::Errc::param, "invalid dimension range");
        if (!(opt.tol > 0)) zxh::fail(zxh::Errc::param, "tolerance must be positive");
        if (opt.samples < 1) zxh::fail(zxh::Errc::param, "samples must be positive");
        auto cells = zxh::check_all(opt);
        int bad = 0;
        for (const auto& c : cells) bad += c.status == zxh::CellStatus::fail;
        if (failures) *failures = bad;
        *report_json = dup(zxh::suite_to_json(cells).dump(2));
    });
}

int zxh_gadget_list(char** json_out) {
    return guarded([&] {
        need(json_out, "out");
        zxh::json arr = zxh::json::array();
        for (const auto& g : zxh::gadgets()) arr.push_back({{"name", g.name}, {"params", g.params}});
        *json_out = dup(arr.dump(2));
    });
}

int zxh_gadget_build(const zxh_context* ctx, const char* name, const char* params_json, zxh_diagram** out) {
    return guarded([&] {
        need(ctx, "context");
        need(name, "name");
        need(out, "out");
        *out = new zxh_diagram{zxh::build_gadget(name, parse_params(params_json), ctx->ctx)};
    });
}

int zxh_gadget_target(const zxh_context* ctx, const char* name, const char* params_json, zxh_tensor** out) {
    return guarded([&] {
        need(ctx, "context");
        need(name, "name");
        need(out, "out");
        *out = new zxh_tensor{zxh::gadget_target(name, parse_params(params_json), ctx->ctx)};
    });
}

int zxh_mbox_gadget(const zxh_context* ctx, int m, double alpha_re, double alpha_im, zxh_diagram** out) {
    return guarded([&] {
        need(ctx, "context");
        need(out, "out");
        *out = new zxh_diagram{zxh::mbox_gadget(m, {alpha_re, alpha_im}, ctx->ctx)};
    });
}

int zxh_normal_form(const zxh_context* ctx, const zxh_tensor* omega, zxh_diagram** out) {
    return guarded([&] {
        need(ctx, "context");
        need(omega, "tensor");
        need(out, "out");
        *out = new zxh_diagram{zxh::normal_form(omega->t, ctx->ctx)};
    });
}

int zxh_gauss_sum(int64_t r, int64_t s, int64_t n, double* re, double* im) {
    return guarded([&] {
        zxh::cd v = zxh::gauss_sum(r, s, n);
        if (re) *re = v.real();
        if (im) *im = v.imag();
    });
}

int zxh_gamma(const zxh_context* ctx, int64_t a, int64_t b, double* re, double* im, int64_t* t, int* zero) {
    return guarded([&] {
        need(ctx, "context");
        zxh::GammaValue g = zxh::gamma(a, b, ctx->ctx);
        if (re) *re = g.value.real();
        if (im) *im = g.value.imag();
        if (t) *t = g.t;
        if (zero) *zero = g.zero ? 1 : 0;
    });
}

int zxh_gamma_table(int64_t dim_lo, int64_t dim_hi, char** csv_out) {
    return guarded([&] {
        need(csv_out, "out");
        if (dim_lo < 2 || dim_hi < dim_lo) zxh::fail(zxh::Errc::param, "invalid dimension range");
        std::ostringstream os;
        os << "a,b,D,re,im,magnitude_class\n" << std::setprecision(17);
        for (int64_t d = dim_lo; d <= dim_hi; ++d) {
            zxh::Context ctx(d);
            for (int64_t a = ctx.lo(); a <= ctx.hi(); ++a)
                for (int64_t b = ctx.lo(); b <= ctx.hi(); ++b) {
                    zxh::GammaValue g = zxh::gamma(a, b, ctx);
                    os << a << ',' << b << ',' << d << ',' << g.value.real() << ',' << g.value.imag() << ','
                       << (g.zero ? std::string("zero") : "sqrt_t(" + std::to_string(g.t) + ")") << '\n';
                }
        }
        *csv_out = dup(os.str());
    });
}

}  // extern "C"
