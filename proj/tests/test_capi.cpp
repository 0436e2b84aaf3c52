#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "zxh/zxh.h"

using json = nlohmann::json;

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    zxh_string_free(s);
    return out;
}

const char* kWire = R"({"dimension": 3, "nodes": {"g": {"kind": "green", "legs": 2, "in": 1}},
  "edges": [["in:0", "g:0"], ["g:1", "out:0"]], "inputs": ["in:0"], "outputs": ["out:0"]})";

}  // namespace

TEST(CApi, ContextInfo) {
    zxh_context* ctx = nullptr;
    ASSERT_EQ(zxh_context_create(5, &ctx), ZXH_OK);
    EXPECT_EQ(zxh_context_dim(ctx), 5);
    char* info = nullptr;
    ASSERT_EQ(zxh_context_info(ctx, &info), ZXH_OK);
    json j = json::parse(take(info));
    EXPECT_EQ(j["D"], 5);
    EXPECT_EQ(j["U"], 2);
    EXPECT_EQ(j["L"], -2);
    EXPECT_TRUE(j["well_tempered"].get<bool>());
    EXPECT_NEAR(j["nu"].get<double>(), std::pow(5.0, -0.25), 1e-12);
    zxh_context_destroy(ctx);

    EXPECT_EQ(zxh_context_create(1, &ctx), ZXH_ERR_PARAM);
    EXPECT_NE(std::string(zxh_last_error()), "");
    EXPECT_EQ(zxh_context_create_nu(3, -1.0, &ctx), ZXH_ERR_PARAM);
}

TEST(CApi, EvaluateRoundTrip) {
    zxh_context* ctx = nullptr;
    zxh_diagram* d = nullptr;
    zxh_tensor* t = nullptr;
    ASSERT_EQ(zxh_context_create(3, &ctx), ZXH_OK);
    ASSERT_EQ(zxh_diagram_parse(kWire, &d), ZXH_OK);
    int in = -1, out = -1;
    ASSERT_EQ(zxh_diagram_boundary(d, &in, &out), ZXH_OK);
    EXPECT_EQ(in, 1);
    EXPECT_EQ(out, 1);
    ASSERT_EQ(zxh_evaluate(ctx, d, &t), ZXH_OK);
    int64_t dim = 0;
    int ti = 0, to = 0;
    size_t size = 0;
    ASSERT_EQ(zxh_tensor_shape(t, &dim, &ti, &to, &size), ZXH_OK);
    EXPECT_EQ(size, 9u);
    for (size_t i = 0; i < size; ++i) {
        double re = 0, im = 0;
        ASSERT_EQ(zxh_tensor_entry(t, i, &re, &im), ZXH_OK);
        EXPECT_NEAR(re, i % 4 == 0 ? 1.0 : 0.0, 1e-12);
        EXPECT_NEAR(im, 0.0, 1e-12);
    }
    double re = 0, im = 0;
    EXPECT_EQ(zxh_tensor_entry(t, 9, &re, &im), ZXH_ERR_SHAPE);

    char* text = nullptr;
    ASSERT_EQ(zxh_tensor_to_json(t, &text), ZXH_OK);
    zxh_tensor* back = nullptr;
    ASSERT_EQ(zxh_tensor_parse(text, &back), ZXH_OK);
    zxh_string_free(text);
    double diff = 1.0;
    ASSERT_EQ(zxh_tensor_max_abs_diff(t, back, &diff), ZXH_OK);
    EXPECT_EQ(diff, 0.0);

    ASSERT_EQ(zxh_diagram_to_json(d, &text), ZXH_OK);
    zxh_diagram* again = nullptr;
    ASSERT_EQ(zxh_diagram_parse(text, &again), ZXH_OK);
    zxh_string_free(text);

    zxh_diagram* both = nullptr;
    ASSERT_EQ(zxh_diagram_compose(d, again, 1, &both), ZXH_OK);
    ASSERT_EQ(zxh_diagram_boundary(both, &in, &out), ZXH_OK);
    EXPECT_EQ(in, 2);

    zxh_tensor_destroy(back);
    zxh_tensor_destroy(t);
    zxh_diagram_destroy(both);
    zxh_diagram_destroy(again);
    zxh_diagram_destroy(d);
    zxh_context_destroy(ctx);
}

TEST(CApi, ErrorCodes) {
    zxh_diagram* d = nullptr;
    EXPECT_EQ(zxh_diagram_parse("{broken", &d), ZXH_ERR_PARSE);
    EXPECT_EQ(d, nullptr);
    zxh_context* c3 = nullptr;
    zxh_context* c4 = nullptr;
    ASSERT_EQ(zxh_context_create(3, &c3), ZXH_OK);
    ASSERT_EQ(zxh_context_create(4, &c4), ZXH_OK);
    ASSERT_EQ(zxh_diagram_parse(kWire, &d), ZXH_OK);
    zxh_tensor* t = nullptr;
    EXPECT_NE(zxh_evaluate(c4, d, &t), ZXH_OK);
    double err = 0;
    int pass = 0;
    EXPECT_EQ(zxh_rule_check(c3, "ZX-NOPE", "{}", 1e-9, &err, &pass), ZXH_ERR_PARAM);
    zxh_context* c5 = nullptr;
    ASSERT_EQ(zxh_context_create(5, &c5), ZXH_OK);
    EXPECT_EQ(zxh_rule_check(c5, "ZX-ZSP", R"({"u": 1, "t": 2, "t'": 2})", 1e-9, &err, &pass), ZXH_ERR_PARAM);
    EXPECT_EQ(zxh_rule_check(c5, "ZX-HI", "{}", 1e-9, &err, &pass), ZXH_OK);
    EXPECT_EQ(pass, 1);
    zxh_diagram* out = nullptr;
    EXPECT_EQ(zxh_rule_apply(c3, d, "ZX-GFP", R"({"theta": 0.1, "phi": 0.2})", R"({"v0": "g", "v1": "g"})", &out),
              ZXH_ERR_MATCH);
    EXPECT_EQ(zxh_gadget_build(c3, "warp_drive", "{}", &out), ZXH_ERR_PARAM);
    EXPECT_EQ(zxh_mbox_gadget(c5, 100, 1.0, 0.0, &out), ZXH_ERR_OVERFLOW);
    EXPECT_EQ(zxh_evaluate(nullptr, d, &t), ZXH_ERR_PARAM);
    zxh_diagram_destroy(d);
    zxh_context_destroy(c3);
    zxh_context_destroy(c4);
    zxh_context_destroy(c5);
}

TEST(CApi, RulesAndSuite) {
    char* text = nullptr;
    ASSERT_EQ(zxh_rule_list(&text), ZXH_OK);
    EXPECT_EQ(json::parse(take(text)).size(), 61u);
    int failures = -1;
    ASSERT_EQ(zxh_check_suite(R"({"dim_lo": 2, "dim_hi": 3, "samples": 2, "rules": ["ZX-GF", "ZH-EC"]})", &text, &failures),
              ZXH_OK);
    json report = json::parse(take(text));
    EXPECT_EQ(failures, 0);
    ASSERT_FALSE(report.empty());
    EXPECT_EQ(report[0]["status"], "pass");

    zxh_context* ctx = nullptr;
    ASSERT_EQ(zxh_context_create(4, &ctx), ZXH_OK);
    zxh_diagram* lhs = nullptr;
    zxh_diagram* rhs = nullptr;
    ASSERT_EQ(zxh_rule_instantiate(ctx, "ZX-GI", "{}", &lhs, &rhs), ZXH_OK);
    zxh_tensor* a = nullptr;
    zxh_tensor* b = nullptr;
    ASSERT_EQ(zxh_evaluate(ctx, lhs, &a), ZXH_OK);
    ASSERT_EQ(zxh_evaluate(ctx, rhs, &b), ZXH_OK);
    double diff = 1.0;
    ASSERT_EQ(zxh_tensor_max_abs_diff(a, b, &diff), ZXH_OK);
    EXPECT_LT(diff, 1e-12);
    zxh_tensor_destroy(a);
    zxh_tensor_destroy(b);
    zxh_diagram_destroy(lhs);
    zxh_diagram_destroy(rhs);
    zxh_context_destroy(ctx);
}

TEST(CApi, GadgetsAndNormalForm) {
    zxh_context* ctx = nullptr;
    ASSERT_EQ(zxh_context_create(3, &ctx), ZXH_OK);
    zxh_diagram* cz = nullptr;
    zxh_tensor* target = nullptr;
    zxh_tensor* value = nullptr;
    ASSERT_EQ(zxh_gadget_build(ctx, "cz_pow", R"({"c": 2})", &cz), ZXH_OK);
    ASSERT_EQ(zxh_gadget_target(ctx, "cz_pow", R"({"c": 2})", &target), ZXH_OK);
    ASSERT_EQ(zxh_evaluate(ctx, cz, &value), ZXH_OK);
    double diff = 1.0;
    ASSERT_EQ(zxh_tensor_max_abs_diff(value, target, &diff), ZXH_OK);
    EXPECT_LT(diff, 1e-9);

    zxh_diagram* nf = nullptr;
    zxh_tensor* back = nullptr;
    ASSERT_EQ(zxh_normal_form(ctx, target, &nf), ZXH_OK);
    ASSERT_EQ(zxh_evaluate(ctx, nf, &back), ZXH_OK);
    ASSERT_EQ(zxh_tensor_max_abs_diff(back, target, &diff), ZXH_OK);
    EXPECT_LT(diff, 1e-8);

    char* text = nullptr;
    ASSERT_EQ(zxh_gadget_list(&text), ZXH_OK);
    EXPECT_EQ(json::parse(take(text)).size(), 18u);

    zxh_tensor_destroy(back);
    zxh_diagram_destroy(nf);
    zxh_tensor_destroy(value);
    zxh_tensor_destroy(target);
    zxh_diagram_destroy(cz);
    zxh_context_destroy(ctx);
}

TEST(CApi, GaussAndGamma) {
    double re = 0, im = 0;
    ASSERT_EQ(zxh_gauss_sum(1, 0, 4, &re, &im), ZXH_OK);
    EXPECT_NEAR(re, 2.0, 1e-9);
    EXPECT_NEAR(im, 2.0, 1e-9);
    EXPECT_EQ(zxh_gauss_sum(1, 0, 6, &re, &im), ZXH_ERR_PARAM);
    zxh_context* ctx = nullptr;
    ASSERT_EQ(zxh_context_create(7, &ctx), ZXH_OK);
    int64_t t = 0;
    int zero = 1;
    ASSERT_EQ(zxh_gamma(ctx, 0, 0, &re, &im, &t, &zero), ZXH_OK);
    EXPECT_NEAR(re, std::sqrt(7.0), 1e-10);
    EXPECT_EQ(t, 7);
    EXPECT_EQ(zero, 0);
    zxh_context_destroy(ctx);
    char* csv = nullptr;
    ASSERT_EQ(zxh_gamma_table(2, 3, &csv), ZXH_OK);
    std::string s = take(csv);
    EXPECT_EQ(s.rfind("a,b,D,re,im,magnitude_class\n", 0), 0u);
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 4 + 9);
}
