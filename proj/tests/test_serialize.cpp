#include <gtest/gtest.h>

#include "construct.hpp"
#include "error.hpp"
#include "serialize.hpp"

using namespace zxh;

namespace {

const char* kCx = R"({
  "dimension": 3,
  "nodes": {
    "g": {"kind": "green", "amp": {"type": "one"}, "legs": 3, "in": 1},
    "r": {"kind": "red", "amp": {"type": "one"}, "legs": 3, "in": 2},
    "n": {"kind": "not", "c": 0, "legs": 2, "in": 1}
  },
  "edges": [["in:0", "g:0"], ["g:1", "out:0"], ["g:2", "r:1"], ["in:1", "r:0"], ["r:2", "n:0"], ["n:1", "out:1"]],
  "inputs": ["in:0", "in:1"],
  "outputs": ["out:0", "out:1"]
})";

}  // namespace

TEST(Serialize, AmplitudeRoundTrip) {
    std::vector<AmplitudeFn> amps = {amp::One{},       amp::Zero{},          amp::Phase{0.25},
                                     amp::PhaseVec{{0.1, 0.2, 0.3}}, amp::Stab{1, -2}, amp::Char{4},
                                     amp::UnitPow{cd(0.5, -1.5)},    amp::Table{{1.0, cd(0, 2), 3.0}},
                                     amp::MBox{2, cd(7, 1)},         amp::Sign{{1, -1}}, amp::Indicator{{0}}};
    Context ctx(3);
    for (const auto& a : amps) {
        AmplitudeFn b = amp_from_json(amp_to_json(a));
        EXPECT_EQ(amp_to_json(a), amp_to_json(b));
        for (int64_t t = -1; t <= 1; ++t) EXPECT_NEAR(std::abs(amp_eval(ctx, a, t) - amp_eval(ctx, b, t)), 0.0, 1e-15);
    }
}

TEST(Serialize, DiagramFileEvaluates) {
    Diagram d = diagram_from_text(kCx);
    Context ctx(3);
    Tensor t = evaluate(d, ctx);
    // Permutation matrix: one unit entry per column.
    for (size_t i = 0; i < t.size(); ++i) {
        double a = std::abs(t[i]);
        EXPECT_TRUE(a < 1e-10 || std::abs(a - 1.0) < 1e-10);
    }
    EXPECT_LT(max_abs_diff(t, evaluate(build_gadget("cx", {}, ctx), ctx)), 1e-10);
}

TEST(Serialize, DiagramRoundTrip) {
    Context ctx(4);
    for (const auto& g : gadgets()) {
        Params p;
        for (const auto& name : g.params) p[name] = name == "alpha" ? Param(cd(0.5, 0.5)) : Param(int64_t{1});
        if (g.name == "diag_theta") p["Theta"] = AmplitudeFn{amp::Phase{0.3}};
        if (g.name == "diag_a2") p["A"] = AmplitudeFn{amp::Char{1}};
        Diagram d = build_gadget(g.name, p, ctx);
        json j = diagram_to_json(d);
        Diagram e = diagram_from_json(j);
        EXPECT_EQ(diagram_to_json(e), j) << g.name;
        EXPECT_LT(max_abs_diff(evaluate(d, ctx), evaluate(e, ctx)), 1e-12) << g.name;
    }
}

TEST(Serialize, TensorRoundTrip) {
    Tensor t(3, 1, 2);
    for (size_t i = 0; i < t.size(); ++i) t[i] = cd(static_cast<double>(i), -0.5 * static_cast<double>(i));
    Tensor u = tensor_from_json(tensor_to_json(t));
    EXPECT_EQ(u.in_legs(), 1);
    EXPECT_EQ(u.out_legs(), 2);
    EXPECT_EQ(max_abs_diff(t, u), 0.0);
}

TEST(Serialize, ParamsRoundTrip) {
    Params p{{"k", int64_t{3}}, {"theta", 0.5}, {"alpha", cd(1, 2)}, {"A", AmplitudeFn{amp::Stab{1, 1}}}};
    Params q = params_from_json(params_to_json(p));
    EXPECT_EQ(params_to_json(q), params_to_json(p));
    EXPECT_TRUE(std::holds_alternative<int64_t>(param_from_text("4")));
    EXPECT_TRUE(std::holds_alternative<double>(param_from_text("0.25")));
    EXPECT_TRUE(std::holds_alternative<cd>(param_from_text("[1, 0]")));
    EXPECT_TRUE(std::holds_alternative<AmplitudeFn>(param_from_text(R"({"type":"char","c":2})")));
}

TEST(Serialize, ParseErrors) {
    auto code = [](const std::string& text) {
        try {
            diagram_from_text(text);
        } catch (const Error& e) {
            return static_cast<int>(e.code());
        }
        return 0;
    };
    int parse = static_cast<int>(Errc::parse);
    EXPECT_EQ(code("{not json"), parse);
    EXPECT_EQ(code(R"({"nodes": {}, "edges": [], "inputs": [], "outputs": []})"), parse);
    EXPECT_EQ(code(R"({"dimension": 1, "nodes": {}, "edges": [], "inputs": [], "outputs": []})"), parse);
    EXPECT_EQ(code(R"({"dimension": 3, "nodes": {"a": {"kind": "purple", "legs": 1}}, "edges": [["a:0", "out:0"]], "inputs": [], "outputs": ["out:0"]})"), parse);
    EXPECT_EQ(code(R"({"dimension": 3, "nodes": {}, "edges": [["x:0", "out:0"]], "inputs": [], "outputs": ["out:0"]})"), parse);
    EXPECT_EQ(code(R"({"dimension": 3, "nodes": {"a": {"kind": "hbox", "amp": {"type": "bogus"}, "legs": 1}}, "edges": [["a:0", "out:0"]], "inputs": [], "outputs": ["out:0"]})"), parse);
    EXPECT_THROW(amp_from_json(json{{"type", "stab"}, {"a", 1}}), Error);
    EXPECT_THROW(tensor_from_json(json{{"dim", 2}}), Error);
}

TEST(Serialize, MalformedWiringIsRejected) {
    // Parses, but leg 1 of the green dot is never connected.
    const char* text = R"({"dimension": 3, "nodes": {"a": {"kind": "green", "legs": 2, "in": 1}},
        "edges": [["in:0", "a:0"]], "inputs": ["in:0"], "outputs": []})";
    EXPECT_THROW(evaluate(diagram_from_text(text), Context(3)), Error);
}
