#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome run(const std::string& args) {
    std::string cmd = std::string(ZXH_CLI) + " " + args + " 2>/dev/null";
    Outcome r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json load(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

double entry_diff(const json& a, const json& b) {
    EXPECT_EQ(a["entries"].size(), b["entries"].size());
    double worst = 0.0;
    for (size_t i = 0; i < a["entries"].size() && i < b["entries"].size(); ++i) {
        std::complex<double> x(a["entries"][i][0].get<double>(), a["entries"][i][1].get<double>());
        std::complex<double> y(b["entries"][i][0].get<double>(), b["entries"][i][1].get<double>());
        worst = std::max(worst, std::abs(x - y));
    }
    return worst;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("zxh_cli_" + std::to_string(::getpid()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string at(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

}  // namespace

TEST_F(Cli, GadgetFileEvaluatesToTarget) {
    ASSERT_EQ(run("gadget cx --dim 3 -o " + at("cx.json")).code, 0);
    ASSERT_EQ(run("eval " + at("cx.json") + " -o " + at("value.json")).code, 0);
    ASSERT_EQ(run("gadget cx --dim 3 --emit-tensor -o " + at("target.json")).code, 0);
    json v = load(at("value.json"));
    EXPECT_EQ(v["dim"], 3);
    EXPECT_EQ(v["entries"].size(), 81u);
    EXPECT_LT(entry_diff(v, load(at("target.json"))), 1e-9);
}

TEST_F(Cli, ControlledPhaseTensor) {
    Outcome r = run("gadget cz --dim 4 --emit-tensor");
    ASSERT_EQ(r.code, 0);
    json t = json::parse(r.out);
    // Diagonal w^{xy} over labels -1..2.
    for (int x = -1; x <= 2; ++x)
        for (int y = -1; y <= 2; ++y) {
            size_t row = static_cast<size_t>((x + 1) * 4 + (y + 1));
            const json& e = t["entries"][row * 16 + row];
            std::complex<double> got(e[0].get<double>(), e[1].get<double>());
            EXPECT_LT(std::abs(got - std::polar(1.0, 2.0 * M_PI * x * y / 4.0)), 1e-9);
        }
}

TEST_F(Cli, NormalFormRoundTrip) {
    ASSERT_EQ(run("gadget fourier --dim 3 --emit-tensor -o " + at("f.json")).code, 0);
    ASSERT_EQ(run("normal-form --tensor " + at("f.json") + " -o " + at("nf.json")).code, 0);
    ASSERT_EQ(run("eval " + at("nf.json") + " -o " + at("back.json")).code, 0);
    EXPECT_LT(entry_diff(load(at("back.json")), load(at("f.json"))), 1e-8);
}

TEST_F(Cli, CheckExitCodes) {
    Outcome skip = run("check ZX-ZSP --dims 5..5");
    EXPECT_EQ(skip.code, 0);
    for (const auto& cell : json::parse(skip.out)) EXPECT_EQ(cell["status"], "skip");
    Outcome hm = run("check ZH-HM --nu 1.0 --dims 2..5");
    EXPECT_EQ(hm.code, 0);
    for (const auto& cell : json::parse(hm.out)) EXPECT_EQ(cell["status"], "pass");
    EXPECT_EQ(run("check NO-SUCH-RULE").code, 2);
    EXPECT_EQ(run("check --dims 1..3").code, 2);
    EXPECT_EQ(run("check --dims 4..2").code, 2);
    EXPECT_EQ(run("check --tol -1").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, CheckIsDeterministic) {
    ASSERT_EQ(run("check --dims 2..3 --seed 7 --samples 2 -o " + at("a.json")).code, 0);
    ASSERT_EQ(run("check --dims 2..3 --seed 7 --samples 2 -o " + at("b.json")).code, 0);
    std::ifstream a(at("a.json")), b(at("b.json"));
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    EXPECT_FALSE(sa.str().empty());
    EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(Cli, EvalErrors) {
    EXPECT_EQ(run("eval " + at("missing.json")).code, 2);
    std::ofstream(at("broken.json")) << "{\"dimension\": 3,";
    EXPECT_EQ(run("eval " + at("broken.json")).code, 2);
    std::ofstream(at("dangling.json"))
        << R"({"dimension":3,"nodes":{"a":{"kind":"green","legs":2,"in":1}},"edges":[["in:0","a:0"]],"inputs":["in:0"],"outputs":[]})";
    EXPECT_EQ(run("eval " + at("dangling.json")).code, 3);
    std::ofstream(at("scalars.json"))
        << R"({"dimension":3,"nodes":{"a":{"kind":"hbox","amp":{"type":"unit","re":2,"im":0},"legs":0},)"
        << R"("b":{"kind":"hbox","amp":{"type":"unit","re":3,"im":0},"legs":0}},"edges":[],"inputs":[],"outputs":[]})";
    Outcome r = run("eval " + at("scalars.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(json::parse(r.out)["entries"][0][0].get<double>(), 6.0, 1e-12);
}

TEST_F(Cli, GammaTableAndInfo) {
    Outcome g = run("gamma-table --dims 2..8");
    ASSERT_EQ(g.code, 0);
    std::istringstream lines(g.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "a,b,D,re,im,magnitude_class");
    int rows = 0;
    while (std::getline(lines, line)) {
        long a, b, d;
        double re, im;
        char cls[32] = {0};
        ASSERT_EQ(std::sscanf(line.c_str(), "%ld,%ld,%ld,%lf,%lf,%31s", &a, &b, &d, &re, &im, cls), 6) << line;
        // Direct sum of tau^{2ax + bx^2} with the well-tempered measure.
        std::complex<double> want = 0.0;
        long lo = -((d - 1) / 2);
        for (long x = lo; x < lo + d; ++x) {
            long e = ((2 * a * x + b * x * x) * ((d * d + 1) % (2 * d))) % (2 * d);
            want += std::polar(1.0, M_PI * static_cast<double>(e) / static_cast<double>(d));
        }
        want /= std::sqrt(static_cast<double>(d));
        EXPECT_LT(std::abs(std::complex<double>(re, im) - want), 1e-9) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 4 + 9 + 16 + 25 + 36 + 49 + 64);
    Outcome info = run("info --dim 4 --nu well-tempered");
    ASSERT_EQ(info.code, 0);
    json j = json::parse(info.out);
    EXPECT_EQ(j["L"], -1);
    EXPECT_EQ(j["U"], 2);
    EXPECT_EQ(j["sigma"], 1);
    EXPECT_EQ(run("info --dim 1").code, 2);
}
