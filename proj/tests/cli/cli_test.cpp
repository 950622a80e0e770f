#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adiclab/adiclab.hpp"
#include "adiclab_cli/commands.hpp"
#include "adiclab_cli/config.hpp"

namespace fs = std::filesystem;
using namespace adiclab::cli;
using nlohmann::json;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "adiclab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("adiclab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const char* name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

}  // namespace

TEST(Construct, SpecExamples) {
    EXPECT_EQ(invoke({"construct", "--mean", "0", "--length", "10"}).out, "0000000000\n");
    EXPECT_EQ(invoke({"construct", "--tau", "1/2,1/2,0,0", "--length", "6"}).out, "010101\n");
    EXPECT_EQ(invoke({"construct", "--rational", "1/3", "--base", "4", "--length", "5"}).out, "11111\n");
    EXPECT_EQ(invoke({"construct", "--mean", "3", "--length", "4"}).out, "3333\n");
    EXPECT_EQ(invoke({"construct", "--rational", "0.25", "--length", "3"}).out, "100\n");
}

TEST(Construct, BlockConfigInline) {
    Outcome r = invoke({"construct", "--length", "8", "--block",
                    R"({"schedule":{"family":"polynomial","degree":1},"columns":{"kind":"constant","tau":["1/4","1/4","1/4","1/4"]}})"});
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out, "01230123\n");
}

TEST(Construct, UsageErrors) {
    EXPECT_EQ(invoke({"construct", "--length", "10"}).status, kExitUsage);
    EXPECT_EQ(invoke({"construct", "--mean", "1", "--tau", "1/4,1/4,1/4,1/4", "--length", "3"}).status, kExitUsage);
    EXPECT_EQ(invoke({"construct", "--mean", "4", "--length", "3"}).status, kExitUsage);
    EXPECT_EQ(invoke({"construct", "--mean", "1", "--length", "100000001"}).status, kExitUsage);
    EXPECT_EQ(invoke({"construct", "--mean", "1", "--length", "0"}).status, kExitUsage);
    EXPECT_EQ(invoke({"construct", "--tau", "1/2,1/2,0", "--length", "3"}).status, kExitUsage);
    EXPECT_EQ(invoke({"construct", "--tau", "1/2,1/3,0,0", "--length", "3"}).status, kExitUsage);
    EXPECT_EQ(invoke({"construct", "--rational", "3/2", "--length", "3"}).status, kExitUsage);
    EXPECT_EQ(invoke({"construct", "--bogus"}).status, kExitUsage);
    EXPECT_EQ(invoke({}).status, kExitUsage);
}

TEST(Construct, ScheduleRejectionIsVerbatim) {
    Outcome r = invoke({"construct", "--length", "8", "--block",
                    R"({"schedule":{"family":"geometric","ratio":2},"columns":{"kind":"constant","tau":[1,0,0,0]}})"});
    EXPECT_EQ(r.status, kExitUsage);
    EXPECT_NE(r.err.find("s_{k+1} / sum_{i<=k} s_i -> 0"), std::string::npos) << r.err;
}

TEST_F(TempDir, ConstructWritesHeaderAndSidecar) {
    std::string out = path("digits.txt");
    Outcome r = invoke({"construct", "--tau", "1/2,1/2,0,0", "--length", "6", "--out", out});
    ASSERT_EQ(r.status, 0) << r.err;
    std::string text = slurp(out);
    json side = json::parse(slurp(out + ".json"));
    std::string hash = config_hash(side.at("config"));
    EXPECT_EQ(text, "# adiclab 0.1.0 config-hash=" + hash + "\n010101\n");
    EXPECT_EQ(side.at("provenance").at("config_hash"), hash);
    EXPECT_EQ(side.at("config").at("tau"), json::array({"1/2", "1/2", "0/1", "0/1"}));
}

TEST_F(TempDir, SidecarReproducesTheRun) {
    std::string a = path("a.txt");
    std::string b = path("b.txt");
    ASSERT_EQ(invoke({"construct", "--mean", "1.25", "--length", "500", "--out", a}).status, 0);
    Outcome r = invoke({"construct", "--config", a + ".json", "--out", b});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a + ".json"), slurp(b + ".json"));
}

TEST_F(TempDir, FlagWinsOverConfigWithWarning) {
    std::string cfg = path("cfg.json");
    std::ofstream(cfg) << R"({"command": "construct", "mean": "0", "length": 5})";
    Outcome r = invoke({"construct", "--config", cfg, "--length", "3"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "000\n");
    EXPECT_NE(r.err.find("warning: --length"), std::string::npos) << r.err;
}

TEST_F(TempDir, ConfigErrors) {
    std::string cfg = path("cfg.json");
    std::ofstream(cfg) << R"({"mean": "0", "length": 5, "colour": "red"})";
    EXPECT_EQ(invoke({"construct", "--config", cfg}).status, kExitUsage);
    std::ofstream(cfg) << "{ not json";
    EXPECT_EQ(invoke({"construct", "--config", cfg}).status, kExitUsage);
    std::ofstream(cfg, std::ios::trunc) << R"({"command": "verify"})";
    EXPECT_EQ(invoke({"construct", "--config", cfg, "--mean", "0", "--length", "2"}).status, kExitUsage);
    EXPECT_EQ(invoke({"construct", "--config", path("missing.json")}).status, kExitUsage);
}

TEST_F(TempDir, JsonDigitsDocument) {
    std::string out = path("d.json");
    ASSERT_EQ(invoke({"construct", "--rational", "1/5", "--length", "6", "--format", "json", "--out", out}).status, 0);
    json doc = json::parse(slurp(out));
    EXPECT_EQ(doc.at("digits"), "030303");
    EXPECT_EQ(doc.at("provenance").at("config_hash"), config_hash(doc.at("config")));
}

TEST(Normalize, ConfigsRoundTrip) {
    const json raws[] = {
        {{"mean", "1.5"}, {"length", 10}},
        {{"tau", "0.25,1/4,0.5,0"}, {"length", "1e3"}, {"format", "json"}},
        {{"rational", 0.75}, {"length", 3}, {"base", 3}},
    };
    for (const json& raw : raws) {
        json once = normalize_construct(raw);
        EXPECT_EQ(normalize_construct(json::parse(once.dump())), once) << raw.dump();
    }
    json a = normalize_analyze({{"mean", "3/2"}, {"checkpoints", "10,100"}, {"tol", "0.01"}});
    EXPECT_EQ(normalize_analyze(a), a);
    EXPECT_EQ(a.at("tol"), "1/100");
    json d = normalize_dimension({{"sweep", "0:3:1/2"}});
    EXPECT_EQ(normalize_dimension(d), d);
    json v = normalize_verify({{"module", "entropy_dim"}});
    EXPECT_EQ(normalize_verify(v), v);
}

TEST(Normalize, DecimalsAreExact) {
    json c = normalize_construct({{"mean", "0.1"}, {"length", 1}});
    EXPECT_EQ(c.at("mean"), "1/10");
    json f = normalize_construct({{"mean", 0.1}, {"length", 1}});
    EXPECT_EQ(f.at("mean"), "1/10");
}

TEST(ConfigHash, StableAndSensitive) {
    json a{{"b", 1}, {"a", "x"}};
    json b{{"a", "x"}, {"b", 1}};
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_NE(config_hash(a), config_hash(json{{"a", "x"}, {"b", 2}}));
    EXPECT_EQ(config_hash(json::object()).size(), 16u);
    // FNV-1a of "{}"
    EXPECT_EQ(config_hash(json::object()), "08f44b07b5901a25");
}

TEST_F(TempDir, AnalyzeRepeatedQuarterFile) {
    std::string in = path("q.txt");
    {
        std::ofstream f(in);
        f << "# a comment line\n";
        for (int i = 0; i < 250; ++i) f << "0123";
        f << "\n";
    }
    Outcome r = invoke({"analyze", "--in", in});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out,
              "n,v0,v1,v2,v3,r_n\n"
              "10,0.3,0.3,0.2,0.2,1.3\n"
              "100,0.25,0.25,0.25,0.25,1.5\n"
              "1000,0.25,0.25,0.25,0.25,1.5\n");
}

TEST_F(TempDir, AnalyzeRejectsBadDigits) {
    std::string in = path("bad.txt");
    std::ofstream(in) << "0123x\n";
    Outcome r = invoke({"analyze", "--in", in});
    EXPECT_EQ(r.status, kExitUsage);
    EXPECT_NE(r.err.find("1:5"), std::string::npos) << r.err;
    std::ofstream(in, std::ios::trunc) << "01234\n";
    EXPECT_EQ(invoke({"analyze", "--in", in}).status, kExitUsage);
    std::ofstream(in, std::ios::trunc) << "0123\n";
    EXPECT_EQ(invoke({"analyze", "--in", in, "--checkpoints", "2,5"}).status, kExitUsage);
    EXPECT_EQ(invoke({"analyze", "--in", path("nope.txt")}).status, kExitUsage);
}

TEST_F(TempDir, AnalyzeOwnConstructOutput) {
    std::string digits = path("third.txt");
    ASSERT_EQ(invoke({"construct", "--rational", "1/5", "--length", "10000", "--out", digits}).status, 0);
    Outcome r = invoke({"analyze", "--in", digits, "--checkpoints", "10000", "--format", "json"});
    ASSERT_EQ(r.status, 0) << r.err;
    json doc = json::parse(r.out);
    json freqs = doc.at("trace").at("reports").at(0).at("freqs");
    EXPECT_EQ(freqs, json::array({"1/2", "0/1", "0/1", "1/2"}));
}

TEST(Analyze, InlineMeanTarget) {
    Outcome r = invoke({"analyze", "--mean", "3/2", "--checkpoints", "100000", "--format", "json"});
    ASSERT_EQ(r.status, 0) << r.err;
    json report = json::parse(r.out).at("trace").at("reports").at(0);
    adiclab::Rational mean = adiclab::Rational::parse(report.at("mean").get<std::string>());
    EXPECT_LE((mean - adiclab::Rational(3, 2)).abs(), adiclab::Rational(1, 1000));
}

TEST(Analyze, NormalityVerdictIsDataNotFailure) {
    Outcome r = invoke({"analyze", "--mean", "0", "--length", "100", "--tol", "1/8", "--format", "json"});
    EXPECT_EQ(r.status, 0);
    json doc = json::parse(r.out);
    EXPECT_FALSE(doc.at("weak_normality").at("consistent").get<bool>());
    EXPECT_EQ(doc.at("weak_normality").at("max_deviation"), "3/4");
}

TEST(Analyze, PrecisionFromEnvironment) {
    setenv("ADICLAB_PRECISION", "3", 1);
    Outcome r = invoke({"analyze", "--rational", "1/3", "--base", "3", "--checkpoints", "3"});
    unsetenv("ADICLAB_PRECISION");
    EXPECT_EQ(r.out, "n,v0,v1,v2,r_n\n3,0.667,0.333,0,0.333\n");  // 1/3 = 0.1000... in base 3
    setenv("ADICLAB_PRECISION", "zero", 1);
    EXPECT_EQ(invoke({"analyze", "--mean", "1", "--length", "10"}).status, kExitUsage);
    unsetenv("ADICLAB_PRECISION");
}

TEST(Dimension, SpecExamples) {
    Outcome tau = invoke({"dimension", "--tau", "1,0,0,0"});
    ASSERT_EQ(tau.status, 0) << tau.err;
    EXPECT_EQ(json::parse(tau.out).at("dimension").get<double>(), 0.0);

    Outcome theta = invoke({"dimension", "--theta", "1.5"});
    ASSERT_EQ(theta.status, 0) << theta.err;
    EXPECT_NEAR(json::parse(theta.out).at("dimension_bound").get<double>(), 1.0, 1e-9);

    Outcome oracle = invoke({"dimension", "--theta", "1.5", "--oracle"});
    ASSERT_EQ(oracle.status, 0) << oracle.err;
    json o = json::parse(oracle.out).at("oracle");
    EXPECT_TRUE(o.at("agree").get<bool>());
    EXPECT_LE(o.at("gap").get<double>(), 1e-4);
}

TEST(Dimension, EndpointsAndErrors) {
    json lo = json::parse(invoke({"dimension", "--theta", "0"}).out);
    EXPECT_TRUE(lo.at("lambda").is_null());
    EXPECT_EQ(lo.at("m").get<double>(), 0.0);
    EXPECT_EQ(invoke({"dimension", "--theta", "3.5"}).status, kExitUsage);
    EXPECT_EQ(invoke({"dimension", "--theta", "0", "--oracle"}).status, kExitUsage);
    EXPECT_EQ(invoke({"dimension"}).status, kExitUsage);
    EXPECT_EQ(invoke({"dimension", "--tau", "1,0,0,0", "--theta", "1"}).status, kExitUsage);
    EXPECT_EQ(invoke({"dimension", "--theta", "1", "--base", "8", "--oracle"}).status, kExitUsage);
}

TEST(Dimension, SweepCsv) {
    Outcome r = invoke({"dimension", "--sweep", "0:3:1/2"});
    ASSERT_EQ(r.status, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "theta,m,dimension_bound");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    ASSERT_EQ(rows.size(), 7u);
    EXPECT_EQ(rows.front(), "0,0,0");
    EXPECT_EQ(rows[3], "1.5,-1.38629436112,1");
    EXPECT_EQ(rows.back(), "3,0,0");
}

TEST(Verify, ModulesPassAndAreSorted) {
    for (const char* module : {"digits_core", "digit_stats", "constructors", "entropy_dim"}) {
        Outcome r = invoke({"verify", "--module", module});
        ASSERT_EQ(r.status, 0) << module << r.out << r.err;
        json doc = json::parse(r.out);
        std::vector<std::string> names;
        for (const json& c : doc.at("checks")) {
            EXPECT_EQ(c.at("verdict"), "pass") << c.dump();
            EXPECT_EQ(c.at("module"), module);
            names.push_back(c.at("name"));
        }
        EXPECT_FALSE(names.empty());
        EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
    }
    EXPECT_EQ(invoke({"verify", "--module", "physics"}).status, kExitUsage);
    EXPECT_EQ(invoke({"verify", "--base", "5"}).status, kExitUsage);
}

TEST(Verify, ReportIsDeterministic) {
    Outcome a = invoke({"verify", "--module", "digit_stats,digits_core"});
    Outcome b = invoke({"verify", "--module", "digits_core", "--module", "digit_stats"});
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
}
