#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "colsnn_cli_test";

struct Run {
    int code{-1};
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args) {
    static int counter = 0;
    const auto tag = std::to_string(counter++);
    const auto out = kRoot / ("stdout" + tag);
    const auto err = kRoot / ("stderr" + tag);
    const auto cmd = std::string("\"") + COLSNN_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                     err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string data(const std::string& name) { return (fs::path(COLSNN_SOURCE_DIR) / "data" / name).string(); }

fs::path write(const std::string& name, const std::string& content) {
    const auto p = kRoot / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const char* kSmall = R"([train]
epochs = 2
[encoding]
window = 40
n_word_neurons = 30
n_pos_neurons = 20
[network]
n_hidden = 20
n_column = 5
repetitions = 4
)";

class Cli : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        fs::remove_all(kRoot);
        fs::create_directories(kRoot);
    }
    static std::string out(const std::string& name) { return (kRoot / name).string(); }
};

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("train --corpus x").code, 2);
    const auto r = run("encode --text hi --encoder nope --out " + out("bad_enc"));
    EXPECT_EQ(r.code, 2);
    for (const char* name : {"ttfs", "poisson", "pos-fixed", "pos-word", "codebook", "gauss-pos-word"}) {
        EXPECT_NE(r.err.find(name), std::string::npos) << name;
    }
    EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, DataErrorsExitOne) {
    const auto missing = run("train --corpus " + out("no_such.tsv") + " --out " + out("missing"));
    EXPECT_EQ(missing.code, 1);
    EXPECT_NE(missing.err.find("no_such.tsv"), std::string::npos);

    const auto cfg = write("bad.toml", "[network]\nnoise_sigma = -1\n");
    const auto bad = run("train --corpus " + data("table1.tsv") + " --config " + cfg.string() + " --out " +
                         out("badcfg"));
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("network"), std::string::npos);

    const auto unknown = write("unknown.toml", "[train]\nepochz = 3\n");
    const auto u = run("train --corpus " + data("table1.tsv") + " --config " + unknown.string() + " --out " +
                       out("unknowncfg"));
    EXPECT_EQ(u.code, 1);
    EXPECT_NE(u.err.find("train.epochz"), std::string::npos);
}

TEST_F(Cli, TtfsOnTwoByTwoImage) {
    const auto img = write("tiny.pgm", "P2\n2 2\n255\n0 64\n128 255\n");
    const auto r = run("encode --encoder ttfs --input " + img.string() + " --out " + out("ttfs"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(slurp(kRoot / "ttfs" / "events.csv")), 5u);
    EXPECT_TRUE(fs::exists(kRoot / "ttfs" / "grid.csv"));
    EXPECT_TRUE(fs::exists(kRoot / "ttfs" / "manifest.json"));
}

TEST_F(Cli, PoissonRateZeroIsEmpty) {
    const auto cfg = write("silent.toml", "[encoding]\npoisson_rate = 0\n");
    const auto r = run("encode --encoder poisson --text \"Great film!\" --config " + cfg.string() + " --out " +
                       out("poisson"));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto events = slurp(kRoot / "poisson" / "events.csv");
    EXPECT_EQ(lines(events), 1u);
    EXPECT_EQ(events.rfind("neuron,step", 0), 0u);
}

TEST_F(Cli, CodebookEncodingIsDeterministic) {
    const std::string text = "\"Stunning animation brought the characters to life!\"";
    ASSERT_EQ(run("encode --encoder codebook --seed 3 --text " + text + " --out " + out("cb1")).code, 0);
    ASSERT_EQ(run("encode --encoder codebook --seed 3 --text " + text + " --out " + out("cb2")).code, 0);
    const auto a = slurp(kRoot / "cb1" / "events.csv");
    EXPECT_GT(lines(a), 1u);
    EXPECT_EQ(a, slurp(kRoot / "cb2" / "events.csv"));
}

TEST_F(Cli, TrainFiftyEpochsThenFrozenEval) {
    const auto r = run("train --corpus " + data("table1.tsv") + " --epochs 50 --seed 42 --out " + out("train"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(slurp(kRoot / "train" / "metrics.csv")), 51u);
    EXPECT_TRUE(fs::exists(kRoot / "train" / "network" / "hidden_pos.csv"));

    const auto e = run("eval --corpus " + data("table1.tsv") + " --network " + out("train/network") +
                       " --freeze-check --out " + out("eval"));
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_NE(e.out.find("freeze check passed"), std::string::npos);
    const auto j = nlohmann::json::parse(slurp(kRoot / "eval" / "eval.json"));
    EXPECT_EQ(j.at("weights_hash_before"), j.at("weights_hash_after"));
}

TEST_F(Cli, ReplayReproducesOutputs) {
    const auto cfg = write("small.toml", kSmall);
    ASSERT_EQ(run("train --corpus " + data("table1.tsv") + " --config " + cfg.string() + " --seed 9 --out " +
                  out("orig"))
                  .code,
              0);
    const auto manifest = kRoot / "orig" / "manifest.json";
    const auto j = nlohmann::json::parse(slurp(manifest));
    EXPECT_EQ(j.at("command"), "train");
    EXPECT_EQ(j.at("seed"), 9);
    ASSERT_EQ(run("replay " + manifest.string() + " --out " + out("again")).code, 0);
    for (const char* f : {"metrics.csv", "config.toml", "network/hidden_pos.csv", "network/input_hidden.csv"}) {
        EXPECT_EQ(slurp(kRoot / "orig" / f), slurp(kRoot / "again" / f)) << f;
    }
}

TEST_F(Cli, SingleExperimentStartsPositive) {
    const auto cfg = write("single.toml", "[experiment]\nsingle_round_cap = 2\n");
    const auto r = run("experiment single --config " + cfg.string() + " --out " + out("single"));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto trace = slurp(kRoot / "single" / "trace.csv");
    std::istringstream in(trace);
    std::string header;
    std::string first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header, "round,act_group1,act_group2,decision");
    EXPECT_EQ(first.substr(first.rfind(',') + 1), "Positive");
}

TEST_F(Cli, TenExperimentWritesOneRowPerEpoch) {
    const auto cfg = write("ten.toml", std::string(kSmall) + "[experiment]\nten_epochs = 5\n");
    const auto r = run("experiment ten --config " + cfg.string() + " --out " + out("ten"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(slurp(kRoot / "ten" / "metrics.csv")), 6u);
    EXPECT_EQ(lines(slurp(kRoot / "ten" / "trace.csv")), 51u);
    EXPECT_NE(r.out.find("increasing trend"), std::string::npos);
}

TEST_F(Cli, ReplicatesWithJobsMatchSerialRuns) {
    const auto cfg = write("rep.toml", std::string(kSmall) + "[experiment]\nten_epochs = 2\n");
    const auto base = "experiment ten --config " + cfg.string() + " --replicates 2 --seed 4 ";
    ASSERT_EQ(run(base + "--jobs 2 --out " + out("par")).code, 0);
    ASSERT_EQ(run(base + "--jobs 1 --out " + out("ser")).code, 0);
    for (const char* f : {"replicate-0/metrics.csv", "replicate-1/metrics.csv"}) {
        EXPECT_EQ(slurp(kRoot / "par" / f), slurp(kRoot / "ser" / f)) << f;
    }
}
