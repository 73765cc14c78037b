#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"

namespace lexglr {
namespace {

using testing::data_path;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "lexglr");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("lexglr_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::vector<std::string> parsing_flags() const {
        return {"--grammar", data_path("demo.grammar"), "--wordlist", data_path("demo.wordlist"),
                "--lemma-exceptions", data_path("demo.lemmas")};
    }

    std::string train(const std::string& treebank) {
        const std::string model = path(treebank + ".model");
        const auto r = run({"train", "--grammar", data_path("demo.grammar"), "--treebank", data_path(treebank),
                            "--out", model});
        EXPECT_EQ(r.code, cli::kExitOk) << r.err;
        return model;
    }

    std::filesystem::path dir_;
};

std::vector<std::string> operator+(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

TEST_F(CliTest, MissingGrammarIsConfigError) {
    const auto r = run({"build-table", "--grammar", "/nonexistent.grammar"});
    EXPECT_EQ(r.code, cli::kExitConfig);
    EXPECT_NE(r.err.find("/nonexistent.grammar"), std::string::npos);
}

TEST_F(CliTest, NoSubcommandIsConfigError) { EXPECT_EQ(run({}).code, cli::kExitConfig); }

TEST_F(CliTest, BuildTableListsConflicts) {
    const auto r = run({"build-table", "--grammar", data_path("demo.grammar")});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_NE(r.out.find("states=32\n"), std::string::npos);
    EXPECT_NE(r.out.find("conflicts=5\n"), std::string::npos);
}

TEST_F(CliTest, TrainReportsSkippedTree) {
    const std::string tb = path("mixed.trees");
    std::ofstream(tb) << "(T (S (NP (pn Kim)) (VP (v slept))) (punct .))\n(T (NP (det the) (n man)))\n";
    const auto r = run({"train", "--grammar", data_path("demo.grammar"), "--treebank", tb, "--out",
                        path("m.model")});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_NE(r.out.find("used=1\n"), std::string::npos);
    EXPECT_NE(r.out.find("skipped=1\n"), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(path("m.model")));
}

TEST_F(CliTest, ParseEmitsGrs) {
    const std::string model = train("demo.trees");
    const auto r = run(std::vector<std::string>{"parse"} + parsing_flags() +
                       std::vector<std::string>{"--model", model, "Paul intends to leave IBM"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("gr=xcomp(to,intend,leave)\n"), std::string::npos);
    EXPECT_NE(r.out.find("gr=ncsubj(leave,Paul,_)\n"), std::string::npos);
}

TEST_F(CliTest, MachineReadableParse) {
    const std::string model = train("demo.trees");
    const auto r = run(std::vector<std::string>{"parse"} + parsing_flags() +
                       std::vector<std::string>{"--model", model, "--format", "machine-readable", "Kim slept."});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(r.out.front(), '{');
    EXPECT_NE(r.out.find("\"analyses\""), std::string::npos);
}

TEST_F(CliTest, AcquireOnEmptyCorpusSucceeds) {
    const std::string model = train("adversarial.trees");
    const std::string corpus = path("empty.txt");
    std::ofstream{corpus};
    const auto r = run(std::vector<std::string>{"acquire"} + parsing_flags() +
                       std::vector<std::string>{"--model", model, "--corpus", corpus, "--out", path("lex.txt")});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("sentences=0\n"), std::string::npos);
}

TEST_F(CliTest, EvalBracketWorkedExample) {
    const auto r = run({"eval-bracket", "--test", data_path("hear_test.trees"), "--treebank",
                        data_path("hear_gold.trees")});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("recall=0.750000\n"), std::string::npos);
    EXPECT_NE(r.out.find("precision=0.750000\n"), std::string::npos);
    EXPECT_NE(r.out.find("mean_crossings=0.000000\n"), std::string::npos);
}

TEST_F(CliTest, EvalGrCountMismatchFails) {
    const auto r = run({"eval-gr", "--test", data_path("demo.gr"), "--gold-gr", data_path("hear_gold.gr")});
    EXPECT_EQ(r.code, cli::kExitFailure);
    EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, CompareIsDeterministicAndComplete) {
    const std::string model = train("adversarial.trees");
    const std::string lexicon = path("acq.lex");
    ASSERT_EQ(run(std::vector<std::string>{"acquire"} + parsing_flags() +
                  std::vector<std::string>{"--model", model, "--corpus", data_path("acquire.txt"), "--out", lexicon})
                  .code,
              cli::kExitOk);
    const auto args = std::vector<std::string>{"compare"} + parsing_flags() +
                      std::vector<std::string>{"--model",    model,
                                               "--lexicon",  lexicon,
                                               "--corpus",   data_path("ppsuite.txt"),
                                               "--treebank", data_path("ppsuite.trees"),
                                               "--gold-gr",  data_path("ppsuite.gr")};
    const auto first = run(args);
    const auto second = run(args + std::vector<std::string>{"--threads", "3"});
    EXPECT_EQ(first.code, cli::kExitOk) << first.err;
    EXPECT_EQ(first.out, second.out);
    for (const char* needle : {"[baseline gr]", "[lexicalized gr]", "[ttest precision]", "\nt=", "\ndf=", "\np="}) {
        EXPECT_NE(first.out.find(needle), std::string::npos) << needle;
    }
}

} // namespace
} // namespace lexglr
