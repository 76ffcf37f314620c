#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "katz/problem_file.hpp"

using namespace katz;
namespace fs = std::filesystem;

namespace {

const char* kTrivial = R"({"n_vars": 1, "rank": 2, "trunc_order": 3,
                           "matrices": [[["0", "0"], ["0", "0"]]]})";

const char* kNilpotent = R"({"n_vars": 1, "rank": 2, "trunc_order": 3,
                             "matrices": [[["0", "1"], ["0", "0"]]],
                             "vectors": {"m": ["x1^2", "x1"], "zero": ["0", "0"]}})";

const char* kNonIntegrable = R"({"n_vars": 2, "rank": 2, "trunc_order": 3,
                                 "matrices": [[["x2", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]]})";

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::path(KATZ_TEST_TMP) / name;
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST(Run, TrivialProblem)
{
    const Json report = run_problem(parse_problem_text(kTrivial), {});
    EXPECT_EQ(report["integrability"]["status"], "pass");
    EXPECT_EQ(report["trivialization"], Json::parse(R"([["1", "0"], ["0", "1"]])"));
    for (const auto& [name, ok] : report["checks"].items()) {
        EXPECT_TRUE(ok.get<bool>()) << name;
    }
    EXPECT_EQ(exit_code(report), 0);
}

TEST(Run, NilpotentProblemWithCertificate)
{
    RunOptions options;
    options.certify = {"m"};
    const Json report = run_problem(parse_problem_text(kNilpotent), options);
    EXPECT_EQ(report["trivialization"], Json::parse(R"([["1", "-1*x1"], ["0", "1"]])"));
    EXPECT_EQ(exit_code(report), 0);
    ASSERT_EQ(report["certificates"].size(), 1u);
    const Json& cert = report["certificates"][0];
    EXPECT_EQ(cert["multi_index"], Json::parse("[1]"));
    EXPECT_EQ(cert["witness_values"], Json::parse(R"(["0/1", "1/1"])"));
    EXPECT_EQ(cert["nonzero_position"], 2);
}

TEST(Run, CertifyingZeroFailsTheCheck)
{
    RunOptions options;
    options.certify = {"zero"};
    const Json report = run_problem(parse_problem_text(kNilpotent), options);
    EXPECT_FALSE(report["checks"]["certificates"].get<bool>());
    EXPECT_EQ(exit_code(report), 1);

    options.certify = {"missing"};
    EXPECT_EQ(exit_code(run_problem(parse_problem_text(kNilpotent), options)), 2);
}

TEST(Run, NonIntegrableReportsWitness)
{
    const Json report = run_problem(parse_problem_text(kNonIntegrable), {});
    EXPECT_EQ(report["integrability"]["status"], "fail");
    EXPECT_EQ(report["integrability"]["i"], 1);
    EXPECT_EQ(report["integrability"]["j"], 2);
    EXPECT_EQ(report["integrability"]["entry"], "-1");
    EXPECT_FALSE(report.contains("flat_frame"));
    EXPECT_EQ(exit_code(report), 3);
}

TEST(ProblemParsing, Errors)
{
    try {
        parse_problem_text(R"({"n_vars": 2, "rank": 1, "trunc_order": 3, "matrices": [[["x1*(x2"]], [["0"]]]})");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 6u);
        EXPECT_NE(std::string(e.what()).find("matrices[0][0][0]"), std::string::npos);
    }
    EXPECT_THROW(parse_problem_text("{ not json"), ParseError);
    EXPECT_THROW(parse_problem_text(R"({"rank": 1, "trunc_order": 3, "matrices": []})"), InputError);
    EXPECT_THROW(parse_problem_text(R"({"n_vars": 1, "rank": 2, "trunc_order": 3, "matrices": [[["0"]]]})"),
                 InputError);
    EXPECT_THROW(parse_problem_text(R"({"n_vars": 1, "rank": 1, "trunc_order": 3, "matrices": [[["0"]]],
                                       "vectors": {"v": ["1", "2"]}})"),
                 InputError);
    EXPECT_THROW(parse_problem_text(R"({"n_vars": 1, "rank": 1, "trunc_order": 0, "matrices": [[["0"]]]})"),
                 InputError);
}

TEST(Gen, DeterministicAndByteIdentical)
{
    const auto a = scratch("gen_a");
    const auto b = scratch("gen_b");
    const auto pa = generate_corpus(a, 1, 1, 2, 0, 1);
    const auto pb = generate_corpus(b, 1, 1, 2, 0, 1);
    ASSERT_EQ(pa.size(), 1u);
    EXPECT_EQ(slurp(pa[0]), slurp(pb[0]));
    EXPECT_EQ(slurp(a / "expected_0000.json"), slurp(b / "expected_0000.json"));
}

TEST(Gen, TenDistinctValidProblemsRoundTrip)
{
    const auto dir = scratch("gen_ten");
    const auto paths = generate_corpus(dir, 2, 2, 4, 7, 10);
    ASSERT_EQ(paths.size(), 10u);
    std::set<std::string> contents;
    for (std::size_t k = 0; k < paths.size(); ++k) {
        contents.insert(slurp(paths[k]));
        const ProblemFile problem = load_problem(paths[k]);
        RunOptions options;
        char name[32];
        std::snprintf(name, sizeof name, "expected_%04zu.json", k);
        options.expected_frame = load_expected_frame(dir / name, 2, 2, 4);
        const Json report = run_problem(problem, options);
        EXPECT_EQ(exit_code(report), 0) << report.dump(2);
        EXPECT_TRUE(report["checks"]["expected_frame"].get<bool>());
        EXPECT_TRUE(report["checks"]["tower_compatibility"].get<bool>());
    }
    EXPECT_EQ(contents.size(), 10u);
}

TEST(Gen, UnwritableDirectory)
{
    const auto blocker = scratch("blocker");
    fs::create_directories(blocker.parent_path());
    std::ofstream(blocker) << "file, not a directory";
    EXPECT_THROW(generate_corpus(blocker / "sub", 1, 1, 2, 0, 1), std::runtime_error);
}
