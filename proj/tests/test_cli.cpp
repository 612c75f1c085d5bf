#include "mertens/cli/report.hpp"
#include "mertens/cli/run.hpp"
#include "mertens/errors.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mertens::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

} // namespace

TEST(Cli, VerifyEq6)
{
    const auto r = invoke({"verify", "--id", "eq6", "--x-max", "200", "--format", "csv", "--no-timestamp"});
    EXPECT_EQ(r.code, kExitPass) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 200u);
    EXPECT_EQ(rows[0], "identity,x,j,s,mode,lhs,rhs,residual,pass");
    EXPECT_EQ(rows[1].substr(0, 9), "eq6,2,,0,");
    for (std::size_t k = 1; k < rows.size(); ++k)
        ASSERT_TRUE(rows[k].ends_with(",0,true")) << rows[k];
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(invoke({"verify", "--id", "eq1", "--x-max", "0"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "--id", "eq99", "--x-max", "5"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "--x-max", "5", "--tolerance", "0"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "--id", "eq3", "--x-max", "13"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "--id", "eq1", "--x-max", "5", "--s", "0.5", "--mode", "exact"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "--id", "eq7", "--x-max", "150", "--x-min", "150", "--mode", "exact"}).code,
              kExitUsage);
    EXPECT_EQ(invoke({"verify", "--id", "eq2", "--x-max", "5", "--j", "2"}).code, kExitUsage);
    EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"gamma", "--points", "1"}).code, kExitUsage);
    EXPECT_EQ(invoke({"gamma", "--points", "100,50"}).code, kExitUsage);
    EXPECT_EQ(invoke({"gamma", "--points", "4000"}).code, kExitUsage);
    EXPECT_EQ(invoke({"induction", "--x-max", "2"}).code, kExitUsage);
    EXPECT_EQ(invoke({"induction", "--x-max", "10", "--C", "1"}).code, kExitUsage);
    EXPECT_EQ(invoke({"induction", "--x-max", "1e6"}).code, kExitUsage);
    EXPECT_EQ(invoke({"sieve", "--hi", "abc"}).code, kExitUsage);
    EXPECT_EQ(invoke({"sieve", "--hi", "10", "-o", "/nonexistent/dir/out.csv"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "--x-max", "5", "--threads", "0"}).code, kExitUsage);
    EXPECT_EQ(invoke({"--help"}).code, kExitPass);
}

TEST(Cli, CapacityErrorExitsTwo)
{
    setenv("MERTENS_MEMORY_BUDGET", "1K", 1);
    const auto r = invoke({"sieve", "--hi", "1e6"});
    unsetenv("MERTENS_MEMORY_BUDGET");
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("memory budget"), std::string::npos) << r.err;
}

TEST(Cli, InjectedFailuresExitOne)
{
    // Float residuals are nonzero at the ulp level, so a tolerance far below
    // that fails some rows while leaving the report intact.
    const auto r = invoke({"verify", "--id", "eq5", "--s", "1", "--mode", "float", "--x-max", "50",
                           "--tolerance", "1e-300", "--no-timestamp"});
    EXPECT_EQ(r.code, kExitFail);
    EXPECT_NE(r.out.find(",false"), std::string::npos);

    const auto ind = invoke({"induction", "--x-max", "20", "--synthetic-mu", "ones", "--no-timestamp"});
    EXPECT_EQ(ind.code, kExitFail);
    const auto rows = lines(ind.out);
    ASSERT_EQ(rows.size(), 19u);
    EXPECT_EQ(rows[0], "x,n,sup_M,argmax_y,sup_M_sq,argmax_y_sq,lhs,rhs,ratio,minimal_C,step_holds");
    EXPECT_TRUE(rows[2].ends_with(",true"));
    EXPECT_TRUE(rows[3].ends_with(",false"));

    const auto bound = invoke({"induction", "--x-max", "50", "--C", "0.01", "--x0", "10", "--no-timestamp"});
    EXPECT_EQ(bound.code, kExitFail);
}

TEST(Cli, GammaPoints)
{
    const auto r = invoke({"gamma", "--points", "50,100,200,400", "--no-timestamp"});
    EXPECT_EQ(r.code, kExitPass);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], "x,estimate,reference,abs_error,scaled_error");
    EXPECT_EQ(rows[1].substr(0, 20), "50,0.596949014234358");
}

TEST(Cli, JsonMirrorsCsv)
{
    const auto csv = invoke({"verify", "--id", "eq2,eq18", "--x-max", "6", "--no-timestamp"});
    const auto json = invoke({"verify", "--id", "eq2,eq18", "--x-max", "6", "--no-timestamp", "--format", "json"});
    ASSERT_EQ(json.code, kExitPass);
    const auto doc = nlohmann::json::parse(json.out);
    ASSERT_TRUE(doc.contains("rows"));
    ASSERT_TRUE(doc.contains("summary"));
    EXPECT_FALSE(doc.contains("meta"));
    const auto rows = lines(csv.out);
    ASSERT_EQ(doc["rows"].size() + 1, rows.size());
    EXPECT_EQ(doc["rows"][0]["identity"], "eq2");
    EXPECT_EQ(doc["rows"][0]["j"], 2);
    EXPECT_EQ(doc["summary"]["failed"], 0);
    EXPECT_TRUE(rows[1].starts_with("eq2,2,2,0,exact,"));
}

TEST(Cli, TimestampOnlyWhenRequested)
{
    const auto with = invoke({"sieve", "--hi", "3"});
    EXPECT_TRUE(with.out.starts_with("# generated "));
    const auto json = invoke({"sieve", "--hi", "3", "--format", "json"});
    EXPECT_TRUE(nlohmann::json::parse(json.out).contains("meta"));
    const auto without = invoke({"sieve", "--hi", "3", "--no-timestamp"});
    EXPECT_EQ(without.out, "k,mu\n1,1\n2,-1\n3,-1\n");
}

TEST(Cli, DeterministicAcrossThreads)
{
    const std::vector<std::vector<std::string>> commands{
        {"verify", "--x-max", "25", "--s", "1"},
        {"gamma", "--points", "20,40,80,160"},
        {"induction", "--x-max", "500", "--dense", "100"},
    };
    for (const auto& base : commands)
        for (const char* format : {"csv", "json"}) {
            std::string first;
            for (const char* threads : {"1", "4", "8"}) {
                auto args = base;
                args.insert(args.end(), {"--threads", threads, "--no-timestamp", "--format", format});
                const auto r = invoke(args);
                ASSERT_EQ(r.code, kExitPass) << base[0] << r.err;
                if (first.empty())
                    first = r.out;
                else
                    ASSERT_EQ(r.out, first) << base[0] << " threads " << threads;
            }
        }
}

TEST(Cli, WritesFile)
{
    const auto path = std::filesystem::temp_directory_path() / "mertens_cli_test.csv";
    const auto r = invoke({"mertens", "--x", "10,1e5", "-o", path.string(), "--no-timestamp"});
    EXPECT_EQ(r.code, kExitPass);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream body;
    body << in.rdbuf();
    EXPECT_EQ(body.str(), "x,M\n10,-1\n100000,-48\n");
    std::filesystem::remove(path);

    const auto range = invoke({"mertens", "--x-min", "8", "--x-max", "10", "--no-timestamp"});
    EXPECT_EQ(range.out, "x,M\n8,-2\n9,-2\n10,-1\n");
}

TEST(Cli, Bench)
{
    const auto r = invoke({"bench", "--sieve", "1e5", "--no-timestamp"});
    EXPECT_EQ(r.code, kExitPass);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], "operation,size,seconds,rate");
    EXPECT_TRUE(rows[1].starts_with("sieve,100000,"));
    const auto m = invoke({"bench", "--mertens", "1e6", "--no-timestamp"});
    EXPECT_TRUE(lines(m.out).at(1).starts_with("mertens_sublinear,1000000,"));
}

TEST(Cli, ParseCount)
{
    EXPECT_EQ(parse_count("1e8"), 100000000u);
    EXPECT_EQ(parse_count("2.5e3"), 2500u);
    EXPECT_EQ(parse_count("18446744073709551615"), 18446744073709551615ull);
    EXPECT_THROW(parse_count("1.5"), mertens::Error);
    EXPECT_THROW(parse_count("-3"), mertens::Error);
    EXPECT_THROW(parse_count(""), mertens::Error);
    EXPECT_EQ(parse_count_list("1,2e1,300"), (std::vector<std::uint64_t>{1, 20, 300}));
}

TEST(Report, JsonDoublesUseSeventeenDigits)
{
    nlohmann::ordered_json j = {{"a", 0.1}, {"b", std::numeric_limits<double>::infinity()}, {"c", 3}};
    EXPECT_EQ(dump_json(j), R"({"a":0.10000000000000001,"b":null,"c":3})");
    Table t;
    t.columns = {"name", "v"};
    t.rows.push_back({std::string("a,b"), 0.5});
    EXPECT_EQ(render(t, Format::csv, std::nullopt), "name,v\n\"a,b\",0.5\n");
}
