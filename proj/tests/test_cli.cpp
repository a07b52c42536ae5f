#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "plumbcalc/io.hpp"
#include "plumbcalc/plumbing.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
    std::string out;
    int exit = -1;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("plumbcalc-cli-" + std::to_string(::getpid()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        cache_ = (dir_ / "cache.jsonl").string();
    }
    void TearDown() override { fs::remove_all(dir_); }

    CliRun run(const std::string& args, bool with_stderr = false) const {
        const std::string cmd = "PLUMBCALC_CACHE='" + cache_ + "' '" PLUMBCALC_CLI_PATH "' " + args +
                                (with_stderr ? " 2>&1" : " 2>/dev/null");
        CliRun r;
        FILE* pipe = ::popen(cmd.c_str(), "r");
        if (!pipe) {
            return r;
        }
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
            r.out.append(buf, got);
        }
        const int status = ::pclose(pipe);
        r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        return r;
    }

    std::string write(const std::string& name, const std::string& text) const {
        const auto path = (dir_ / name).string();
        std::ofstream(path) << text;
        return path;
    }

    fs::path dir_;
    std::string cache_;
};

}  // namespace

TEST_F(CliTest, DExamples) {
    EXPECT_EQ(run("d 2 3 5").out, "2\n");
    EXPECT_EQ(run("d 2 3 7").out, "0\n");
    EXPECT_EQ(run("d 5 3 2").out, "2\n");
    EXPECT_EQ(run("d 2 3 4").exit, 2);
    EXPECT_EQ(run("d 2 3").exit, 2);
    const auto j = nlohmann::json::parse(run("d 2 3 5 --json").out);
    EXPECT_EQ(j["d"], "2");
    EXPECT_EQ(j["certificate"].size(), 8u);
}

TEST_F(CliTest, RankGuardExit) {
    EXPECT_EQ(run("--rank-guard 4 d 2 5 9").exit, 3);
    EXPECT_EQ(run("d 2 5 9 --rank-guard 4").exit, 3);
}

TEST_F(CliTest, LensD) {
    EXPECT_EQ(run("lens-d 23 2 1").out, "81/46\n");
    EXPECT_EQ(run("lens-d 1 1").out, "0\n");
    const auto rec = run("lens-d 23 2 --all");
    const auto ora = run("lens-d 23 2 --all --oracle");
    EXPECT_EQ(std::count(rec.out.begin(), rec.out.end(), '\n'), 23);
    std::vector<std::string> a, b;
    std::istringstream sa(rec.out), sb(ora.out);
    for (std::string l; std::getline(sa, l);) a.push_back(l);
    for (std::string l; std::getline(sb, l);) b.push_back(l);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
    EXPECT_EQ(run("lens-d 4 2").exit, 2);
    EXPECT_EQ(rec.out.find('.'), std::string::npos);
}

TEST_F(CliTest, Mubar) {
    EXPECT_EQ(run("mubar 2 3 5").out, "-1\n");
    EXPECT_EQ(run("mubar 2 5 9").out, "-1\n");
    const auto g = plumbcalc::star_graph(-1, {{-2}, {-3}, {-7}});
    const auto path = write("g.json", plumbcalc::io::to_json(g).dump());
    EXPECT_EQ(run("mubar --graph " + path).out, "1\n");
    EXPECT_EQ(run("d --graph " + path).out, "0\n");
    const auto s = write("s.json", R"({"e": -2, "branches": [[5, -4], [3, -2], [2, -1]]})");
    EXPECT_EQ(run("d --seifert " + s).out, "2\n");
    EXPECT_EQ(run("mubar --seifert " + s).out, "-1\n");
    const auto broken = write("bad.json", R"({"vertices": [{"id": 1, "weight": -2}, {"id": 2, "weight": -3}], "edges": [[1, 1]]})");
    EXPECT_EQ(run("mubar --graph " + broken).exit, 2);
    EXPECT_EQ(run("mubar --graph " + (dir_ / "missing.json").string()).exit, 2);
}

TEST_F(CliTest, VerifyTheorems) {
    const auto report = (dir_ / "r.jsonl").string();
    const auto r = run("verify thm1.2 --families i..xii --n 1..3 --report " + report);
    EXPECT_EQ(r.exit, 0) << r.out;
    std::ifstream in(report);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line); ++lines) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["schema"], "plumbcalc.report/1");
        EXPECT_TRUE(j["passed"].get<bool>()) << line;
    }
    EXPECT_GE(lines, 36u);
    EXPECT_EQ(run("verify thm1.3 --families i..iv --n 1..6").exit, 0);
    const auto c = run("verify classify-e8 --bound 60");
    EXPECT_EQ(c.exit, 0);
    EXPECT_NE(c.out.find("(2,3,5) (3,4,7)"), std::string::npos);
    EXPECT_EQ(run("verify cor1.6 --n 1..2").exit, 0);
    EXPECT_EQ(run("verify thm9.9").exit, 2);
    EXPECT_EQ(run("verify thm1.3 --families v").exit, 2);
}

TEST_F(CliTest, ConjectureScanGuard) {
    const auto r = run("verify rmk1.4 --families v --n 1..2");
    EXPECT_EQ(r.exit, 3) << r.out;
    EXPECT_NE(r.out.find("skipped"), std::string::npos);
    EXPECT_EQ(run("verify rmk1.4 --families i..iv --n 1..2").exit, 0);
    EXPECT_EQ(run("verify rmk1.4 --families i --n 0..0").exit, 2);
    EXPECT_EQ(run("verify rmk1.4 --families i --n -1..0 --nonpositive").exit, 0);
}

TEST_F(CliTest, CacheTransparency) {
    for (const std::string args : {"d 2 3 5", "lens-d 23 2 --all", "verify thm1.3 --families i --n 1..2 --json",
                                   "mubar 2 5 9"}) {
        const auto fresh = run("--no-cache " + args);
        const auto first = run(args);
        const auto second = run(args);
        EXPECT_EQ(fresh.out, first.out) << args;
        EXPECT_EQ(fresh.out, second.out) << args;
        EXPECT_EQ(fresh.exit, second.exit) << args;
    }
    std::ifstream in(cache_);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line); ++lines) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_TRUE(j.contains("key") && j.contains("value") && j.contains("tool_version") && j.contains("timestamp"));
    }
    EXPECT_EQ(lines, 4u);
}

TEST_F(CliTest, CacheKeyIsCanonical) {
    run("d 5 3 2");
    run("d 2 3 5");
    std::ifstream in(cache_);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) {
        ++lines;
    }
    EXPECT_EQ(lines, 1u);
}

TEST_F(CliTest, CorruptCacheLinesAreSkipped) {
    write("cache.jsonl", "this is not json\n{\"key\": 3}\n");
    const auto r = run("d 2 3 5", true);
    EXPECT_NE(r.out.find("warning"), std::string::npos);
    EXPECT_NE(r.out.find("2\n"), std::string::npos);
    EXPECT_EQ(run("d 2 3 5").out, "2\n");
}

TEST_F(CliTest, ForgedCacheHitIsReturned) {
    // a hit is served without recomputation
    run("d 2 3 5");
    std::ifstream in(cache_);
    std::string line;
    std::getline(in, line);
    auto j = nlohmann::json::parse(line);
    j["value"]["stdout"] = "cached\n";
    write("cache.jsonl", line + "\n" + j.dump() + "\n");
    EXPECT_EQ(run("d 2 3 5").out, "cached\n");
    EXPECT_EQ(run("--no-cache d 2 3 5").out, "2\n");
}

TEST(Io, RoundTrips) {
    using namespace plumbcalc;
    const auto g = star_graph(-2, {{-2}, {-2, -2}, {-2, -2, -2, -2}});
    EXPECT_EQ(io::graph_from_json(io::to_json(g)), g);
    const ChainDiagram c({2, 2, 4, 2}, MarkedLink{1, 2});
    EXPECT_EQ(io::chain_from_json(io::to_json(c)), c);
    EXPECT_EQ(io::chain_from_json(nlohmann::json::parse(R"({"framings": [3, 1]})")), ChainDiagram({3, 1}));
    const SeifertData s(2, {{3, 2}, {4, 3}, {7, 4}});
    EXPECT_EQ(io::seifert_from_json(io::to_json(s)), s);
    const auto ids = io::graph_from_json(nlohmann::json::parse(
        R"({"vertices": [{"id": 7, "weight": -1}, {"id": 3, "weight": -2}], "edges": [[3, 7]]})"));
    EXPECT_EQ(ids.id(0), 7);
    EXPECT_EQ(ids.degree(1), 1u);
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Overflow;
    };
    EXPECT_EQ(code([] { io::graph_from_json(nlohmann::json::parse(R"({"edges": []})")); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code([] {
                  io::graph_from_json(nlohmann::json::parse(
                      R"({"vertices": [{"id": 1, "weight": -2}, {"id": 2, "weight": -2}], "edges": []})"));
              }),
              ErrorCode::NotATree);
    EXPECT_EQ(code([] { io::seifert_from_json(nlohmann::json::parse(R"({"e": 1, "branches": [[4, 2]]})")); }),
              ErrorCode::NotCoprime);
}
