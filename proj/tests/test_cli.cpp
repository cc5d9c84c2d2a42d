#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/app.hpp"

using namespace hrl;
using namespace hrl::app;
namespace fs = std::filesystem;

namespace {

std::string config(const std::string& name) { return std::string(HRL_CONFIG_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("hrl_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int count_lines(const fs::path& p) {
    std::ifstream is(p);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) ++n;
    return n;
}

std::string last_line(const fs::path& p) {
    std::ifstream is(p);
    std::string line, last;
    while (std::getline(is, line))
        if (!line.empty()) last = line;
    return last;
}

/// Writes `text` to a config file inside `dir`.
std::string write_config(const fs::path& dir, const std::string& text) {
    fs::create_directories(dir);
    const auto p = dir / "run.ini";
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST(Config, ParsesSectionsCommentsAndLists) {
    const auto c = Config::parse("seed = 4\n# comment\n[family]\nkind = tree\n; another\ndepth=5\n"
                                 "[separation]\ndepths = 4, 6 ,8\nreduction = false\n");
    EXPECT_EQ(c.get_u64("seed", 0), 4u);
    EXPECT_EQ(c.get_string("family.kind", ""), "tree");
    EXPECT_EQ(c.get_int("family.depth", 0), 5);
    EXPECT_EQ(c.get_int_list("separation.depths", {}), (std::vector<int>{4, 6, 8}));
    EXPECT_FALSE(c.get_bool("separation.reduction", true));
    EXPECT_EQ(c.get_int("family.missing", 9), 9);
}

TEST(Config, RejectsBadValuesAndUnknownKeys) {
    const auto c = Config::parse("[meta_test]\nepisodes = many\ntypo = 3\n");
    EXPECT_THROW(c.get_int("meta_test.episodes", 0), ConfigError);
    EXPECT_THROW(c.reject_unknown({"meta_test"}), ConfigError);
    EXPECT_THROW(Config::load("/nonexistent/x.ini"), ConfigError);
    EXPECT_THROW(family_from_config(Config::parse("[family]\nkind = hexagon\n")), ConfigError);
}

TEST(Config, HashIgnoresOutputLocation) {
    auto a = Config::parse("seed = 1\nout = a\nplot = true\n[family]\nkind = tree\n");
    auto b = Config::parse("seed = 1\n\n[family]\nkind   = tree\n");
    b.set("out", "elsewhere");
    EXPECT_EQ(a.hash(), b.hash());
    b.set("seed", "2");
    EXPECT_NE(a.hash(), b.hash());
    EXPECT_EQ(hex64(255), "00000000000000ff");
}

TEST(Output, CsvQuotesAndChecksColumns) {
    const auto dir = scratch("csv");
    fs::create_directories(dir);
    {
        CsvWriter w((dir / "t.csv").string(), {"a", "b"});
        w.cell("x,y").cell(0.5).end_row();
        w.cell(std::int64_t{3});
        EXPECT_THROW(w.end_row(), std::logic_error);
    }
    EXPECT_EQ(slurp(dir / "t.csv").substr(0, 14), "a,b\n\"x,y\",0.5\n");
}

TEST(Output, SvgHasOnePolylinePerSeries) {
    const auto dir = scratch("svg");
    fs::create_directories(dir);
    write_svg_plot((dir / "p.svg").string(), "t", "x", "y",
                   {{"one", {0, 1, 2}, {0, 1, 4}}, {"two", {0, 1, 2}, {1, 1, 1}}});
    const auto svg = slurp(dir / "p.svg");
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    std::size_t n = 0;
    for (auto p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++n;
    EXPECT_EQ(n, 2u);
}

TEST(Commands, PhaseOrderAndResume) {
    const auto dir = scratch("phases");
    CommandOptions o;
    o.config_path = config("four_room_tiny.ini");
    o.out = dir.string();
    std::ostringstream out, err;
    o.phase = 2;
    EXPECT_EQ(cmd_meta_train(o, out, err), 3);
    EXPECT_NE(err.str().find("phase order"), std::string::npos);
    EXPECT_NE(last_line(dir / "run_record.csv").find("phase order"), std::string::npos);
    o.phase = 1;
    EXPECT_EQ(cmd_meta_train(o, out, err), 0);
    o.phase = 3;
    EXPECT_EQ(cmd_meta_train(o, out, err), 3);
    o.phase = 2;
    EXPECT_EQ(cmd_meta_train(o, out, err), 0);
    o.phase = 3;
    EXPECT_EQ(cmd_meta_train(o, out, err), 0);
    EXPECT_TRUE(fs::exists(dir / "exits.csv"));
    EXPECT_EQ(count_lines(dir / "exits.csv"), 5);
}

TEST(Commands, MissingOracleStateIsReported) {
    const auto dir = scratch("nostate");
    CommandOptions o;
    o.config_path = config("four_room_tiny.ini");
    o.out = dir.string();
    std::ostringstream out, err;
    EXPECT_NE(cmd_meta_test(o, out, err), 0);
    EXPECT_NE(err.str().find("missing oracle state"), std::string::npos);
    const auto rec = last_line(dir / "run_record.csv");
    EXPECT_NE(rec.find("meta-test"), std::string::npos);
    EXPECT_NE(rec.find("missing oracle state"), std::string::npos);
}

TEST(Commands, MetaTestWritesOneRowPerEpisode) {
    const auto dir = scratch("metatest");
    CommandOptions o;
    o.config_path = write_config(dir, "seed = 3\n[family]\nkind = four_room\n[meta_test]\noracle = exact\n"
                                      "horizon = 45\nepisodes = 100\nseeds = 2\n");
    o.out = dir.string();
    o.plot = true;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_meta_test(o, out, err), 0) << err.str();
    EXPECT_EQ(count_lines(dir / "regret.csv"), 1 + 2 * 100);
    EXPECT_EQ(count_lines(dir / "regret_summary.csv"), 3);
    EXPECT_TRUE(fs::exists(dir / "regret.svg"));

    const auto quiet = scratch("metatest_quiet");
    o.out = quiet.string();
    o.plot = false;
    ASSERT_EQ(cmd_meta_test(o, out, err), 0);
    EXPECT_FALSE(fs::exists(quiet / "regret.svg"));
    EXPECT_EQ(slurp(dir / "regret.csv"), slurp(quiet / "regret.csv"));
}

TEST(Commands, ValidateJsonAndBrokenFamily) {
    const auto dir = scratch("validate");
    CommandOptions o;
    o.config_path = config("four_room.ini");
    o.out = dir.string();
    o.json = true;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_validate(o, out, err), 0) << err.str();
    EXPECT_NE(out.str().find("\"violations\""), std::string::npos);

    std::ostringstream out2, err2;
    o.config_path = config("broken_family.ini");
    EXPECT_EQ(cmd_validate(o, out2, err2), 1);
    EXPECT_NE(out2.str().find("never changes"), std::string::npos);
    EXPECT_NE(last_line(dir / "run_record.csv").find("violation"), std::string::npos);
}

TEST(Commands, UnknownKeyIsAConfigError) {
    const auto dir = scratch("badkey");
    CommandOptions o;
    o.config_path = write_config(dir, "[family]\nkind = four_room\n[meta_test]\nepisode = 10\n");
    o.out = dir.string();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_meta_test(o, out, err), 2);
    EXPECT_NE(err.str().find("episode"), std::string::npos);
}

TEST(Commands, SeparationIsDeterministicAcrossOutputDirs) {
    const std::string text = "seed = 5\n[separation]\ndepths = 3\nepisodes = 40\nseeds = 2\n";
    const auto a = scratch("sep_a"), b = scratch("sep_b");
    CommandOptions o;
    std::ostringstream out, err;
    o.config_path = write_config(a, text);
    o.out = a.string();
    ASSERT_EQ(cmd_separation(o, out, err), 0) << err.str();
    o.config_path = write_config(b, text);
    o.out = b.string();
    ASSERT_EQ(cmd_separation(o, out, err), 0) << err.str();
    for (const char* f : {"separation.csv", "separation_summary.csv", "separation_curves.csv", "run_record.csv"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}
