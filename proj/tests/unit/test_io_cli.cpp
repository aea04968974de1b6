#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "transiso/cli.hpp"
#include "transiso/error.hpp"
#include "transiso/io.hpp"

using namespace transiso;
using io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "transiso");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

const std::string kC2xC4 = R"({"kind":"direct_product","factors":[{"kind":"cyclic","n":2},{"kind":"cyclic","n":4}]})";

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("transiso_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Sets an environment variable for the lifetime of the object.
struct EnvGuard {
  std::string name;
  EnvGuard(std::string n, const std::string& v) : name(std::move(n)) { ::setenv(name.c_str(), v.c_str(), 1); }
  ~EnvGuard() { ::unsetenv(name.c_str()); }
};

}  // namespace

TEST(GroupSpecJson, JsonRoundTrip) {
  const std::vector<GroupSpec> specs = {
      GroupSpec::cyclic(12),
      GroupSpec::dihedral(5),
      GroupSpec::symmetric(4),
      GroupSpec::alternating(4),
      GroupSpec::quaternion8(),
      GroupSpec::extraspecial_exp_p(3),
      GroupSpec::elementary_abelian(2, 3),
      GroupSpec::direct_product({GroupSpec::cyclic(2), GroupSpec::quaternion8()}),
      GroupSpec::cayley({{0, 1}, {1, 0}}),
      GroupSpec::perm(3, {{1, 2, 0}, {1, 0, 2}}),
  };
  for (const auto& s : specs) {
    const json j = io::spec_to_json(s);
    const GroupSpec back = io::spec_from_json(json::parse(j.dump()));
    EXPECT_EQ(io::spec_to_json(back), j);
    const Group a = build(s), b = build(back);
    EXPECT_EQ(a.order(), b.order());
    for (Element x = 0; x < a.order(); ++x)
      for (Element y = 0; y < a.order(); ++y) ASSERT_EQ(a.mul(x, y), b.mul(x, y));
  }
}

TEST(GroupSpecJson, Errors) {
  EXPECT_THROW(io::spec_from_json(json::parse(R"({"kind":"cyclic"})")), InvalidArgument);
  EXPECT_THROW(io::spec_from_json(json::parse(R"({"kind":"bogus","n":3})")), InvalidArgument);
  EXPECT_THROW(io::spec_from_json(json::parse(R"({"kind":"cyclic","n":-3})")), InvalidArgument);
  EXPECT_THROW(io::spec_from_json(json::parse(R"({"kind":"direct_product","factors":[]})")), InvalidArgument);
  EXPECT_THROW(io::spec_from_json(json::parse(R"({"kind":"perm","generators":[[1,"x"]]})")), InvalidArgument);
  EXPECT_THROW(io::spec_from_json(json::parse("[1,2]")), InvalidArgument);
  EXPECT_THROW(io::resolve_group_arg("no_such_group"), InvalidArgument);
  EXPECT_THROW(io::resolve_group_arg("{not json"), InvalidArgument);
}

TEST(GroupSpecJson, NamedShortcutsAndFixtures) {
  EXPECT_EQ(build(io::resolve_group_arg("quaternion8")).order(), 8u);
  EXPECT_EQ(build(io::resolve_group_arg("heisenberg3")).order(), 27u);
  EXPECT_EQ(build(io::resolve_group_arg("alt5")).order(), 60u);
  EXPECT_EQ(build(io::resolve_group_arg("sym4")).order(), 24u);
  const Group g = fixture::load("order243_exp3");
  EXPECT_EQ(g.order(), 243u);
  EXPECT_EQ(g.label(), "C3 x| C3^4");
  for (int i = 1; i <= 15; ++i) {
    char name[16];
    std::snprintf(name, sizeof name, "order81_%02d", i);
    EXPECT_EQ(fixture::load(name).order(), 81u) << name;
  }
}

TEST(GroupSpecJson, MaxOrderFromEnvironment) {
  {
    EnvGuard env("TRANSISO_MAX_ORDER", "10");
    EXPECT_EQ(io::build_options_from_env().max_order, 10u);
    const auto r = cli({"graph", "--group", R"({"kind":"cyclic","n":12})", "--order", "2"});
    EXPECT_EQ(r.code, kExitError);
    EXPECT_NE(r.err.find("error"), std::string::npos);
  }
  {
    EnvGuard env("TRANSISO_MAX_ORDER", "abc");
    EXPECT_THROW(io::build_options_from_env(), InvalidArgument);
  }
  {
    EnvGuard env("TRANSISO_MAX_ORDER", "6000");
    EXPECT_EQ(cli({"subgroups", "--group", R"({"kind":"cyclic","n":5500})", "--order", "11"}).code, kExitOk);
  }
  EXPECT_EQ(cli({"subgroups", "--group", R"({"kind":"cyclic","n":5500})", "--order", "11"}).code, kExitError);
}

TEST(ParseSubgroup, GeneratorLists) {
  const Group s3 = build(GroupSpec::symmetric(3));
  EXPECT_EQ(io::parse_subgroup(s3, std::string("[0,1]")).order(), 2u);
  EXPECT_EQ(io::parse_subgroup(s3, std::string("[]")).order(), 1u);
  EXPECT_EQ(io::parse_subgroup(s3, std::string("[1,2]")).order(), 6u);
  EXPECT_THROW(io::parse_subgroup(s3, std::string("[9]")), InvalidArgument);
  EXPECT_THROW(io::parse_subgroup(s3, std::string("x")), InvalidArgument);
}

TEST(Cli, GraphDot) {
  const auto r = cli({"graph", "--group", kC2xC4, "--order", "2", "--format", "dot"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("graph G {", 0), 0u);
  EXPECT_EQ(count(r.out, "[label=\"<"), 3u);
  EXPECT_EQ(count(r.out, " -- "), 1u);
  EXPECT_EQ(count(r.out, "dashed"), 0u);

  const auto one = cli({"graph", "--group", R"({"kind":"cyclic","n":12})", "--order", "4", "--format", "dot"});
  EXPECT_EQ(one.code, kExitOk);
  EXPECT_EQ(count(one.out, "[label=\"<"), 1u);
  EXPECT_EQ(count(one.out, " -- "), 0u);
}

TEST(Cli, GraphJson) {
  const auto r = cli({"graph", "--group", kC2xC4, "--order", "4", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("d"), 4);
  EXPECT_EQ(j.at("group_order"), 8);
  EXPECT_EQ(j.at("vertices").size(), 3u);
  std::size_t adjacent = 0;
  for (const auto& e : j.at("edges")) {
    adjacent += e.at("status") == "ADJACENT";
    EXPECT_TRUE(e.contains("rule"));
    EXPECT_TRUE(e.contains("witness"));
  }
  EXPECT_EQ(adjacent, 3u);
}

TEST(Cli, GraphText) {
  const auto r = cli({"graph", "--group", kC2xC4, "--order", "2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("ADJACENT"), std::string::npos);
}

TEST(Cli, UnknownPairsExitTwo) {
  // The normal V4 of Sym(4) against a cyclic C4 needs loop enumeration.
  const auto r = cli({"graph", "--group", "sym4", "--order", "4", "--strategy", "structural", "--format", "dot"});
  EXPECT_EQ(r.code, kExitUndecided);
  EXPECT_GT(count(r.out, "dashed"), 0u);
  EXPECT_EQ(cli({"graph", "--group", "sym4", "--order", "4"}).code, kExitOk);
  EXPECT_EQ(cli({"complete", "--group", "sym4", "--order", "4", "--strategy", "structural"}).code, kExitUndecided);
}

TEST(Cli, Sym5InvolutionsDecidedByRules) {
  const auto r = cli({"graph", "--group", R"({"kind":"symmetric","n":5})", "--order", "2", "--budget", "1000",
                      "--format", "json"});
  EXPECT_EQ(r.code, kExitOk);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("vertices").size(), 25u);
  for (const auto& e : j.at("edges")) EXPECT_NE(e.at("status"), "UNKNOWN");
}

TEST(Cli, Complete) {
  const auto d12 = cli({"complete", "--group", R"({"kind":"dihedral","n":6})", "--order", "all"});
  EXPECT_EQ(d12.code, kExitOk);
  EXPECT_EQ(count(d12.out, "COMPLETE"), 6u);
  EXPECT_EQ(count(d12.out, "NOT_COMPLETE"), 0u);

  const auto q = cli({"complete", "--group", "quaternion8", "--order", "all", "--format", "json"});
  EXPECT_EQ(q.code, kExitOk);
  for (const auto& r : json::parse(q.out).at("divisors")) EXPECT_EQ(r.at("verdict"), "COMPLETE");

  const auto e9 = cli({"complete", "--group", fixture::path("order27_exp9"), "--order", "3"});
  EXPECT_EQ(e9.code, kExitOk);
  EXPECT_NE(e9.out.find("NOT_COMPLETE"), std::string::npos);
}

TEST(Cli, Criterion) {
  const auto r = cli({"criterion", "--group", fixture::path("order243_exp3")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("COMPLETE", 0), 0u);
  const auto n = cli({"criterion", "--group", fixture::path("order81_07"), "--format", "json"});
  EXPECT_EQ(n.code, kExitOk);
  EXPECT_EQ(json::parse(n.out).at("verdict"), "NOT_COMPLETE");
  const auto bad = cli({"criterion", "--group", "sym3"});
  EXPECT_EQ(bad.code, kExitError);
  EXPECT_NE(bad.err.find("p-group"), std::string::npos);
}

TEST(Cli, Subgroups) {
  const auto r = cli({"subgroups", "--group", R"({"kind":"extraspecial_exp_p","p":3})", "--order", "9"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(count(r.out, "order 9"), 4u);
  const auto j = cli({"subgroups", "--group", "heisenberg3", "--order", "3", "--format", "json"});
  EXPECT_EQ(json::parse(j.out).size(), 13u);
  const auto lat = cli({"lattice", "--group", "sym3", "--format", "json"});
  EXPECT_EQ(json::parse(lat.out).size(), 6u);
}

TEST(Cli, Loops) {
  const auto r = cli({"loops", "--group", R"({"kind":"symmetric","n":3})", "--subgroup", "[0,1]"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("4 NRTs, 4 examined"), std::string::npos);
  EXPECT_NE(r.out.find("exhaustive=true"), std::string::npos);
  const auto j = cli({"loops", "--group", "sym3", "--subgroup", "[1]", "--format", "json"});
  EXPECT_EQ(j.code, kExitOk);
  EXPECT_EQ(json::parse(j.out).at("exhaustive"), true);
  // Over budget: flagged with exit 2.
  const auto s = cli({"loops", "--group", "sym4", "--subgroup", "[1]", "--budget", "10"});
  EXPECT_EQ(s.code, kExitUndecided);
  EXPECT_NE(s.out.find("exhaustive=false"), std::string::npos);
}

TEST(Cli, Errors) {
  EXPECT_EQ(cli({"graph", "--group", "nope", "--order", "2"}).code, kExitError);
  const auto nd = cli({"graph", "--group", "sym4", "--order", "5"});
  EXPECT_EQ(nd.code, kExitError);
  EXPECT_NE(nd.err.find("does not divide"), std::string::npos);
  EXPECT_EQ(cli({"graph", "--group", "sym4", "--order", "x"}).code, kExitError);
  EXPECT_EQ(cli({"graph", "--order", "2"}).code, kExitError);
  EXPECT_EQ(cli({"graph", "--group", "sym4", "--order", "2", "--strategy", "magic"}).code, kExitError);
  EXPECT_EQ(cli({"graph", "--group", "sym4", "--order", "2", "--budget", "0"}).code, kExitError);
  EXPECT_EQ(cli({}).code, kExitError);
  EXPECT_EQ(cli({"graph", "--group", "sym4", "--order", "2", "--out", "/nonexistent/dir/x"}).code, kExitError);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, OutFileAndVerifyRoundTrip) {
  const auto path = scratch("sym4_d2.json");
  const auto r = cli({"graph", "--group", "sym4", "--order", "2", "--format", "json", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  const auto v = cli({"verify", "--group", "sym4", "--graph", path.string()});
  EXPECT_EQ(v.code, kExitOk) << v.out << v.err;
  EXPECT_NE(v.out.find("OK: 36 pairs checked"), std::string::npos);

  // Break one automorphism witness.
  json j = json::parse(slurp(path));
  bool changed = false;
  for (auto& e : j.at("edges"))
    if (!changed && e.at("witness").is_object() && e.at("witness").at("kind") == "automorphism") {
      auto& m = e.at("witness").at("map");
      std::swap(m[1], m[2]);
      changed = true;
    }
  ASSERT_TRUE(changed);
  const auto bad_path = scratch("sym4_d2_bad.json");
  std::ofstream(bad_path) << j.dump();
  const auto bad = cli({"verify", "--group", "sym4", "--graph", bad_path.string()});
  EXPECT_EQ(bad.code, kExitError);
  EXPECT_NE(bad.out.find("FAILED"), std::string::npos);

  std::ofstream(scratch("garbage.json")) << "{";
  EXPECT_EQ(cli({"verify", "--group", "sym4", "--graph", scratch("garbage.json").string()}).code, kExitError);
  EXPECT_EQ(cli({"verify", "--group", "sym3", "--graph", path.string()}).code, kExitError);
  std::filesystem::remove_all(path.parent_path());
}

TEST(Graph, JsonRoundTripInProcess) {
  const Group g = build(GroupSpec::dihedral(6));
  for (std::size_t d : {2u, 3u, 4u, 6u}) {
    const TransisoGraph a = build_graph(g, d);
    const json j = io::graph_to_json(a);
    const TransisoGraph b = io::graph_from_json(g, json::parse(j.dump()));
    EXPECT_EQ(io::graph_to_json(b), j);
    EXPECT_TRUE(verify_graph(b).empty());
    EXPECT_EQ(io::graph_to_dot(a), io::graph_to_dot(b));
  }
  json j = io::graph_to_json(build_graph(g, 2));
  j["edges"].erase(0);
  EXPECT_THROW(io::graph_from_json(g, j), InvalidArgument);
  j = io::graph_to_json(build_graph(g, 2));
  j["edges"][0]["status"] = "MAYBE";
  EXPECT_THROW(io::graph_from_json(g, j), InvalidArgument);
}

TEST(Determinism, ByteIdenticalOutput) {
  for (const std::string fmt : {"json", "dot", "text"}) {
    const auto a = cli({"graph", "--group", "sym4", "--order", "2", "--format", fmt});
    const auto b = cli({"graph", "--group", "sym4", "--order", "2", "--format", fmt});
    const auto c = cli({"graph", "--group", "sym4", "--order", "2", "--format", fmt, "--workers", "3"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
  }
  const auto x = cli({"complete", "--group", "heisenberg3", "--format", "json"});
  const auto y = cli({"complete", "--group", "heisenberg3", "--format", "json", "--workers", "2"});
  EXPECT_EQ(x.out, y.out);
}
