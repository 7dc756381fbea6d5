#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mixedform/cli.hpp"
#include "mixedform/json_io.hpp"

using namespace mixedform;

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "mixedform");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST(Cli, PolygonSignatureReport) {
  const Outcome o = invoke({"--json", "polygon", "signature", fixture("square.json")});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  const Json r = Json::parse(o.out);
  EXPECT_EQ(r["schema"], 1);
  EXPECT_EQ(r["status"], "ok");
  EXPECT_EQ(r["results"]["signature"]["positive"], 1);
  EXPECT_EQ(r["results"]["signature"]["zero"], 2);
  EXPECT_EQ(r["results"]["signature"]["negative"], 1);
}

TEST(Cli, SurfaceCheckReportsGenusAndCurvature) {
  const Outcome o = invoke({"--json", "surface", "check", fixture("cube_mesh.json")});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  const Json r = Json::parse(o.out);
  EXPECT_EQ(r["results"]["genus"], 0);
  EXPECT_NEAR(r["results"]["total_curvature"].get<double>(), 4 * 3.141592653589793, 1e-12);
}

TEST(Cli, FuchsianPositiveDefinite) {
  const Outcome ok = invoke({"--json", "fuchsian", "check-pd", fixture("fan_g2.json")});
  EXPECT_EQ(ok.code, cli::kExitOk) << ok.err;
  EXPECT_GT(Json::parse(ok.out)["results"]["min_eigenvalue"].get<double>(), 0);
  const Outcome bad = invoke({"--json", "fuchsian", "check-pd", fixture("fan_not_pd.json")});
  EXPECT_EQ(bad.code, cli::kExitInvariant);
  EXPECT_EQ(Json::parse(bad.out)["status"], "invariant_violated");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"polygon", "signature", fixture("bad_polygon.json")}).code, cli::kExitInput);
  EXPECT_EQ(invoke({"polygon", "signature", fixture("malformed.json")}).code, cli::kExitInput);
  EXPECT_EQ(invoke({"polygon", "signature", fixture("missing.json")}).code, cli::kExitInput);
  EXPECT_EQ(invoke({"polytope", "build", fixture("redundant_plane.json")}).code, cli::kExitInput);
  EXPECT_EQ(invoke({"polytope", "build", fixture("tall_box.json")}).code, cli::kExitOk);
  EXPECT_EQ(invoke({"--bogus", "polygon", "signature", fixture("square.json")}).code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"--tol", "2", "polygon", "signature", fixture("square.json")}).code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"polygon", "frobnicate", fixture("square.json")}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
}

TEST(Cli, SeededRunsAreByteIdentical) {
  const std::vector<std::string> args{"--json", "--seed", "17", "--samples", "50",
                                      "polygon", "minkowski", fixture("square.json")};
  const Outcome a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, cli::kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["seed"], 17);
}

TEST(Cli, PolytopeCommands) {
  const Outcome v = invoke({"--json", "polytope", "volume", fixture("cube.json")});
  ASSERT_EQ(v.code, cli::kExitOk) << v.err;
  EXPECT_NEAR(Json::parse(v.out)["results"]["volume"].get<double>(), 1, 1e-14);
  const Outcome s = invoke({"--json", "--depth", "6", "polytope", "sphere-area", fixture("cube.json")});
  ASSERT_EQ(s.code, cli::kExitOk) << s.err;
  const Outcome m = invoke({"--json", "polytope", "boundary-metric", fixture("octahedron.json")});
  EXPECT_EQ(m.code, cli::kExitOk) << m.err;
  const Outcome af = invoke({"--json", "polytope", "af-check", fixture("octahedron.json")});
  EXPECT_EQ(af.code, cli::kExitInput);
}
