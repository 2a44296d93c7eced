#include "cli.hpp"
#include "rhi/io.hpp"
#include "rhi/tensor.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace rhi;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return (fs::path(RHI_DATA_DIR) / name).string(); }

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("rhi-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(AlgebraCheck, Presentation) {
  const auto r = run({"algebra", "check", data("cp3.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "dims: 1,0,1,0,1,0,1"));
  EXPECT_TRUE(contains(r.out, "exact, top degree 6"));
  EXPECT_TRUE(contains(r.out, "associativity: ok"));
}

TEST(AlgebraCheck, TableAndCharacteristicTwo) {
  const auto s0 = run({"algebra", "check", data("s0_f2.json")});
  EXPECT_EQ(s0.code, 0) << s0.err;
  EXPECT_TRUE(contains(s0.out, "dims: 2"));
  const auto rp2 = run({"--json", "algebra", "check", data("rp2_f2.json")});
  ASSERT_EQ(rp2.code, 0) << rp2.err;
  const auto j = nlohmann::json::parse(rp2.out);
  EXPECT_EQ(j["dims"], nlohmann::json({1, 1, 1}));
  EXPECT_EQ(j["top_degree"], 2);
  EXPECT_EQ(j["field"], nlohmann::json({{"Fp", 2}}));
}

TEST(AlgebraCheck, TruncationOverride) {
  const auto r = run({"--truncation-override", "5", "algebra", "check", data("cp3.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "truncated at degree 5"));
  EXPECT_EQ(run({"--strict", "--truncation-override", "5", "algebra", "check", data("cp3.json")}).code, 2);
}

TEST(AlgebraCheck, Failures) {
  const auto bad = run({"algebra", "check", data("malformed.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(contains(bad.err, "relations[0]")) << bad.err;
  const auto na = run({"algebra", "check", data("nonassociative.json")});
  EXPECT_EQ(na.code, 1);
  EXPECT_TRUE(contains(na.out + na.err, "(u, u, v)")) << na.out << na.err;
  EXPECT_EQ(run({"algebra", "check", data("missing.json")}).code, 1);
}

TEST(Invariants, HumanOutput) {
  const auto tc = run({"tc", data("s3_id.map.json"), "4"});
  EXPECT_EQ(tc.code, 0) << tc.err;
  EXPECT_TRUE(contains(tc.out, "value: 3"));
  EXPECT_TRUE(contains(tc.out, "exact: yes"));
  EXPECT_TRUE(contains(run({"cat", data("cp3_id.map.json")}).out, "value: 3"));
  EXPECT_TRUE(contains(run({"tcmw", data("s2_id.map.json")}).out, "value: 2"));
  EXPECT_TRUE(contains(run({"tcmw", data("s3_id.map.json")}).out, "value: 1"));
  EXPECT_TRUE(contains(run({"hd", data("cp2_id.map.json"), data("cp2_zero.map.json")}).out, "value: 2"));
  EXPECT_TRUE(contains(run({"hd", data("cp2_id.map.json"), data("cp2_id.map.json")}).out, "value: 0"));
}

TEST(Invariants, Labels) {
  EXPECT_TRUE(contains(run({"--formal", "cat", data("cp3_id.map.json")}).out, "rational homotopy invariant"));
  EXPECT_TRUE(contains(run({"cat", data("cp3_id.map.json")}).out, "cohomological lower bound"));
  const auto f2 = run({"--formal", "relsecat-lb", data("rp2_f.map.json"), data("rp2_p.map.json")});
  EXPECT_TRUE(contains(f2.out, "not a rational homotopy invariant")) << f2.out;
}

TEST(Invariants, StrictElevatesWarnings) {
  const auto loose = run({"secat", data("cp2_id.map.json"), data("cp2_zero.map.json")});
  EXPECT_EQ(loose.code, 0);
  EXPECT_TRUE(contains(loose.out, "not surjective"));
  EXPECT_EQ(run({"--strict", "secat", data("cp2_id.map.json"), data("cp2_zero.map.json")}).code, 2);
  EXPECT_EQ(run({"--strict", "cat", data("cp3_id.map.json")}).code, 0);
}

TEST(Invariants, RelativeBoundWithPullback) {
  const auto r = run({"relsecat-lb", data("rp2_f.map.json"), data("rp2_p.map.json"), "--pullback", data("s2_q.map.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "value: 0"));
  EXPECT_TRUE(contains(r.out, "nil(ker q) = 1"));
}

TEST(Invariants, MismatchedMapsFail) {
  const auto r = run({"hd", data("cp2_id.map.json"), data("cp3_id.map.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(Json, RoundTripAndWitness) {
  const auto r = run({"--json", "--witness", "tc", data("cp2_id.map.json"), "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const ReportRecord rec = report_from_json(j);
  EXPECT_EQ(rec.name, "tc_n");
  EXPECT_EQ(rec.value, 4);
  EXPECT_TRUE(rec.exact);
  EXPECT_EQ(report_to_json(rec).dump(2) + "\n", r.out);
  EXPECT_EQ(nlohmann::ordered_json::parse(r.out).begin().key(), "name");

  // Re-evaluate the witness factors in the tensor square.
  const AlgebraFile file = load_algebra(data("cp2.json"));
  const auto A = realize<Rational>(file);
  const auto T = tensor_power(A, 2);
  Element<Rational> p = T->unit();
  for (const auto& f : rec.factors) p = multiply(*T, p, normal_form(*T, f));
  ASSERT_EQ(p.degree(), rec.product_degree);
  const auto& v = *p.component(rec.product_degree);
  ASSERT_EQ(static_cast<std::size_t>(v.size()), rec.product_coordinates.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], Rational::parse(rec.product_coordinates[i]));
}

TEST(Table, WritesCacheAndMatches) {
  TempDir dir;
  ::setenv("RHI_CACHE_DIR", dir.path().c_str(), 1);
  const auto r = run({"table", "spheres"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "family,n,l,computed,predicted,match,exact,map_file");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_TRUE(contains(line, ",yes,yes,")) << line;
  }
  EXPECT_EQ(rows, 16);
  EXPECT_TRUE(fs::exists(dir.path() / "spheres_l3.json"));
  EXPECT_TRUE(fs::exists(dir.path() / "spheres_l3_id.map.json"));

  // Cached map files are usable on their own.
  const auto again = run({"tc", (dir.path() / "spheres_l2_id.map.json").string(), "3"});
  EXPECT_TRUE(contains(again.out, "value: 3")) << again.out << again.err;

  const auto js = run({"--json", "table", "exterior", "--k", "1..2", "--n", "2..3"});
  ASSERT_EQ(js.code, 0) << js.err;
  const auto arr = nlohmann::json::parse(js.out);
  ASSERT_EQ(arr.size(), 4u);
  for (const auto& row : arr) {
    EXPECT_EQ(row["computed"], (row["n"].get<int>() - 1) * row["k"].get<int>());
    EXPECT_TRUE(row["match"].get<bool>());
  }
  ::unsetenv("RHI_CACHE_DIR");
}

TEST(Table, Guards) {
  TempDir dir;
  ::setenv("RHI_CACHE_DIR", dir.path().c_str(), 1);
  EXPECT_EQ(run({"table", "exterior", "--k", "4", "--n", "4"}).code, 1);
  EXPECT_EQ(run({"table", "spheres", "--n", "1..3"}).code, 1);
  EXPECT_EQ(run({"table", "tori"}).code, 1);
  EXPECT_EQ(run({"table", "cproj", "--l", "x"}).code, 1);
  ::unsetenv("RHI_CACHE_DIR");
}

TEST(Fuzz, AgreesWithOracle) {
  EXPECT_EQ(run({"fuzz", "--seeds", "10"}).code, 0);
  EXPECT_EQ(run({"fuzz", "--seeds", "10", "--field", "5"}).code, 0);
}

TEST(Usage, BadInvocations) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"tc", data("s3_id.map.json")}).code, 0);
  EXPECT_NE(run({"tc", data("s3_id.map.json"), "1"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}
