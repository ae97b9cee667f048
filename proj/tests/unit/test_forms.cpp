#include <gtest/gtest.h>

#include <besseldelta/errors.hpp>
#include <besseldelta/forms.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>

using namespace bdelta;
namespace fs = std::filesystem;

namespace {

const std::shared_ptr<const RamanujanDelta>& delta_1e4() {
  static const auto d = std::make_shared<const RamanujanDelta>(10'000, false);
  return d;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bdelta_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Tau, MatchesOracle) {
  // forms_sums_oracle.py
  const auto t = tau_table(300);
  EXPECT_EQ(t[0], 0);
  EXPECT_EQ(t[1], 1);
  EXPECT_EQ(t[2], -24);
  EXPECT_EQ(t[3], 252);
  EXPECT_EQ(t[5], 4830);
  EXPECT_EQ(t[10], -115920);
  EXPECT_EQ(t[23], 18643272);
  EXPECT_EQ(t[100], BigInt("37534859200"));
  EXPECT_EQ(t[210], BigInt("489123048960"));
  EXPECT_EQ(t[300], BigInt("9458784518400"));
}

TEST(TauProperty, ChunkingDoesNotChangeTable) {
  const auto whole = tau_table(5000);
  for (i64 block : {64, 333, 1000, 4999}) EXPECT_EQ(tau_table(5000, block), whole) << block;
  EXPECT_THROW(tau_table(0), ParameterError);
  EXPECT_THROW(tau_table(kMaxTauTable + 1), ResourceError);
}

TEST(TauCache, RoundTripAndCorruption) {
  const fs::path dir = scratch_dir("cache");
  const auto table = tau_table(2000);
  const fs::path file = tau_cache_path(dir, 2000);
  write_tau_cache(file, table);
  const auto back = read_tau_cache(file, 2000);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, table);
  EXPECT_EQ(tau_checksum(*back), tau_checksum(table));
  EXPECT_FALSE(read_tau_cache(file, 1999).has_value());
  EXPECT_FALSE(read_tau_cache(dir / "missing.bin", 2000).has_value());

  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(100);
    char c;
    f.seekg(100);
    f.get(c);
    f.seekp(100);
    f.put(static_cast<char>(c ^ 0x5a));
  }
  EXPECT_FALSE(read_tau_cache(file, 2000).has_value());
  fs::resize_file(file, 50);
  EXPECT_FALSE(read_tau_cache(file, 2000).has_value());
  fs::remove_all(dir);
}

TEST(Hecke, MultiplicativeRelation) {
  RamanujanDelta d(10'000, false);
  for (i64 m = 1; m <= 100; ++m) {
    for (i64 n = 1; n <= 100; ++n) ASSERT_TRUE(hecke_relation_check(d, m, n)) << m << " " << n;
  }
  EXPECT_THROW(hecke_relation_check(d, 101, 100), ResourceError);
}

TEST(Deligne, BoundHolds) {
  const auto& d = *delta_1e4();
  for (i64 n = 1; n <= 10'000; ++n) ASSERT_TRUE(deligne_check(d, n)) << n;
  EXPECT_EQ(divisor_count(360), 24);
}

TEST(Coefficients, Normalization) {
  const auto& d = *delta_1e4();
  EXPECT_DOUBLE_EQ(d.lambda(1), 1.0);
  EXPECT_NEAR(d.lambda(2), -24.0 / std::pow(2.0, 5.5), 1e-15);
  EXPECT_THROW(d.lambda(0), DomainError);
  EXPECT_THROW(d.lambda(10'001), ResourceError);
  // oracle: sum_{n <= 300} lambda(n)^2 / 300
  EXPECT_NEAR(rankin_selberg_ratio(d, 300), 0.37556260709111891, 1e-13);
}

TEST(Voronoi, BothSidesAgree) {
  VoronoiVerifier v(delta_1e4());
  const cplx eta = v.determine_eta();
  EXPECT_NEAR(std::abs(eta), 1.0, 1e-6);
  const auto r = v.check(0, 1, 50.0);
  EXPECT_TRUE(r.pass) << r.diff << " > " << r.tolerance;
  EXPECT_GT(r.dual_terms, 0);
  EXPECT_THROW(v.check(2, 4, 50.0), ParameterError);
  EXPECT_THROW(v.check(1, 6, 50.0), ParameterError);
  EXPECT_THROW(v.check(1, 2, 500.0), ParameterError);
}
