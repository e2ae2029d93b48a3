#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "sdisac/error.hpp"
#include "sdisac/harness.hpp"

using namespace sdisac;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() /
                     ("sdisac_test_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ScenarioConfig small(Mode mode) {
  ScenarioConfig c = ScenarioConfig::defaults(mode);
  c.set("nt", "8");
  c.set("k", "2");
  c.set("l", "16");
  c.set("grid_size", "90");
  c.set("max_lag", "4");
  c.set("trials", "3");
  c.set("seed", "17");
  return c;
}

double parse(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

bool same_12_digits(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("configuration keys and aliases") {
  ScenarioConfig c = ScenarioConfig::defaults(Mode::Beampattern);
  CHECK(c.num_tx == 20);
  CHECK(c.num_users == 4);
  CHECK(c.block_len == 64);
  CHECK(c.effective_trials() == 1000);
  CHECK_FALSE(c.beta.has_value());

  c.set("Nt", "16");
  c.set("num_users", "3");
  c.set("gamma_db", "20");
  c.set("targets", "-30, 10");
  c.set("beta", "0.4");
  CHECK(c.num_tx == 16);
  CHECK(c.num_users == 3);
  CHECK(c.sinr_target == doctest::Approx(100.0));
  CHECK(c.targets == std::vector<double>{-30.0, 10.0});
  REQUIRE(c.beta.has_value());
  CHECK(*c.beta == 0.4);
  c.set("beta", "qos");
  CHECK_FALSE(c.beta.has_value());
  c.set("rho", "0.5");
  c.set("rho_imag", "0.2");
  CHECK(c.rho == cdouble(0.5, 0.2));

  CHECK(ScenarioConfig::defaults(Mode::Isl).effective_trials() == 200);
  ScenarioConfig ti = ScenarioConfig::defaults(Mode::Tradeoff);
  ti.set("objective", "isl");
  CHECK(ti.effective_trials() == 200);
  const ScenarioConfig ic = ScenarioConfig::defaults(Mode::ImperfectCsi);
  REQUIRE(ic.beta.has_value());
  CHECK(*ic.beta == 0.5);

  for (auto [k, v] : {std::pair{"bogus", "1"}, std::pair{"nt", "abc"}, std::pair{"trials", "-3"},
                      std::pair{"mode", "sonar"}, std::pair{"beta", "1.5"}, std::pair{"rho", "x"}}) {
    try {
      ScenarioConfig d = ScenarioConfig::defaults(Mode::Beampattern);
      d.set(k, v);
      d.validate();
      FAIL("expected ConfigError for " << k << "=" << v);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
    }
  }

  ScenarioConfig bad = ScenarioConfig::defaults(Mode::Beampattern);
  bad.set("k", "20");
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("configuration files") {
  const fs::path dir = scratch("config");
  {
    std::ofstream f(dir / "good.cfg");
    f << "# scenario\nmode = tradeoff\n\nbetas = 0.2,0.6  # sweep\nnt = 10\n";
  }
  ScenarioConfig c = ScenarioConfig::defaults(Mode::Beampattern);
  c.load_file(dir / "good.cfg");
  CHECK(c.mode == Mode::Tradeoff);
  CHECK(c.beta_sweep == std::vector<double>{0.2, 0.6});
  CHECK(c.num_tx == 10);

  ScenarioConfig again = ScenarioConfig::defaults(Mode::Beampattern);
  {
    std::ofstream f(dir / "roundtrip.cfg");
    f << c.to_text();
  }
  again.load_file(dir / "roundtrip.cfg");
  CHECK(again.to_text() == c.to_text());

  {
    std::ofstream f(dir / "bad.cfg");
    f << "nt = 10\nthis line has no separator\n";
  }
  try {
    c.load_file(dir / "bad.cfg");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(std::string(e.what()).find("bad.cfg:2") != std::string::npos);
  }
  CHECK_THROWS_AS(c.load_file(dir / "missing.cfg"), Error);
  fs::remove_all(dir);
}

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::pow(10.0, u(g)) * (i % 2 ? -1.0 : 1.0);
    CHECK(parse(format_number(v)) == v);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("beampattern run writes consistent CSV files") {
  const ScenarioConfig c = small(Mode::Beampattern);
  const ScenarioResult r = run_scenario(c, 1);
  REQUIRE(r.records.size() == 3);
  CHECK(r.failures() == 0);
  const fs::path dir = scratch("bp");
  write_outputs(r, dir);

  const CsvTable t = read_csv(dir / "trials.csv");
  REQUIRE(t.rows.size() == 3);
  const int cp = t.column("comm_power"), bc = t.column("beampattern_cost");
  const int sr = t.column("sum_rate"), s1 = t.column("sinr_1"), ps = t.column("pslr");
  REQUIRE(cp >= 0);
  REQUIRE(bc >= 0);
  REQUIRE(s1 >= 0);
  for (std::size_t i = 0; i < 3; ++i) {
    const TrialRecord& rec = r.records[i];
    const auto& row = t.rows[i];
    CHECK(same_12_digits(parse(row[std::size_t(cp)]), *rec.comm_power));
    CHECK(same_12_digits(parse(row[std::size_t(bc)]), *rec.beampattern_cost));
    CHECK(same_12_digits(parse(row[std::size_t(sr)]), *rec.sum_rate));
    CHECK(same_12_digits(parse(row[std::size_t(s1)]), rec.sinr[0]));
    CHECK(same_12_digits(parse(row[std::size_t(ps)]), *rec.pslr));
    CHECK(row[std::size_t(t.column("isl"))].empty());
    CHECK(*rec.zero_interference_error <= 1e-8);
  }

  const CsvTable curve = read_csv(dir / "beampattern_vs_angle.csv");
  CHECK(curve.rows.size() == 90);
  const int g = curve.column("gain"), gd = curve.column("gain_db");
  for (const auto& row : curve.rows)
    CHECK(parse(row[std::size_t(gd)]) ==
          doctest::Approx(10.0 * std::log10(parse(row[std::size_t(g)]))).epsilon(1e-12));

  const CsvTable summary = read_csv(dir / "summary.csv");
  bool found = false;
  for (const auto& row : summary.rows)
    if (row[std::size_t(summary.column("metric"))] == "beampattern_cost") {
      found = true;
      CHECK(same_12_digits(parse(row[std::size_t(summary.column("mean"))]),
                           *r.mean(0, "beampattern_cost")));
    }
  CHECK(found);
  CHECK(fs::exists(dir / "config.txt"));
  fs::remove_all(dir);
}

TEST_CASE("sidelobe run writes one row per lag") {
  ScenarioConfig c = small(Mode::Isl);
  c.set("trials", "2");
  const ScenarioResult r = run_scenario(c, 1);
  CHECK(r.failures() == 0);
  const fs::path dir = scratch("isl");
  write_outputs(r, dir);
  CHECK(read_csv(dir / "sidelobe_vs_lag.csv").rows.size() == 3);
  CHECK(r.records[0].per_lag.size() == 3);
  CHECK_FALSE(r.records[0].beampattern_cost.has_value());
  fs::remove_all(dir);
}

TEST_CASE("radar-only runs report no communication fields") {
  ScenarioConfig c = small(Mode::RadarOnly);
  c.set("trials", "2");
  const ScenarioResult r = run_scenario(c, 1);
  CHECK(r.failures() == 0);
  for (const TrialRecord& rec : r.records) {
    CHECK_FALSE(rec.comm_power.has_value());
    CHECK_FALSE(rec.sum_rate.has_value());
    CHECK(rec.sinr.empty());
    CHECK(rec.beampattern_cost.has_value());
  }
  CHECK_FALSE(r.mean(0, "sum_rate").has_value());
}

TEST_CASE("sweeps produce one curve row per point") {
  ScenarioConfig t = small(Mode::Tradeoff);
  t.set("trials", "2");
  t.set("betas", "0.2,0.5,0.8");
  const ScenarioResult rt = run_scenario(t, 1);
  REQUIRE(rt.points.size() == 4);
  CHECK(rt.points.back().radar_only);
  for (int p = 0; p < 3; ++p)
    CHECK(*rt.mean(p, "beta") == doctest::Approx(rt.points[std::size_t(p)].value).epsilon(1e-12));
  const fs::path dir = scratch("sweep");
  write_outputs(rt, dir);
  CHECK(read_csv(dir / "cost_vs_beta.csv").rows.size() == 3);
  CHECK(read_csv(dir / "rate_vs_pslr.csv").rows.size() == 3);

  ScenarioConfig w = small(Mode::ImperfectCsi);
  w.set("trials", "2");
  w.set("omegas", "0.2,0.8");
  const ScenarioResult rw = run_scenario(w, 1);
  write_outputs(rw, dir);
  CHECK(read_csv(dir / "rate_pslr_vs_omega.csv").rows.size() == 2);
  CHECK(rw.records[0].effective_interference.has_value());
  CHECK(rw.records[0].realized_interference.has_value());
  fs::remove_all(dir);
}

TEST_CASE("aggregate output does not depend on the worker count") {
  ScenarioConfig c = small(Mode::Tradeoff);
  c.set("trials", "4");
  c.set("betas", "0.3,0.7");
  const fs::path a = scratch("w1"), b = scratch("w3");
  write_outputs(run_scenario(c, 1), a);
  write_outputs(run_scenario(c, 3), b);
  for (const auto& e : fs::directory_iterator(a)) {
    const std::string name = e.path().filename().string();
    if (name == "trials.csv") continue;
    CHECK_MESSAGE(slurp(e.path()) == slurp(b / name), name);
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("trial failures are recorded, not thrown") {
  ScenarioConfig c = small(Mode::Beampattern);
  c.set("gamma_db", "50");
  const ScenarioResult r = run_scenario(c, 1);
  for (const TrialRecord& rec : r.records) {
    CHECK_FALSE(rec.ok());
    CHECK(rec.status == "PowerBudgetExceeded");
  }
}
