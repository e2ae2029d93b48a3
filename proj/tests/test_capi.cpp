#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "sdisac/sdisac.h"

namespace fs = std::filesystem;

TEST_CASE("scenario lifecycle through the C interface") {
  sdisac_scenario* sc = nullptr;
  REQUIRE(sdisac_scenario_create("beampattern", &sc) == SDISAC_OK);
  REQUIRE(sc != nullptr);
  for (auto [k, v] : {std::pair{"nt", "8"}, std::pair{"k", "2"}, std::pair{"l", "16"},
                      std::pair{"grid_size", "90"}, std::pair{"trials", "2"}})
    CHECK(sdisac_scenario_set(sc, k, v) == SDISAC_OK);

  CHECK(sdisac_scenario_set(sc, "bogus", "1") == SDISAC_ERR_CONFIG);
  CHECK(std::string(sdisac_last_error()).find("bogus") != std::string::npos);

  size_t needed = 0;
  CHECK(sdisac_scenario_describe(sc, nullptr, 0, &needed) == SDISAC_OK);
  CHECK(needed > 1);
  std::vector<char> text(needed);
  CHECK(sdisac_scenario_describe(sc, text.data(), text.size(), nullptr) == SDISAC_OK);
  CHECK(std::string(text.data()).find("num_tx = 8") != std::string::npos);
  char tiny[4];
  CHECK(sdisac_scenario_describe(sc, tiny, sizeof tiny, nullptr) == SDISAC_ERR_BUFFER_TOO_SMALL);

  sdisac_result* res = nullptr;
  REQUIRE(sdisac_run(sc, 2, &res) == SDISAC_OK);
  CHECK(sdisac_result_point_count(res) == 1);
  CHECK(sdisac_result_trial_count(res) == 2);
  CHECK(sdisac_result_failure_count(res) == 0);

  char label[64];
  CHECK(sdisac_result_point_label(res, 0, label, sizeof label) == SDISAC_OK);
  CHECK(std::string(label) == "beampattern");
  CHECK(sdisac_result_point_label(res, 5, label, sizeof label) == SDISAC_ERR_NOT_FOUND);

  double mean = 0.0, se = 0.0;
  size_t count = 0;
  CHECK(sdisac_result_mean(res, 0, "beampattern_cost", &mean, &se, &count) == SDISAC_OK);
  CHECK(mean > 0.0);
  CHECK(count == 2);
  CHECK(sdisac_result_mean(res, 0, "isl", &mean, nullptr, nullptr) == SDISAC_ERR_NOT_FOUND);

  const fs::path dir = fs::temp_directory_path() / ("sdisac_capi_" + std::to_string(::getpid()));
  CHECK(sdisac_result_write(res, dir.c_str()) == SDISAC_OK);
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "beampattern_vs_angle.csv"));
  fs::remove_all(dir);

  sdisac_result_destroy(res);
  sdisac_scenario_destroy(sc);
}

TEST_CASE("C interface argument errors") {
  sdisac_scenario* sc = nullptr;
  CHECK(sdisac_scenario_create("sonar", &sc) == SDISAC_ERR_CONFIG);
  CHECK(sc == nullptr);
  CHECK(sdisac_scenario_create(nullptr, &sc) == SDISAC_ERR_NULL_POINTER);
  CHECK(sdisac_scenario_set(nullptr, "nt", "4") == SDISAC_ERR_NULL_POINTER);
  CHECK(sdisac_scenario_load(nullptr, "x") == SDISAC_ERR_NULL_POINTER);
  REQUIRE(sdisac_scenario_create("isl", &sc) == SDISAC_OK);
  CHECK(sdisac_scenario_load(sc, "/nonexistent/sdisac.cfg") != SDISAC_OK);
  sdisac_result* res = nullptr;
  CHECK(sdisac_run(sc, 0, &res) == SDISAC_ERR_CONFIG);
  CHECK(res == nullptr);
  sdisac_scenario_destroy(sc);
  sdisac_scenario_destroy(nullptr);
  sdisac_result_destroy(nullptr);
  CHECK(std::string(sdisac_status_name(SDISAC_ERR_RANK_DEFICIENT)) == "RankDeficient");
  CHECK(std::strlen(sdisac_version()) > 0);
}

TEST_CASE("numeric primitives through the C interface") {
  const double h[] = {1.0, 0.0, 0.0, 0.0};  // 1 x 2, interleaved
  double basis[4] = {};
  REQUIRE(sdisac_null_space(h, 1, 2, basis) == SDISAC_OK);
  CHECK(std::hypot(basis[0], basis[1]) <= 1e-15);
  CHECK(std::hypot(basis[2], basis[3]) == doctest::Approx(1.0).epsilon(1e-15));

  const double square[] = {1, 0, 0, 0, 0, 0, 1, 0};  // 2 x 2 identity
  double out[8];
  CHECK(sdisac_null_space(square, 2, 2, out) == SDISAC_ERR_NULL_SPACE_EMPTY);

  const double one[] = {0.6, 0.8, 0.0, 0.0, 1.0, -1.0};  // 1 x 3
  double beams[6];
  double power = 0.0;
  REQUIRE(sdisac_min_power_precoder(one, 1, 3, 10.0, 0.01, 64, beams, &power) == SDISAC_OK);
  CHECK(power * 64.0 == doctest::Approx(10.0 * 64 * 0.01 / 3.0).epsilon(1e-6));
  CHECK(sdisac_min_power_precoder(one, 1, 3, -1.0, 0.01, 64, beams, &power) ==
        SDISAC_ERR_INVALID_ARGUMENT);
}
