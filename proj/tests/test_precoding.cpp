#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sdisac/channel.hpp"
#include "sdisac/precoding.hpp"

using namespace sdisac;

namespace {

void check_active(const Precoder& p, const QosConfig& qos) {
  for (std::size_t k = 0; k < qos.sinr_targets.size(); ++k) {
    CHECK(p.achieved_sinr[k] >= qos.sinr_targets[k] * (1.0 - 1e-6));
    CHECK(p.achieved_sinr[k] <= qos.sinr_targets[k] * (1.0 + 1e-4));
  }
}

}  // namespace

TEST_CASE("single user precoder matches the scaled matched filter") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ChannelMatrix h = rayleigh_channel(1, 8, 500 + s);
    const QosConfig qos = QosConfig::uniform(1, 10.0, 0.01, 64);
    const Precoder p = min_power_precoder(h, qos);
    const CVector hk = h.user(0);
    const double power = 10.0 * 64 * 0.01 / hk.squaredNorm();
    CHECK(test::rel_err(p.beams.squaredNorm(), power) <= 1e-6);
    CHECK(test::rel_err(p.dual_objective, power) <= 1e-6);
    CHECK(test::rel_err(p.comm_power, power / 64.0) <= 1e-6);
    const CVector f = hk * (std::sqrt(10.0 * 64 * 0.01) / hk.squaredNorm());
    const cdouble phase = p.beams.col(0).dot(f) / std::abs(p.beams.col(0).dot(f));
    CHECK((p.beams.col(0) * phase - f).norm() <= 1e-6 * f.norm());
    check_active(p, qos);
    CHECK(sum_rate(h, p.beams, qos) == doctest::Approx(std::log2(11.0)).epsilon(1e-6));
  }
}

TEST_CASE("orthogonal channels decouple") {
  const CMatrix q = test::random_unitary(6, 31);
  CMatrix h = q.topRows(3);
  const double gains[] = {0.5, 1.0, 3.0};
  const double gamma[] = {2.0, 10.0, 100.0};
  for (int k = 0; k < 3; ++k) h.row(k) *= gains[k];
  QosConfig qos{{gamma[0], gamma[1], gamma[2]}, 0.02, 16};
  const Precoder p = min_power_precoder(ChannelMatrix(h), qos);
  double expect = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double pk = gamma[k] * 16 * 0.02 / (gains[k] * gains[k]);
    expect += pk;
    CHECK(test::rel_err(p.beams.col(k).squaredNorm(), pk) <= 1e-6);
  }
  CHECK(test::rel_err(p.beams.squaredNorm(), expect) <= 1e-6);
  check_active(p, qos);
}

TEST_CASE("precoder power matches the semidefinite relaxation optimum") {
  CMatrix h(3, 4);
  h << cdouble(1.0, 0.5), cdouble(-0.3, 0.2), cdouble(0.7, -0.1), cdouble(0.2, 0.9),
      cdouble(0.4, -0.6), cdouble(1.1, 0.1), cdouble(-0.5, 0.3), cdouble(0.3, -0.2),
      cdouble(-0.2, 0.1), cdouble(0.6, 0.8), cdouble(0.9, 0.4), cdouble(-0.7, 0.5);
  QosConfig qos{{2.0, 5.0, 10.0}, 0.05, 4};
  const Precoder p = min_power_precoder(ChannelMatrix(h), qos);
  const double sdr_optimum = 1.8024266685142571;
  CHECK(test::rel_err(p.beams.squaredNorm(), sdr_optimum) <= 1e-5);
  CHECK(test::rel_err(p.dual_objective, p.beams.squaredNorm()) <= 1e-8);
  check_active(p, qos);
}

TEST_CASE("default scenario precoders meet every target with equality") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ChannelMatrix h = rayleigh_channel(4, 20, 900 + s);
    const QosConfig qos = QosConfig::uniform(4, 10.0, 0.01, 64);
    const Precoder p = min_power_precoder(h, qos);
    check_active(p, qos);
    CHECK(test::rel_err(p.dual_objective, p.beams.squaredNorm()) <= 1e-7);
  }
}

TEST_CASE("minimum power grows with the SINR target") {
  const ChannelMatrix h = rayleigh_channel(4, 20, 3);
  double prev = 0.0;
  for (double g_db : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    const Precoder p = min_power_precoder(h, QosConfig::uniform(4, from_db(g_db), 0.01, 64));
    CHECK(p.comm_power > prev);
    prev = p.comm_power;
  }
}

TEST_CASE("rescaled precoder keeps its direction and meets the target") {
  const ChannelMatrix h = rayleigh_channel(4, 20, 12);
  const QosConfig qos = QosConfig::uniform(4, 10.0, 0.01, 64);
  const Precoder p = min_power_precoder(h, qos);
  const Precoder r = rescale_precoder(p, h, qos, 0.5);
  CHECK(r.comm_power == doctest::Approx(0.5).epsilon(1e-12));
  for (double s : r.achieved_sinr) CHECK(s >= 10.0 * (1.0 - 1e-6));
  for (int k = 0; k < 4; ++k) {
    const cdouble c = p.beams.col(k).dot(r.beams.col(k));
    CHECK(std::abs(c) == doctest::Approx(p.beams.col(k).norm() * r.beams.col(k).norm()).epsilon(1e-12));
  }
}

TEST_CASE("QoS validation") {
  CHECK_THROWS_AS(QosConfig::uniform(2, -1.0, 0.01, 64).validate(2), Error);
  CHECK_THROWS_AS(QosConfig::uniform(2, 1.0, 0.0, 64).validate(2), Error);
  CHECK_THROWS_AS(QosConfig::uniform(2, 1.0, 0.01, 0).validate(2), Error);
  CHECK_THROWS_AS(QosConfig::uniform(3, 1.0, 0.01, 8).validate(2), Error);
}

TEST_CASE("symbol blocks") {
  const SymbolBlock a = generate_symbols(4, 64, 10);
  const SymbolBlock b = generate_symbols(4, 64, 10);
  CHECK(a.symbols == b.symbols);
  CHECK(a.symbols.rows() == 4);
  CHECK(a.symbols.cols() == 64);
  const double amp = 1.0 / std::sqrt(128.0);
  for (Index i = 0; i < a.symbols.size(); ++i) {
    CHECK(std::abs(std::abs(a.symbols(i).real()) - amp) <= 1e-15);
    CHECK(std::abs(std::abs(a.symbols(i).imag()) - amp) <= 1e-15);
  }

  CMatrix acc = CMatrix::Zero(4, 4);
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const CMatrix sym = generate_symbols(4, 64, 20000 + s).symbols;
    acc += sym * sym.adjoint();
  }
  acc /= 2000.0;
  CHECK((acc - CMatrix::Identity(4, 4)).norm() <= 0.05);
}

TEST_CASE("SINR evaluation") {
  const ChannelMatrix h = rayleigh_channel(3, 10, 4);
  const QosConfig qos = QosConfig::uniform(3, 10.0, 0.01, 16);
  const auto zero = achieved_sinr(h, CMatrix::Zero(10, 3), qos);
  for (double s : zero) CHECK(s == 0.0);
  CHECK(sum_rate(zero) == 0.0);
  CHECK(sum_rate(std::vector<double>{1.0, 3.0}) == doctest::Approx(3.0));

  const CMatrix q = test::random_unitary(8, 5);
  const ChannelMatrix orth(q.topRows(2) * 2.0);
  const QosConfig qo = QosConfig::uniform(2, 1.0, 0.1, 4);
  CMatrix f = orth.entries().adjoint();
  f.col(0) *= 1.3;
  f.col(1) *= cdouble(0.0, 0.7);
  const auto base = achieved_sinr(orth, f, qo);
  const auto scaled = achieved_sinr(orth, f * std::sqrt(3.0), qo);
  for (int k = 0; k < 2; ++k) CHECK(scaled[k] == doctest::Approx(3.0 * base[k]).epsilon(1e-12));
}

TEST_CASE("null-space signal leaves the SINR unchanged") {
  const ChannelMatrix h = rayleigh_channel(4, 20, 14);
  const QosConfig qos = QosConfig::uniform(4, 10.0, 0.01, 64);
  const Precoder p = min_power_precoder(h, qos);
  const NullSpaceBasis d = compute_null_space_basis(h);
  const CMatrix added = d.columns() * test::gaussian(16, 64, 15);
  const auto with = achieved_sinr(h, p.beams, qos, added);
  const SymbolBlock s = generate_symbols(4, 64, 16);
  const CMatrix xc = p.beams * s.symbols;
  const auto real_with = realized_sinr(h, p.beams, s.symbols, xc + added, qos);
  const auto real_base = realized_sinr(h, p.beams, s.symbols, xc, qos);
  for (int k = 0; k < 4; ++k) {
    CHECK(test::rel_err(with[k], p.achieved_sinr[k]) <= 1e-8);
    CHECK(test::rel_err(real_with[k], real_base[k]) <= 1e-8);
  }
  const CMatrix leak = test::gaussian(20, 64, 17);
  const auto hurt = achieved_sinr(h, p.beams, qos, leak);
  for (int k = 0; k < 4; ++k) CHECK(hurt[k] < p.achieved_sinr[k]);
}

TEST_CASE("effective interference energy") {
  const CorrelationMatrix r = exponential_correlation(6, 0.6);
  const CMatrix x = test::gaussian(6, 12, 40);
  CHECK(effective_interference_energy(x, r, 0.0) == 0.0);
  const CorrelationMatrix id = exponential_correlation(6, 0.0);
  CHECK(effective_interference_energy(x, id, 0.3) ==
        doctest::Approx(0.09 * x.squaredNorm()).epsilon(1e-12));

  const double closed = effective_interference_energy(x, r, 0.3);
  double acc = 0.0;
  const int draws = 2000;
  for (int i = 0; i < draws; ++i) {
    const CMatrix e = test::gaussian(4, 6, 60000 + i);
    acc += (0.3 * e * r.sqrt * x).squaredNorm() / 4.0;
  }
  CHECK(test::rel_err(acc / draws, closed) <= 0.05);
}
