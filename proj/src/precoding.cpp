// SPDX-License-Identifier: Apache-2.0
//
// sdisac: spatial-division ISAC waveform synthesis
// Copyright (C) 2026 The sdisac authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "sdisac/precoding.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>

#include "sdisac/rng.hpp"

namespace sdisac {

QosConfig QosConfig::uniform(int num_users, double sinr_target, double noise_var, int block_len) {
  QosConfig q{std::vector<double>(static_cast<std::size_t>(num_users), sinr_target), noise_var,
              block_len};
  q.validate(num_users);
  return q;
}

void QosConfig::validate(int num_users) const {
  if (static_cast<int>(sinr_targets.size()) != num_users)
    throw Error(ErrorCode::DimensionMismatch, "need one SINR target per user");
  for (double g : sinr_targets)
    if (!(g > 0.0) || !std::isfinite(g))
      throw Error(ErrorCode::InvalidArgument, "SINR targets must be positive");
  if (!(noise_var > 0.0)) throw Error(ErrorCode::InvalidArgument, "noise variance must be positive");
  if (block_len < 1) throw Error(ErrorCode::InvalidArgument, "block length must be positive");
}

Precoder min_power_precoder(const ChannelMatrix& h, const QosConfig& qos) {
  const int k = h.num_users();
  const int nt = h.num_tx();
  qos.validate(k);

  // Noise-normalized channels: column j is h_j / sqrt(L sigma^2).
  const CMatrix hn = h.entries().adjoint() / std::sqrt(qos.noise_power());
  const Eigen::Map<const RVector> gamma(qos.sinr_targets.data(), k);

  const CMatrix eye = CMatrix::Identity(nt, nt);
  const RVector weight = (1.0 + gamma.array().inverse()).matrix();

  // T(lambda)_j = 1 / ((1 + 1/gamma_j) hbar_j^H M(lambda)^{-1} hbar_j), with its Jacobian.
  auto evaluate = [&](const RVector& lam, RVector& t, RMatrix* jac) {
    const CMatrix m = eye + hn * lam.cast<cdouble>().asDiagonal() * hn.adjoint();
    const CMatrix c = hn.adjoint() * m.llt().solve(hn);
    t.resize(k);
    for (int j = 0; j < k; ++j) t(j) = 1.0 / (weight(j) * c(j, j).real());
    if (jac) {
      jac->resize(k, k);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) (*jac)(j, i) = t(j) * t(j) * weight(j) * std::norm(c(j, i));
    }
  };

  RVector lambda = RVector::Zero(k);
  RVector t, t_newton;
  RMatrix jac;
  int iter = 0;
  bool converged = false;
  while (iter < kPrecoderMaxIterations) {
    ++iter;
    evaluate(lambda, t, &jac);
    RVector next = t;
    // Safeguarded Newton step on lambda = T(lambda); falls back to the plain fixed-point update.
    const RVector step = (RMatrix::Identity(k, k) - jac).partialPivLu().solve(t - lambda);
    const RVector cand = lambda + step;
    if (cand.allFinite() && (cand.array() > 0.0).all()) {
      evaluate(cand, t_newton, nullptr);
      if ((t_newton - cand).lpNorm<1>() < (t - lambda).lpNorm<1>()) next = cand;
    }
    const double prev_sum = lambda.sum();
    const double next_sum = next.sum();
    lambda = next;
    if (std::abs(next_sum - prev_sum) <= kPrecoderTolerance * next_sum) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Error(ErrorCode::SolverNotConverged,
                "precoder fixed point did not converge in " + std::to_string(iter) + " iterations");

  const CMatrix m = eye + hn * lambda.cast<cdouble>().asDiagonal() * hn.adjoint();
  CMatrix u = m.llt().solve(hn);
  u.colwise().normalize();

  const CMatrix gain = hn.adjoint() * u;  // (j, i) = hbar_j^H u_i
  RMatrix sys(k, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      const double g = std::norm(gain(j, i));
      sys(j, i) = (i == j) ? g / gamma(j) : -g;
    }
  const RVector p = sys.partialPivLu().solve(RVector::Ones(k));
  for (int j = 0; j < k; ++j)
    if (!(p(j) > 0.0) || !std::isfinite(p(j)))
      throw Error(ErrorCode::SolverNotConverged, "downlink power allocation is not positive");

  Precoder out;
  out.beams = u * p.cwiseSqrt().cast<cdouble>().asDiagonal();
  out.comm_power = out.beams.squaredNorm() / qos.block_len;
  out.achieved_sinr = achieved_sinr(h, out.beams, qos);
  out.dual_objective = lambda.sum();
  out.iterations = iter;
  return out;
}

Precoder rescale_precoder(const Precoder& p, const ChannelMatrix& h, const QosConfig& qos,
                          double comm_power) {
  if (!(comm_power >= 0.0)) throw Error(ErrorCode::InvalidArgument, "power must be >= 0");
  const double current = p.beams.squaredNorm() / qos.block_len;
  if (!(current > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot rescale a zero precoder");
  Precoder out = p;
  out.beams *= std::sqrt(comm_power / current);
  out.comm_power = out.beams.squaredNorm() / qos.block_len;
  out.achieved_sinr = achieved_sinr(h, out.beams, qos);
  return out;
}

SymbolBlock generate_symbols(int num_users, int block_len, std::uint64_t seed) {
  if (num_users < 1 || block_len < 1)
    throw Error(ErrorCode::InvalidArgument, "symbol block needs K, L >= 1");
  Engine engine = make_engine(seed);
  std::uniform_int_distribution<int> bit(0, 1);
  const double a = 1.0 / std::sqrt(2.0 * block_len);
  CMatrix s(num_users, block_len);
  for (int j = 0; j < block_len; ++j)
    for (int i = 0; i < num_users; ++i) {
      const double re = bit(engine) ? a : -a;
      const double im = bit(engine) ? a : -a;
      s(i, j) = cdouble(re, im);
    }
  return SymbolBlock{std::move(s), "qpsk"};
}

namespace {

void check_beams(const ChannelMatrix& h, const CMatrix& beams) {
  if (beams.rows() != h.num_tx() || beams.cols() != h.num_users())
    throw Error(ErrorCode::DimensionMismatch, "precoder must be Nt x K");
}

std::vector<double> sinr_from_gain(const CMatrix& gain, const RVector& extra, double noise) {
  const Index k = gain.rows();
  std::vector<double> out(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    const double total = gain.row(j).squaredNorm();
    const double desired = std::norm(gain(j, j));
    out[static_cast<std::size_t>(j)] = desired / (total - desired + extra(j) + noise);
  }
  return out;
}

}  // namespace

std::vector<double> achieved_sinr(const ChannelMatrix& h, const CMatrix& beams,
                                  const QosConfig& qos) {
  check_beams(h, beams);
  return sinr_from_gain(h.entries() * beams, RVector::Zero(h.num_users()), qos.noise_power());
}

std::vector<double> achieved_sinr(const ChannelMatrix& h, const CMatrix& beams,
                                  const QosConfig& qos, const CMatrix& added) {
  check_beams(h, beams);
  if (added.rows() != h.num_tx())
    throw Error(ErrorCode::DimensionMismatch, "added signal must have Nt rows");
  const RVector leak = (h.entries() * added).rowwise().squaredNorm();
  return sinr_from_gain(h.entries() * beams, leak, qos.noise_power());
}

std::vector<double> realized_sinr(const ChannelMatrix& h, const CMatrix& beams,
                                  const CMatrix& symbols, const CMatrix& x, const QosConfig& qos) {
  check_beams(h, beams);
  if (symbols.rows() != h.num_users() || x.rows() != h.num_tx() || symbols.cols() != x.cols())
    throw Error(ErrorCode::DimensionMismatch, "symbols and waveform disagree with the channel");
  const CMatrix gain = h.entries() * beams;
  const CMatrix y = h.entries() * x;
  std::vector<double> out(static_cast<std::size_t>(h.num_users()));
  for (int j = 0; j < h.num_users(); ++j) {
    const CVector desired = gain(j, j) * symbols.row(j).transpose();
    const double signal = desired.squaredNorm();
    const double rest = (y.row(j).transpose() - desired).squaredNorm();
    out[static_cast<std::size_t>(j)] = signal / (rest + qos.noise_power());
  }
  return out;
}

double sum_rate(const std::vector<double>& sinr) {
  double r = 0.0;
  for (double s : sinr) r += std::log2(1.0 + s);
  return r;
}

double sum_rate(const ChannelMatrix& h, const CMatrix& beams, const QosConfig& qos) {
  return sum_rate(achieved_sinr(h, beams, qos));
}

double effective_interference_energy(const CMatrix& x, const CorrelationMatrix& r, double mu) {
  if (x.rows() != r.sqrt.rows())
    throw Error(ErrorCode::DimensionMismatch, "waveform rows must match correlation size");
  if (!(mu >= 0.0 && mu <= 1.0)) throw Error(ErrorCode::InvalidArgument, "mu must lie in [0, 1]");
  return mu * mu * (r.sqrt * x).squaredNorm();
}

}  // namespace sdisac
