#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "sdisac/rng.hpp"
#include "sdisac/types.hpp"

namespace sdisac::test {

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double rel_err(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

inline CMatrix gaussian(Index rows, Index cols, std::uint64_t seed) {
  Engine e = make_engine(seed);
  return complex_gaussian(rows, cols, e);
}

inline CMatrix random_unitary(Index n, std::uint64_t seed) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian(n, n, seed));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

}  // namespace sdisac::test
