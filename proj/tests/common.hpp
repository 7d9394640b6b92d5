#ifndef MGALE_TESTS_COMMON_HPP
#define MGALE_TESTS_COMMON_HPP

#include "mgale/mgale.hpp"
#include "mgale/generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace testing_util {

using mgale::Rational;
using Q = mgale::Rational;

/// Rationals from strings such as "1/2", "-0.2" or "3".
inline std::vector<Q> qs(std::initializer_list<const char*> xs) {
  std::vector<Q> out;
  for (const char* x : xs) out.push_back(mgale::parse_scalar<Q>(x));
  return out;
}

inline std::vector<Q> qi(std::initializer_list<long> xs) {
  std::vector<Q> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline mgale::RandomVariable<Q> rv(std::initializer_list<long> xs) { return mgale::RandomVariable<Q>(qi(xs)); }

inline mgale::FiniteMeasureSpace<Q> uniform(std::size_t n) { return mgale::FiniteMeasureSpace<Q>::uniform(n); }

inline mgale::Partition blocks(std::size_t n, const std::vector<std::vector<mgale::Atom>>& b) {
  return mgale::Partition::from_blocks(n, b);
}

inline std::vector<std::size_t> labels(const mgale::Partition& p) { return {p.labels().begin(), p.labels().end()}; }

/// Fair-walk path space for horizon H, built from the oracle enumeration.
inline mgale::Process<Q> oracle_walk_process(std::size_t H) {
  return mgale::Process<Q>::from_paths(oracle::walk_paths(H));
}

}  // namespace testing_util

#endif  // MGALE_TESTS_COMMON_HPP
