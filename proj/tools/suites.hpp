#ifndef MGALE_TOOLS_SUITES_HPP
#define MGALE_TOOLS_SUITES_HPP

// The built-in verification suites run by `mgale selftest`.

#include "mgale/io.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mgale::suites {

struct SuiteConfig {
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

struct SuiteOutcome {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string headline;  // short deterministic summary
  CsvTable table{{"empty"}};
};

struct SuiteInfo {
  int id;
  const char* name;
  std::function<SuiteOutcome(const SuiteConfig&)> run;
};

const std::vector<SuiteInfo>& registry();

SuiteOutcome condexp_equivalence(const SuiteConfig&);
SuiteOutcome upcrossing_estimate(const SuiteConfig&);
SuiteOutcome band_translation(const SuiteConfig&);
SuiteOutcome figure1(const SuiteConfig&);
SuiteOutcome stochastic_integral_lemma(const SuiteConfig&);
SuiteOutcome doob_decomposition_suite(const SuiteConfig&);
SuiteOutcome maximal_and_optional_stopping(const SuiteConfig&);
SuiteOutcome levy_upward(const SuiteConfig&);
SuiteOutcome ui_moduli(const SuiteConfig&);
SuiteOutcome vitali(const SuiteConfig&);
SuiteOutcome ae_convergence(const SuiteConfig&);
SuiteOutcome borel_cantelli(const SuiteConfig&);

/// Fair-walk band: P(U >= k) at k = 1, 2, 4, 8, 16 for the given horizon.
struct BandDecay {
  std::vector<std::size_t> ks;
  std::vector<double> fractions;
  bool halves = false;  // fractions[i+1] <= fractions[i] / 2 for every i
};
BandDecay fair_walk_band_decay(std::uint64_t seed, std::size_t trials, std::size_t horizon, unsigned threads);

}  // namespace mgale::suites

#endif  // MGALE_TOOLS_SUITES_HPP
