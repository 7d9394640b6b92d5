#ifndef MGALE_FIXTURES_HPP
#define MGALE_FIXTURES_HPP

// Small named instances shared by the tests, the CLI and the examples.

#include "mgale/crossings.hpp"
#include "mgale/measure.hpp"
#include "mgale/process.hpp"

#include <string_view>
#include <vector>

namespace mgale::fixtures {

/// A 14-point path crossing the band (0, 1) twice before N = 13:
/// sigma = 0, 5, 10, 13 and tau = 1, 7, 11, 13.
template <Scalar S>
std::vector<S> figure1_path() {
  static constexpr std::string_view text[] = {"0.5", "-0.2", "0.3", "0.8", "0.9", "1.5", "0.6",
                                              "-0.1", "0.4", "0.9", "1.3", "-0.2", "0.5", "0.7"};
  std::vector<S> out;
  for (auto t : text) out.push_back(parse_scalar<S>(t));
  return out;
}

template <Scalar S>
Band<S> figure1_band() {
  return {S(0), S(1)};
}

/// Indicator spikes f_n = n 1_{(0, m_n]} on (0, 1] cut into the atoms
/// (m_{k+1}, m_k] for k = 1..horizon plus (0, m_{horizon+1}].
template <Scalar S>
struct SpikeFamily {
  FiniteMeasureSpace<S> space;
  std::size_t horizon = 0;
  std::vector<S> breakpoints;  // m_1 = 1 > m_2 > ... > m_{horizon+1}

  /// Atom k - 1 is (m_{k+1}, m_k]; the last atom is (0, m_{horizon+1}].
  RandomVariable<S> member(std::size_t n) const {
    RandomVariable<S> f(space.atom_count(), S(0));
    for (Atom a = n - 1; a < space.atom_count(); ++a) f[a] = S(static_cast<long>(n));
    return f;
  }
  const S& support_mass(std::size_t n) const { return breakpoints.at(n - 1); }
};

namespace detail {

template <Scalar S>
SpikeFamily<S> spike_family(std::size_t horizon, bool squared) {
  SpikeFamily<S> fam;
  fam.horizon = horizon;
  for (std::size_t k = 1; k <= horizon + 1; ++k) {
    const auto kk = static_cast<std::int64_t>(squared ? k * k : k);
    fam.breakpoints.push_back(ratio<S>(1, kk));
  }
  std::vector<S> weights;
  for (std::size_t k = 0; k < horizon; ++k) weights.push_back(S(fam.breakpoints[k] - fam.breakpoints[k + 1]));
  weights.push_back(fam.breakpoints.back());
  fam.space = FiniteMeasureSpace<S>(std::move(weights));
  return fam;
}

}  // namespace detail

/// mu(support of f_n) = 1/n^2: ||f_n||_1 = 1/n and the family is uniformly integrable.
template <Scalar S>
SpikeFamily<S> shrinking_spikes(std::size_t horizon) {
  return detail::spike_family<S>(horizon, true);
}

/// mu(support of f_n) = 1/n: ||f_n||_1 = 1 for every n; not uniformly integrable.
template <Scalar S>
SpikeFamily<S> fixed_mass_spikes(std::size_t horizon) {
  return detail::spike_family<S>(horizon, false);
}

/// Four equally likely atoms refined as trivial -> {{0,1},{2,3}} -> singletons.
template <Scalar S>
struct LevyExample {
  FiniteMeasureSpace<S> space = FiniteMeasureSpace<S>::uniform(4);
  Filtration filtration{{Partition::trivial(4), Partition::from_blocks(4, {{0, 1}, {2, 3}}), Partition::singletons(4)}};
  RandomVariable<S> g{std::vector<S>{S(1), S(2), S(3), S(4)}};
};

}  // namespace mgale::fixtures

#endif  // MGALE_FIXTURES_HPP
