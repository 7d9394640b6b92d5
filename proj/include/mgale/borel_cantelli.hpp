#ifndef MGALE_BOREL_CANTELLI_HPP
#define MGALE_BOREL_CANTELLI_HPP

// Levy's generalised Borel-Cantelli lemma: the predictable sum of conditional
// event probabilities, the martingale behind the proof, and a finite-horizon
// Monte Carlo check of "infinitely often <=> predictable sum diverges".

#include "mgale/montecarlo.hpp"
#include "mgale/process.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mgale {

/// sets[n] must be a union of blocks of filtration.step(n).
struct EventSequence {
  std::vector<AtomSet> sets;
  Filtration filtration;

  EventSequence(std::vector<AtomSet> s, Filtration f) : sets(std::move(s)), filtration(std::move(f)) {
    if (sets.size() != filtration.horizon() + 1) throw std::invalid_argument("event sequence: horizon mismatch");
  }

  std::size_t horizon() const { return filtration.horizon(); }
  bool adapted() const {
    for (std::size_t n = 0; n < sets.size(); ++n)
      if (!set_measurable_wrt(sets[n], filtration.step(n))) return false;
    return true;
  }
};

namespace detail {

inline void require_adapted_events(const EventSequence& s) {
  if (!s.adapted()) throw std::invalid_argument("event sequence is not adapted to its filtration");
}

template <Scalar S>
RandomVariable<S> next_event_probability(const EventSequence& s, const FiniteMeasureSpace<S>& space, std::size_t k) {
  return condexp(
      CondexpInput<S>(space, s.filtration.ambient(), s.filtration.step(k), indicator<S>(s.sets[k + 1])));
}

}  // namespace detail

/// p_n = sum_{k < n} mu[1_{S_{k+1}} | F_k].
template <Scalar S>
Process<S> predictable_sum(const EventSequence& s, const FiniteMeasureSpace<S>& space) {
  detail::require_adapted_events(s);
  Process<S> p(s.horizon(), space.atom_count(), S(0));
  for (std::size_t k = 0; k < s.horizon(); ++k) p.at(k + 1) = p.at(k) + detail::next_event_probability(s, space, k);
  return p;
}

/// sum_{k < n} 1_{S_{k+1}}.
template <Scalar S>
Process<S> event_count(const EventSequence& s, std::size_t atom_count) {
  Process<S> c(s.horizon(), atom_count, S(0));
  for (std::size_t k = 0; k < s.horizon(); ++k) c.at(k + 1) = c.at(k) + indicator<S>(s.sets[k + 1]);
  return c;
}

/// f_n = sum_{k < n} (1_{S_{k+1}} - mu[1_{S_{k+1}} | F_k]); the martingale part
/// of the Doob decomposition of the event count.
template <Scalar S>
Process<S> borel_cantelli_martingale(const EventSequence& s, const FiniteMeasureSpace<S>& space) {
  detail::require_adapted_events(s);
  Process<S> f(s.horizon(), space.atom_count(), S(0));
  for (std::size_t k = 0; k < s.horizon(); ++k) {
    const RandomVariable<S> increment = indicator<S>(s.sets[k + 1]);
    f.at(k + 1) = f.at(k) + (increment - detail::next_event_probability(s, space, k));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Monte Carlo surrogate

struct BorelCantelliBlock {
  std::size_t trial_block = 0;
  double match_fraction = 0;
  double p_horizon_mean = 0;
};

struct BorelCantelliReport {
  std::size_t trials = 0;
  double match_fraction = 0;
  double membership_fraction = 0;  // event at some n >= tail_start
  double divergence_fraction = 0;  // p_horizon >= divergence_cut
  double p_horizon_mean = 0;
  std::vector<BorelCantelliBlock> blocks;
};

struct BorelCantelliOptions {
  double divergence_cut = 50;
  std::size_t tail_start = 100;
  std::size_t block_size = 1000;
};

/// Per trajectory the two surrogates are
///   membership: S_n occurs for some tail_start <= n <= horizon
///   divergence: p_horizon >= divergence_cut
/// and match_fraction is the fraction of trajectories where they agree.
/// For independent events mu[1_{S_{k+1}} | F_k] = prob(k + 1), so p_horizon
/// is the schedule sum on every trajectory.
inline BorelCantelliReport check_borel_cantelli(const IndependentEvents& events, const RunConfig& config,
                                                const BorelCantelliOptions& options) {
  if (options.tail_start > config.horizon) throw std::invalid_argument("borel-cantelli: tail start beyond horizon");
  if (options.block_size == 0) throw std::invalid_argument("borel-cantelli: block size must be positive");
  double p_horizon = 0;
  for (std::size_t k = 1; k <= config.horizon; ++k) p_horizon += events.prob(k).convert_to<double>();

  struct Outcome {
    bool member = false;
    bool divergent = false;
    double p_horizon = 0;
  };
  const auto outcomes = map_trajectories(TrajectoryModel(events), config, [&](std::size_t, std::span<const double> path) {
    Outcome o;
    for (std::size_t n = options.tail_start; n < path.size(); ++n)
      if (path[n] != 0.0) o.member = true;
    o.p_horizon = p_horizon;
    o.divergent = p_horizon >= options.divergence_cut;
    return o;
  });

  BorelCantelliReport rep;
  rep.trials = outcomes.size();
  std::size_t matched = 0, members = 0, divergent = 0;
  double p_sum = 0;
  for (std::size_t start = 0; start < outcomes.size(); start += options.block_size) {
    const std::size_t end = std::min(outcomes.size(), start + options.block_size);
    std::size_t block_matched = 0;
    double block_p = 0;
    for (std::size_t t = start; t < end; ++t) {
      const Outcome& o = outcomes[t];
      if (o.member == o.divergent) ++block_matched;
      members += o.member;
      divergent += o.divergent;
      block_p += o.p_horizon;
    }
    matched += block_matched;
    p_sum += block_p;
    const double count = static_cast<double>(end - start);
    rep.blocks.push_back({start / options.block_size, static_cast<double>(block_matched) / count, block_p / count});
  }
  if (rep.trials != 0) {
    const double n = static_cast<double>(rep.trials);
    rep.match_fraction = static_cast<double>(matched) / n;
    rep.membership_fraction = static_cast<double>(members) / n;
    rep.divergence_fraction = static_cast<double>(divergent) / n;
    rep.p_horizon_mean = p_sum / n;
  }
  return rep;
}

}  // namespace mgale

#endif  // MGALE_BOREL_CANTELLI_HPP
