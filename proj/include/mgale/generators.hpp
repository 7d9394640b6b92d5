#ifndef MGALE_GENERATORS_HPP
#define MGALE_GENERATORS_HPP

// Seeded random instances: weights, nested partitions, filtrations and
// (sub)martingales on small exact spaces. Draws use plain modular reduction
// of mt19937_64 output so instances are identical on every platform.

#include "mgale/condexp.hpp"
#include "mgale/measure.hpp"
#include "mgale/process.hpp"
#include "mgale/stopping.hpp"

#include <numeric>
#include <random>
#include <vector>

namespace mgale::gen {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

inline std::int64_t between(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline bool coin(Rng& rng, std::uint64_t num, std::uint64_t den) { return below(rng, den) < num; }

/// p/q with |p| <= max_num and 1 <= q <= max_den.
template <Scalar S>
S rational(Rng& rng, std::int64_t max_num, std::int64_t max_den, bool nonnegative = false) {
  const std::int64_t num = between(rng, nonnegative ? 0 : -max_num, max_num);
  return ratio<S>(num, between(rng, 1, max_den));
}

/// Nonnegative rational weights, each zero with probability zero_chance/8,
/// with at least one positive weight.
template <Scalar S>
FiniteMeasureSpace<S> space(Rng& rng, std::size_t atoms, std::uint64_t zero_chance = 1, bool probability = false) {
  std::vector<S> w(atoms);
  bool any = false;
  for (auto& x : w) {
    x = coin(rng, zero_chance, 8) ? S(0) : ratio<S>(between(rng, 1, 9), between(rng, 1, 6));
    any = any || x > S(0);
  }
  if (!any) w[below(rng, atoms)] = S(1);
  if (probability) {
    S total(0);
    for (const auto& x : w) total += x;
    for (auto& x : w) x /= total;
  }
  return FiniteMeasureSpace<S>(std::move(w));
}

template <Scalar S>
RandomVariable<S> random_variable(Rng& rng, std::size_t atoms, std::int64_t max_num = 9, std::int64_t max_den = 4) {
  RandomVariable<S> f(atoms, S(0));
  for (Atom a = 0; a < atoms; ++a) f[a] = rational<S>(rng, max_num, max_den);
  return f;
}

/// Uniformly random labels with at most max_blocks blocks.
inline Partition partition(Rng& rng, std::size_t atoms, std::size_t max_blocks) {
  std::vector<std::size_t> labels(atoms);
  for (auto& l : labels) l = below(rng, std::max<std::size_t>(max_blocks, 1));
  return Partition::from_labels(labels);
}

/// Merges blocks of p at random: a partition coarser than p.
inline Partition coarsen(Rng& rng, const Partition& p) {
  std::vector<std::size_t> target(p.block_count());
  const std::size_t groups = 1 + below(rng, p.block_count());
  for (auto& t : target) t = below(rng, groups);
  std::vector<std::size_t> labels(p.atom_count());
  for (Atom a = 0; a < p.atom_count(); ++a) labels[a] = target[p.block_of(a)];
  return Partition::from_labels(labels);
}

/// Splits every block of p at random: a partition finer than p.
inline Partition refine(Rng& rng, const Partition& p, std::size_t max_split = 3) {
  std::vector<std::size_t> labels(p.atom_count());
  for (Atom a = 0; a < p.atom_count(); ++a) labels[a] = p.block_of(a) * max_split + below(rng, max_split);
  return Partition::from_labels(labels);
}

/// steps + 1 nondecreasing partitions starting from the trivial one.
/// With `to_singletons` the last step is the discrete partition.
inline Filtration filtration(Rng& rng, std::size_t atoms, std::size_t steps, bool to_singletons = false) {
  std::vector<Partition> out{Partition::trivial(atoms)};
  for (std::size_t n = 1; n <= steps; ++n) out.push_back(refine(rng, out.back()));
  if (to_singletons) out.back() = Partition::singletons(atoms);
  return Filtration(std::move(out));
}

/// M_n = mu[g | F_n] for a random g.
template <Scalar S>
Process<S> martingale(Rng& rng, const FiniteMeasureSpace<S>& sp, const Filtration& f) {
  const RandomVariable<S> g = random_variable<S>(rng, sp.atom_count());
  std::vector<RandomVariable<S>> slices;
  for (std::size_t n = 0; n <= f.horizon(); ++n) slices.push_back(condexp(sp, g, f.step(n)));
  return Process<S>(std::move(slices));
}

/// A random RandomVariable constant on the blocks of p with values in [lo, hi] (grid of step 1/den).
template <Scalar S>
RandomVariable<S> measurable(Rng& rng, const Partition& p, std::int64_t lo, std::int64_t hi, std::int64_t den) {
  std::vector<S> per_block(p.block_count());
  for (auto& v : per_block) v = ratio<S>(between(rng, lo * den, hi * den), den);
  RandomVariable<S> f(p.atom_count(), S(0));
  for (Atom a = 0; a < p.atom_count(); ++a) f[a] = per_block[p.block_of(a)];
  return f;
}

/// A_0 = 0, A_{n+1} - A_n >= 0 and F_n-measurable.
template <Scalar S>
Process<S> nondecreasing_predictable(Rng& rng, const Filtration& f, std::int64_t max_step = 3) {
  Process<S> a(f.horizon(), f.atom_count(), S(0));
  for (std::size_t n = 0; n < f.horizon(); ++n) a.at(n + 1) = a.at(n) + measurable<S>(rng, f.step(n), 0, max_step, 2);
  return a;
}

/// Random martingale plus a nondecreasing predictable drift.
template <Scalar S>
Process<S> submartingale(Rng& rng, const FiniteMeasureSpace<S>& sp, const Filtration& f) {
  return martingale(rng, sp, f) + nondecreasing_predictable<S>(rng, f);
}

/// c_0 F_0-measurable, c_{n+1} F_n-measurable, values in [0, bound].
template <Scalar S>
Process<S> predictable(Rng& rng, const Filtration& f, std::int64_t bound) {
  Process<S> c(f.horizon(), f.atom_count(), S(0));
  c.at(0) = measurable<S>(rng, f.step(0), 0, bound, 3);
  for (std::size_t n = 0; n < f.horizon(); ++n) c.at(n + 1) = measurable<S>(rng, f.step(n), 0, bound, 3);
  return c;
}

/// A stopping time with values in [0, horizon] built by stopping on a random
/// F_n-measurable event at each step.
inline StoppingTime stopping_time(Rng& rng, const Filtration& f) {
  std::vector<std::size_t> t(f.atom_count(), f.horizon());
  std::vector<bool> stopped(f.atom_count(), false);
  for (std::size_t n = 0; n < f.horizon(); ++n) {
    std::vector<bool> stop_block(f.step(n).block_count());
    for (std::size_t b = 0; b < stop_block.size(); ++b) stop_block[b] = coin(rng, 1, 3);
    for (Atom a = 0; a < f.atom_count(); ++a) {
      if (!stopped[a] && stop_block[f.step(n).block_of(a)]) {
        stopped[a] = true;
        t[a] = n;
      }
    }
  }
  return StoppingTime::from_naturals(t);
}

}  // namespace mgale::gen

#endif  // MGALE_GENERATORS_HPP
