#ifndef MGALE_UNIFORM_INTEGRABILITY_HPP
#define MGALE_UNIFORM_INTEGRABILITY_HPP

// Computable moduli for the two uniform-integrability definitions:
//   analyst:     delta -> sup_i sup_{mu(A) <= delta} ||f_i 1_A||_p
//   probabilist: C     -> sup_i ||f_i 1_{|f_i| >= C}||_p
// plus the inequality that bridges them and an empirical Vitali check.

#include "mgale/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mgale {

template <Scalar S>
struct FunctionFamily {
  std::vector<RandomVariable<S>> members;
  Exponent p = Exponent::finite(1);
};

namespace detail {

template <Scalar S>
void require_family(const FiniteMeasureSpace<S>& space, const FunctionFamily<S>& fam) {
  for (const auto& m : fam.members) require_same_atoms(space.atom_count(), m.atom_count(), "function family");
}

/// Knapsack items for one member: value |f|^p mu, weight mu, charged atoms only.
template <Scalar S>
struct Item {
  S value;
  S weight;
  S density;  // |f|^p
};

template <Scalar S>
std::vector<Item<S>> knapsack_items(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f,
                                    const Exponent& p) {
  std::vector<Item<S>> items;
  for (Atom a = 0; a < f.atom_count(); ++a) {
    if (!space.charges(a)) continue;
    const S density = power_abs(f[a], p);
    if (density == S(0)) continue;
    items.push_back({S(density * space.weight(a)), space.weight(a), density});
  }
  return items;
}

template <Scalar S>
S knapsack_bruteforce(const std::vector<Item<S>>& items, const S& capacity) {
  if (items.size() > 24) throw std::invalid_argument("subset enumeration is limited to 24 charged atoms");
  const std::uint32_t n = static_cast<std::uint32_t>(items.size());
  // Gray-code walk: one item toggles per step.
  S value(0), weight(0), best(0);
  std::vector<bool> in(n, false);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
    const std::uint32_t bit = static_cast<std::uint32_t>(std::countr_zero(i));
    if (in[bit]) {
      value -= items[bit].value;
      weight -= items[bit].weight;
    } else {
      value += items[bit].value;
      weight += items[bit].weight;
    }
    in[bit] = !in[bit];
    if (weight <= capacity && value > best) best = value;
  }
  return best;
}

template <Scalar S>
class KnapsackBranchAndBound {
 public:
  KnapsackBranchAndBound(std::vector<Item<S>> items, S capacity) : items_(std::move(items)), capacity_(std::move(capacity)) {
    std::stable_sort(items_.begin(), items_.end(), [](const Item<S>& x, const Item<S>& y) { return x.density > y.density; });
  }

  S solve() {
    best_ = S(0);
    search(0, S(0), S(0));
    return best_;
  }

 private:
  /// Fractional relaxation over items[i..] with the given remaining capacity.
  S bound(std::size_t i, S remaining) const {
    S total(0);
    for (; i < items_.size(); ++i) {
      if (items_[i].weight <= remaining) {
        remaining -= items_[i].weight;
        total += items_[i].value;
      } else {
        total += items_[i].density * remaining;
        break;
      }
    }
    return total;
  }

  void search(std::size_t i, const S& value, const S& weight) {
    if (value > best_) best_ = value;
    if (i == items_.size()) return;
    if (!(value + bound(i, S(capacity_ - weight)) > best_)) return;
    const S with_weight = weight + items_[i].weight;
    if (with_weight <= capacity_) search(i + 1, S(value + items_[i].value), with_weight);
    search(i + 1, value, weight);
  }

  std::vector<Item<S>> items_;
  S capacity_;
  S best_{0};
};

/// sup over atoms with 0 < mu <= delta of |f|; the p = inf analyst modulus.
template <Scalar S>
S sup_norm_small_sets(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f, const S& delta) {
  S best(0);
  for (Atom a = 0; a < f.atom_count(); ++a)
    if (space.charges(a) && space.weight(a) <= delta) best = std::max(best, abs_value(f[a]));
  return best;
}

enum class SubsetMethod { BruteForce, BranchAndBound };

template <Scalar S>
LpNorm<S> analyst_modulus_with(const FiniteMeasureSpace<S>& space, const FunctionFamily<S>& fam, const S& delta,
                               SubsetMethod method) {
  require_family(space, fam);
  if (delta < S(0)) throw std::invalid_argument("analyst modulus needs delta >= 0");
  LpNorm<S> best{S(0), fam.p};
  for (const auto& f : fam.members) {
    LpNorm<S> candidate{S(0), fam.p};
    if (fam.p.is_infinite()) {
      candidate.base = sup_norm_small_sets(space, f, delta);
    } else {
      auto items = knapsack_items(space, f, fam.p);
      candidate.base = method == SubsetMethod::BruteForce ? knapsack_bruteforce(items, delta)
                                                          : KnapsackBranchAndBound<S>(std::move(items), delta).solve();
    }
    if (!norm_le(candidate, best)) best = candidate;
  }
  return best;
}

}  // namespace detail

/// Exhaustive subset enumeration; feasible up to ~24 charged atoms.
template <Scalar S>
LpNorm<S> analyst_modulus_bruteforce(const FiniteMeasureSpace<S>& space, const FunctionFamily<S>& fam,
                                     const S& delta) {
  return detail::analyst_modulus_with(space, fam, delta, detail::SubsetMethod::BruteForce);
}

/// Depth-first branch and bound with the density-sorted fractional relaxation as bound.
template <Scalar S>
LpNorm<S> analyst_modulus_branch_and_bound(const FiniteMeasureSpace<S>& space, const FunctionFamily<S>& fam,
                                           const S& delta) {
  return detail::analyst_modulus_with(space, fam, delta, detail::SubsetMethod::BranchAndBound);
}

struct AnalystModulusOptions {
  std::size_t hard_cap = 4096;  // largest atom count searched exactly
  bool allow_approximate = false;  // above the cap, return the fractional upper bound
};

/// sup over members and sets A with mu(A) <= delta of ||f 1_A||_p. Exact:
/// enumeration up to 20 atoms, branch and bound up to `hard_cap`.
template <Scalar S>
LpNorm<S> analyst_modulus(const FiniteMeasureSpace<S>& space, const FunctionFamily<S>& fam, const S& delta,
                          const AnalystModulusOptions& options = {}) {
  if (space.atom_count() <= 20) return analyst_modulus_bruteforce(space, fam, delta);
  if (space.atom_count() <= options.hard_cap) return analyst_modulus_branch_and_bound(space, fam, delta);
  if (!options.allow_approximate) {
    throw std::invalid_argument("analyst modulus: atom count exceeds the exact-search cap");
  }
  // Fractional relaxation: an upper bound on the modulus.
  LpNorm<S> best{S(0), fam.p};
  for (const auto& f : fam.members) {
    LpNorm<S> candidate{S(0), fam.p};
    if (fam.p.is_infinite()) {
      candidate.base = detail::sup_norm_small_sets(space, f, delta);
    } else {
      auto items = detail::knapsack_items(space, f, fam.p);
      std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.density > y.density; });
      S remaining = delta;
      for (const auto& it : items) {
        if (it.weight <= remaining) {
          candidate.base += it.value;
          remaining -= it.weight;
        } else {
          candidate.base += it.density * remaining;
          break;
        }
      }
    }
    if (!norm_le(candidate, best)) best = candidate;
  }
  return best;
}

template <Scalar S>
AtomSet superlevel_set(const RandomVariable<S>& f, const S& threshold) {
  AtomSet s(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a)
    if (abs_value(f[a]) >= threshold) s.insert(a);
  return s;
}

/// sup over members of ||f 1_{|f| >= C}||_p.
template <Scalar S>
LpNorm<S> probabilist_modulus(const FiniteMeasureSpace<S>& space, const FunctionFamily<S>& fam, const S& C) {
  detail::require_family(space, fam);
  if (C < S(0)) throw std::invalid_argument("probabilist modulus needs C >= 0");
  LpNorm<S> best{S(0), fam.p};
  for (const auto& f : fam.members) {
    const LpNorm<S> candidate = snorm(space, restrict_to(f, superlevel_set(f, C)), fam.p);
    if (!norm_le(candidate, best)) best = candidate;
  }
  return best;
}

/// sup over members of ||f||_p.
template <Scalar S>
LpNorm<S> family_norm_bound(const FiniteMeasureSpace<S>& space, const FunctionFamily<S>& fam) {
  detail::require_family(space, fam);
  LpNorm<S> best{S(0), fam.p};
  for (const auto& f : fam.members) {
    const LpNorm<S> candidate = snorm(space, f, fam.p);
    if (!norm_le(candidate, best)) best = candidate;
  }
  return best;
}

template <Scalar S>
struct BridgingReport {
  bool holds = true;
  std::size_t worst_member = 0;
  S worst_lhs{0};  // ||f 1_A||_1
  S worst_rhs{0};  // C mu(A) + ||f 1_{|f| >= C}||_1
};

/// ||f 1_A||_1 <= C mu(A) + ||f 1_{|f| >= C}||_1 for every member (p = 1 only).
template <Scalar S>
BridgingReport<S> check_bridging_inequality(const FiniteMeasureSpace<S>& space, const FunctionFamily<S>& fam,
                                            const S& C, const AtomSet& A) {
  detail::require_family(space, fam);
  if (fam.p.is_infinite() || fam.p.value() != 1.0) throw std::invalid_argument("bridging inequality is for p = 1");
  if (C < S(0)) throw std::invalid_argument("bridging inequality needs C >= 0");
  BridgingReport<S> rep;
  bool first = true;
  S worst_slack(0);
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const auto& f = fam.members[i];
    const S lhs = l1_norm(space, restrict_to(f, A));
    const S rhs = C * measure(space, A) + l1_norm(space, restrict_to(f, superlevel_set(f, C)));
    const S slack = rhs - lhs;
    if (first || slack < worst_slack) {
      first = false;
      worst_slack = slack;
      rep.worst_member = i;
      rep.worst_lhs = lhs;
      rep.worst_rhs = rhs;
    }
    if (!approx_le(lhs, rhs)) rep.holds = false;
  }
  return rep;
}

/// x <= y * mass^(1/p - 1/q), x an L^p norm and y an L^q norm with p <= q.
template <Scalar S>
bool holder_le(const LpNorm<S>& x, const LpNorm<S>& y, const S& mass) {
  if constexpr (is_exact_v<S>) {
    if (x.p.is_infinite()) return x.base <= y.base;  // then q = inf too
    const unsigned p = x.p.integral_value();
    if (y.p.is_infinite()) return x.base <= pow_uint(y.base, p) * mass;
    const unsigned q = y.p.integral_value();
    return pow_uint(x.base, q) <= pow_uint(y.base, p) * pow_uint(mass, q - p);
  } else {
    const double inv_p = x.p.is_infinite() ? 0.0 : 1.0 / x.p.value();
    const double inv_q = y.p.is_infinite() ? 0.0 : 1.0 / y.p.value();
    const double bound = y.to_double() * std::pow(mgale::to_double(mass), inv_p - inv_q);
    return x.to_double() <= bound + 1e-12 * std::max(1.0, std::abs(bound));
  }
}

template <Scalar S>
struct PMonotonicityRow {
  S C;
  LpNorm<S> modulus_p;
  LpNorm<S> modulus_q;
  bool holds = false;
};

template <Scalar S>
struct PMonotonicityReport {
  bool holds = true;
  std::vector<PMonotonicityRow<S>> rows;
};

/// Compares the probabilist moduli at exponents p <= q on a grid of C values:
/// modulus_p(C) <= modulus_q(C) * mu(Omega)^(1/p - 1/q).
template <Scalar S>
PMonotonicityReport<S> check_p_monotonicity(const FiniteMeasureSpace<S>& space,
                                            const std::vector<RandomVariable<S>>& members, const Exponent& p,
                                            const Exponent& q, const std::vector<S>& c_grid) {
  if (!(p <= q)) throw std::invalid_argument("p-monotonicity needs p <= q");
  const FunctionFamily<S> fam_p{members, p};
  const FunctionFamily<S> fam_q{members, q};
  const S mass = space.total_mass();
  PMonotonicityReport<S> rep;
  for (const S& C : c_grid) {
    PMonotonicityRow<S> row{C, probabilist_modulus(space, fam_p, C), probabilist_modulus(space, fam_q, C), false};
    row.holds = holder_le(row.modulus_p, row.modulus_q, mass);
    if (p == q) row.holds = row.holds && norm_le(row.modulus_q, row.modulus_p);
    rep.holds = rep.holds && row.holds;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------

template <Scalar S>
struct VitaliOptions {
  std::vector<S> epsilons;          // in-measure thresholds
  std::vector<S> c_grid;            // truncation levels for the UI curve
  std::vector<std::size_t> checkpoints;  // n values; empty means 1, 2, 4, ..., horizon
  double vanish_ratio = 0.1;        // "decayed" means final <= ratio * max over the curve
};

template <Scalar S>
struct VitaliReport {
  std::vector<std::size_t> checkpoints;
  std::vector<std::vector<S>> in_measure;     // [epsilon][checkpoint] = mu{|f_n - g| > eps}
  std::vector<LpNorm<S>> ui_modulus_curve;    // [C] over the family f_1..f_horizon
  std::vector<LpNorm<S>> lp_distance;         // [checkpoint] = ||f_n - g||_p
  bool in_measure_decay = false;
  bool ui_modulus_small = false;
  bool lp_decay = false;
  bool consistent = false;
};

namespace detail {

inline bool decayed(const std::vector<double>& curve, double ratio) {
  if (curve.empty()) return true;
  const double peak = *std::max_element(curve.begin(), curve.end());
  return curve.back() <= ratio * peak;
}

inline std::vector<std::size_t> geometric_checkpoints(std::size_t horizon) {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n < horizon; n *= 2) out.push_back(n);
  out.push_back(horizon);
  return out;
}

}  // namespace detail

/// Finite-horizon diagnostics for f_n -> g: convergence in measure, the
/// truncation UI modulus of {f_1..f_horizon}, and L^p distance. `consistent`
/// reports whether L^p decay was seen exactly when the other two were.
template <Scalar S>
VitaliReport<S> vitali_empirical(const FiniteMeasureSpace<S>& space,
                                 const std::function<RandomVariable<S>(std::size_t)>& sequence,
                                 const RandomVariable<S>& g, const Exponent& p, std::size_t horizon,
                                 const VitaliOptions<S>& options) {
  if (p.is_infinite()) throw std::invalid_argument("vitali_empirical needs a finite exponent");
  if (horizon == 0) throw std::invalid_argument("vitali_empirical needs horizon >= 1");
  VitaliReport<S> rep;
  rep.checkpoints = options.checkpoints.empty() ? detail::geometric_checkpoints(horizon) : options.checkpoints;

  FunctionFamily<S> family{{}, p};
  for (std::size_t n = 1; n <= horizon; ++n) family.members.push_back(sequence(n));

  rep.in_measure.assign(options.epsilons.size(), {});
  for (std::size_t n : rep.checkpoints) {
    if (n == 0 || n > horizon) throw std::out_of_range("vitali checkpoint outside 1..horizon");
    const RandomVariable<S> diff = family.members[n - 1] - g;
    for (std::size_t e = 0; e < options.epsilons.size(); ++e) {
      AtomSet far(diff.atom_count());
      for (Atom a = 0; a < diff.atom_count(); ++a)
        if (abs_value(diff[a]) > options.epsilons[e]) far.insert(a);
      rep.in_measure[e].push_back(measure(space, far));
    }
    rep.lp_distance.push_back(snorm(space, diff, p));
  }
  for (const S& C : options.c_grid) rep.ui_modulus_curve.push_back(probabilist_modulus(space, family, C));

  auto to_doubles = [](const auto& xs, auto conv) {
    std::vector<double> out;
    for (const auto& x : xs) out.push_back(conv(x));
    return out;
  };
  rep.in_measure_decay = true;
  for (const auto& curve : rep.in_measure) {
    rep.in_measure_decay = rep.in_measure_decay &&
                           detail::decayed(to_doubles(curve, [](const S& x) { return mgale::to_double(x); }),
                                           options.vanish_ratio);
  }
  rep.ui_modulus_small = detail::decayed(
      to_doubles(rep.ui_modulus_curve, [](const LpNorm<S>& x) { return x.to_double(); }), options.vanish_ratio);
  rep.lp_decay = detail::decayed(to_doubles(rep.lp_distance, [](const LpNorm<S>& x) { return x.to_double(); }),
                                 options.vanish_ratio);
  rep.consistent = rep.lp_decay == (rep.in_measure_decay && rep.ui_modulus_small);
  return rep;
}

}  // namespace mgale

#endif  // MGALE_UNIFORM_INTEGRABILITY_HPP
