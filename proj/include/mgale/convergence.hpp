#ifndef MGALE_CONVERGENCE_HPP
#define MGALE_CONVERGENCE_HPP

// Maximal inequality, limit estimation, a.e. convergence diagnostics and the
// finite-horizon forms of the L^1 convergence theorem (including Levy upward).

#include "mgale/condexp.hpp"
#include "mgale/crossings.hpp"
#include "mgale/process.hpp"
#include "mgale/uniform_integrability.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mgale {

template <Scalar S>
struct MaximalInequalityReport {
  S lhs{0};  // lambda * mu{max_{k <= n} f_k >= lambda}
  S rhs{0};  // integral of f_n over that set
  bool holds = false;
};

template <Scalar S>
MaximalInequalityReport<S> evaluate_maximal_inequality(const Process<S>& f, const FiniteMeasureSpace<S>& space,
                                                       std::size_t n, const S& lambda) {
  if (n > f.horizon()) throw std::out_of_range("maximal inequality: n exceeds the horizon");
  if (!(lambda > S(0))) throw std::invalid_argument("maximal inequality needs lambda > 0");
  AtomSet level(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a) {
    S running = f.value(0, a);
    for (std::size_t k = 1; k <= n; ++k) running = std::max(running, f.value(k, a));
    if (running >= lambda) level.insert(a);
  }
  MaximalInequalityReport<S> rep;
  rep.lhs = lambda * measure(space, level);
  rep.rhs = set_integral(space, f.at(n), level);
  rep.holds = approx_le(rep.lhs, rep.rhs);
  return rep;
}

/// lambda mu{max_{k <= n} f_k >= lambda} <= integral of f_n over {max >= lambda}, for submartingales.
template <Scalar S>
MaximalInequalityReport<S> check_maximal_inequality(const Process<S>& f, const Filtration& filtration,
                                                    const FiniteMeasureSpace<S>& space, std::size_t n,
                                                    const S& lambda) {
  if (!classify(f, filtration, space).is_submartingale()) {
    throw std::invalid_argument("maximal inequality needs a submartingale");
  }
  return evaluate_maximal_inequality(f, space, n, lambda);
}

// ---------------------------------------------------------------------------

/// max - min over path[len - window - 1 .. len - 1] (the last `window` steps).
template <Scalar S>
S window_oscillation(std::span<const S> path, std::size_t window) {
  if (path.empty()) throw std::invalid_argument("window_oscillation: empty path");
  if (window >= path.size()) throw std::invalid_argument("window_oscillation: window exceeds the horizon");
  const auto first = path.end() - static_cast<std::ptrdiff_t>(window) - 1;
  const auto [lo, hi] = std::minmax_element(first, path.end());
  return *hi - *lo;
}

template <Scalar S>
struct LimitEstimate {
  RandomVariable<S> values;
  AtomSet converged_mask;
  Partition sup_partition;
};

/// Per atom: the final value if the path oscillates by at most `tol` over the
/// final `window` steps, else 0.
template <Scalar S>
LimitEstimate<S> limit_process_estimate(const Process<S>& f, const Filtration& filtration, const S& tol,
                                        std::size_t window) {
  require_horizon(f.horizon(), filtration, "limit_process_estimate");
  if (window > f.horizon()) throw std::invalid_argument("limit_process_estimate: window exceeds the horizon");
  LimitEstimate<S> est{RandomVariable<S>(f.atom_count(), S(0)), AtomSet(f.atom_count()), filtration_sup(filtration)};
  for (Atom a = 0; a < f.atom_count(); ++a) {
    const std::vector<S> path = f.path(a);
    if (window_oscillation<S>(path, window) <= tol) {
      est.values[a] = path.back();
      est.converged_mask.insert(a);
    }
  }
  return est;
}

// ---------------------------------------------------------------------------

template <Scalar S>
struct BandViolation {
  Band<S> band;
  std::size_t k = 0;
  S fraction{0};  // mu{U_horizon(a, b) >= k} / mu(Omega)
};

template <Scalar S>
struct UpcrossingChainBound {
  Band<S> band;
  S mean_upcrossings{0};  // mu[U]
  S bound{0};             // (R + |a| mu(Omega)) / (b - a)
  bool holds = false;
};

template <Scalar S>
struct ConvergenceDiagnostic {
  S bounded_fraction{0};  // mu{sup_n |f_n| <= cutoff} / mu(Omega)
  std::vector<BandViolation<S>> band_violations;
  std::vector<std::size_t> checkpoints;
  std::vector<S> cauchy_gap;  // ||f_{c_{i+1}} - f_{c_i}||_1
  std::vector<UpcrossingChainBound<S>> chain_bounds;
};

template <Scalar S>
struct DiagnosticOptions {
  S cutoff{0};
  std::vector<Band<S>> bands;
  std::vector<std::size_t> ks = {1, 2, 4, 8, 16};
  std::optional<S> l1_bound;  // R with sup_n ||f_n||_1 <= R
};

template <Scalar S>
ConvergenceDiagnostic<S> ae_convergence_diagnostic(const Process<S>& f, const FiniteMeasureSpace<S>& space,
                                                   const DiagnosticOptions<S>& options) {
  require_same_atoms(f.atom_count(), space.atom_count(), "ae_convergence_diagnostic");
  const S mass = space.total_mass();
  if (!(mass > S(0))) throw std::invalid_argument("diagnostic needs a space of positive mass");
  ConvergenceDiagnostic<S> diag;

  AtomSet bounded(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a) {
    S sup(0);
    for (std::size_t n = 0; n <= f.horizon(); ++n) sup = std::max(sup, abs_value(f.value(n, a)));
    if (sup <= options.cutoff) bounded.insert(a);
  }
  diag.bounded_fraction = measure(space, bounded) / mass;

  for (const auto& band : options.bands) {
    const auto counts = upcrossings_before(band, f, f.horizon());
    for (std::size_t k : options.ks) {
      AtomSet hit(f.atom_count());
      for (Atom a = 0; a < f.atom_count(); ++a)
        if (counts[a] >= k) hit.insert(a);
      diag.band_violations.push_back({band, k, S(measure(space, hit) / mass)});
    }
    if (options.l1_bound && band.a < band.b) {
      UpcrossingChainBound<S> cb{band, integral(space, as_random_variable<S>(counts)), S(0), false};
      cb.bound = (*options.l1_bound + abs_value(band.a) * mass) / (band.b - band.a);
      cb.holds = approx_le(cb.mean_upcrossings, cb.bound);
      diag.chain_bounds.push_back(cb);
    }
  }

  for (std::size_t n = 1; n < f.horizon(); n *= 2) diag.checkpoints.push_back(n);
  diag.checkpoints.push_back(f.horizon());
  for (std::size_t i = 0; i + 1 < diag.checkpoints.size(); ++i) {
    diag.cauchy_gap.push_back(l1_norm(space, f.at(diag.checkpoints[i + 1]) - f.at(diag.checkpoints[i])));
  }
  return diag;
}

// ---------------------------------------------------------------------------

template <Scalar S>
struct L1ConvergenceReport {
  std::vector<std::size_t> checkpoints;
  std::vector<S> distance;  // ||f_n - limit||_1 at each checkpoint
  bool ui_small = false;    // probabilist modulus curve decayed
  bool trend_nonincreasing = false;
  bool below_tol = false;
  bool holds = false;  // ui_small implies (trend && below_tol)
};

/// L^1 distance of f_n to a given limit along geometric checkpoints, together
/// with the UI modulus curve of {f_n} on `c_grid`.
template <Scalar S>
L1ConvergenceReport<S> evaluate_l1_convergence(const Process<S>& f, const FiniteMeasureSpace<S>& space,
                                               const RandomVariable<S>& limit, const std::vector<S>& c_grid,
                                               const S& tol, double vanish_ratio = 0.1) {
  L1ConvergenceReport<S> rep;
  for (std::size_t n = 1; n < f.horizon(); n *= 2) rep.checkpoints.push_back(n);
  rep.checkpoints.push_back(f.horizon());
  for (std::size_t n : rep.checkpoints) rep.distance.push_back(l1_norm(space, f.at(n) - limit));

  FunctionFamily<S> fam{{}, Exponent::finite(1)};
  for (std::size_t n = 0; n <= f.horizon(); ++n) fam.members.push_back(f.at(n));
  std::vector<double> curve;
  for (const S& C : c_grid) curve.push_back(probabilist_modulus(space, fam, C).to_double());
  rep.ui_small = detail::decayed(curve, vanish_ratio);

  rep.trend_nonincreasing = true;
  for (std::size_t i = 0; i + 1 < rep.distance.size(); ++i)
    if (!approx_le(rep.distance[i + 1], rep.distance[i])) rep.trend_nonincreasing = false;
  rep.below_tol = rep.distance.back() <= tol;
  rep.holds = !rep.ui_small || (rep.trend_nonincreasing && rep.below_tol);
  return rep;
}

/// Submartingale form: the limit is `limit_process_estimate(f, filtration, osc_tol, window)`.
template <Scalar S>
L1ConvergenceReport<S> check_l1_convergence_a(const Process<S>& f, const Filtration& filtration,
                                              const FiniteMeasureSpace<S>& space, const std::vector<S>& c_grid,
                                              const S& tol, const S& osc_tol, std::size_t window) {
  if (!classify(f, filtration, space).is_submartingale()) {
    throw std::invalid_argument("L1 convergence (a) needs a submartingale");
  }
  const auto limit = limit_process_estimate(f, filtration, osc_tol, window);
  return evaluate_l1_convergence(f, space, limit.values, c_grid, tol);
}

struct ClosureReport {
  bool holds = true;
  std::size_t n = 0;  // first violating time
  Atom atom = 0;
};

/// f_n == mu[f_horizon | F_n] a.e. for every n.
template <Scalar S>
ClosureReport evaluate_l1_convergence_b(const Process<S>& f, const Filtration& filtration,
                                        const FiniteMeasureSpace<S>& space) {
  require_horizon(f.horizon(), filtration, "l1_convergence_b");
  ClosureReport rep;
  for (std::size_t n = 0; n <= f.horizon(); ++n) {
    const auto ce = condexp(CondexpInput<S>(space, filtration.ambient(), filtration.step(n), f.at(f.horizon())));
    for (Atom a = 0; a < f.atom_count(); ++a) {
      if (space.charges(a) && !approx_eq(ce[a], f.value(n, a))) {
        rep.holds = false;
        rep.n = n;
        rep.atom = a;
        return rep;
      }
    }
  }
  return rep;
}

template <Scalar S>
ClosureReport check_l1_convergence_b(const Process<S>& f, const Filtration& filtration,
                                     const FiniteMeasureSpace<S>& space) {
  if (classify(f, filtration, space).kind != MartingaleKind::Martingale) {
    throw std::invalid_argument("L1 convergence (b) needs a martingale");
  }
  return evaluate_l1_convergence_b(f, filtration, space);
}

template <Scalar S>
struct LevyUpwardReport {
  std::vector<S> distance;  // d_n = ||mu[g | F_n] - g||_1
  bool nonincreasing = false;
  bool exact_at_horizon = false;
  bool holds() const { return nonincreasing && exact_at_horizon; }
};

/// d_n = ||mu[g | F_n] - g||_1 is nonincreasing and vanishes at the horizon.
/// g must be measurable w.r.t. the join of the filtration.
template <Scalar S>
LevyUpwardReport<S> check_levy_upward(const RandomVariable<S>& g, const Filtration& filtration,
                                      const FiniteMeasureSpace<S>& space) {
  if (!is_measurable_wrt(g, filtration_sup(filtration))) {
    throw std::invalid_argument("Levy upward needs g measurable w.r.t. the limit sigma-algebra");
  }
  LevyUpwardReport<S> rep;
  for (std::size_t n = 0; n <= filtration.horizon(); ++n) {
    const auto ce = condexp(CondexpInput<S>(space, filtration.ambient(), filtration.step(n), g));
    rep.distance.push_back(l1_norm(space, ce - g));
  }
  rep.nonincreasing = true;
  for (std::size_t n = 0; n + 1 < rep.distance.size(); ++n)
    if (!approx_le(rep.distance[n + 1], rep.distance[n])) rep.nonincreasing = false;
  rep.exact_at_horizon = approx_eq(rep.distance.back(), S(0));
  return rep;
}

template <Scalar S>
struct FatouReport {
  LpNorm<S> limit_norm;
  LpNorm<S> liminf_surrogate;  // inf of ||f_n||_p over the tail window
  bool holds = false;
};

/// ||g||_p <= inf_{tail_start <= n <= horizon} ||f_n||_p + slack, for f_n -> g.
template <Scalar S>
FatouReport<S> fatou_norm_check(const Process<S>& f, const RandomVariable<S>& g, const FiniteMeasureSpace<S>& space,
                                const Exponent& p, const S& convergence_tol, std::size_t tail_start,
                                double slack = 0.0) {
  if (tail_start > f.horizon()) throw std::invalid_argument("fatou check: tail start exceeds the horizon");
  if (ae_sup_gap(space, f.at(f.horizon()), g) > convergence_tol) {
    throw std::invalid_argument("fatou check: f_horizon is not within tolerance of g");
  }
  FatouReport<S> rep{snorm(space, g, p), snorm(space, f.at(tail_start), p), false};
  for (std::size_t n = tail_start + 1; n <= f.horizon(); ++n) {
    const LpNorm<S> norm = snorm(space, f.at(n), p);
    if (norm_le(norm, rep.liminf_surrogate)) rep.liminf_surrogate = norm;
  }
  if (slack == 0.0) {
    rep.holds = norm_le(rep.limit_norm, rep.liminf_surrogate);
  } else {
    rep.holds = rep.limit_norm.to_double() <= rep.liminf_surrogate.to_double() + slack;
  }
  return rep;
}

}  // namespace mgale

#endif  // MGALE_CONVERGENCE_HPP
