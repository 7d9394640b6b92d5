#ifndef MGALE_CROSSINGS_HPP
#define MGALE_CROSSINGS_HPP

// Upper and lower crossing times, upcrossing counts and Doob's upcrossing
// estimate.
//
// The crossing times are built from window-bounded hitting times:
//   sigma_0     = 0
//   tau_n       = hitting of (-inf, a] in [sigma_n, N]
//   sigma_{n+1} = hitting of [b, inf) in [tau_n, N]
// and U_N = sup { n | sigma_n < N }. Neither a < b nor any other relation
// between a and b is assumed.

#include "mgale/extended.hpp"
#include "mgale/process.hpp"
#include "mgale/stopping.hpp"

#include <stdexcept>
#include <vector>

namespace mgale {

template <Scalar S>
struct Band {
  S a;
  S b;
};

/// hitting of (-inf, a] in [c, N].
template <Scalar S>
std::size_t lower_crossing_aux_at(const S& a, const Process<S>& f, std::size_t c, std::size_t N, Atom atom) {
  return hitting_at(f, ValuePredicate<S>::at_most(a), c, N, atom);
}

/// sigma_0, ..., sigma_count at one atom, built by the mutual recursion.
template <Scalar S>
std::vector<std::size_t> upper_crossing_sequence(const Band<S>& band, const Process<S>& f, std::size_t N,
                                                 std::size_t count, Atom atom) {
  const auto above = ValuePredicate<S>::at_least(band.b);
  std::vector<std::size_t> sigma{0};
  sigma.reserve(count + 1);
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t tau = lower_crossing_aux_at(band.a, f, sigma.back(), N, atom);
    sigma.push_back(hitting_at(f, above, tau, N, atom));
  }
  return sigma;
}

inline void require_crossing_time(std::size_t N, std::size_t horizon) {
  if (N > horizon) throw std::out_of_range("crossing end time exceeds the process horizon");
}

/// sigma_n for every atom.
template <Scalar S>
std::vector<std::size_t> upper_crossing(const Band<S>& band, const Process<S>& f, std::size_t N, std::size_t n) {
  require_crossing_time(N, f.horizon());
  std::vector<std::size_t> out(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a) out[a] = upper_crossing_sequence(band, f, N, n, a).back();
  return out;
}

/// tau_n for every atom: hitting of (-inf, a] in [sigma_n, N].
template <Scalar S>
std::vector<std::size_t> lower_crossing(const Band<S>& band, const Process<S>& f, std::size_t N, std::size_t n) {
  require_crossing_time(N, f.horizon());
  const auto sigma = upper_crossing(band, f, N, n);
  std::vector<std::size_t> out(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a) out[a] = lower_crossing_aux_at(band.a, f, sigma[a], N, a);
  return out;
}

/// sigma[k][atom], tau[k][atom] for k = 0..rows-1. Rows continue until every
/// atom has sigma_k = tau_k = N or its sequence has stalled.
struct CrossingTable {
  std::vector<std::vector<std::size_t>> sigma;
  std::vector<std::vector<std::size_t>> tau;
  std::size_t N = 0;
};

template <Scalar S>
CrossingTable crossing_table(const Band<S>& band, const Process<S>& f, std::size_t N) {
  require_crossing_time(N, f.horizon());
  CrossingTable table;
  table.N = N;
  std::vector<std::size_t> sigma(f.atom_count(), 0);
  for (std::size_t k = 0; k <= N + 1; ++k) {
    std::vector<std::size_t> tau(f.atom_count());
    bool settled = true;
    for (Atom a = 0; a < f.atom_count(); ++a) {
      tau[a] = lower_crossing_aux_at(band.a, f, sigma[a], N, a);
      if (sigma[a] != N || tau[a] != N) settled = false;
    }
    table.sigma.push_back(sigma);
    table.tau.push_back(tau);
    if (settled) break;
    for (Atom a = 0; a < f.atom_count(); ++a) sigma[a] = hitting_at(f, ValuePredicate<S>::at_least(band.b), tau[a], N, a);
  }
  return table;
}

/// U_N at one atom. If sigma_n < N for every n (possible only when a >= b and a
/// value lies in [b, a]), the supremum of an unbounded set of naturals is
/// taken to be 0.
template <Scalar S>
std::size_t upcrossings_before_at(const Band<S>& band, const Process<S>& f, std::size_t N, Atom atom) {
  if (N == 0) return 0;
  const auto above = ValuePredicate<S>::at_least(band.b);
  std::size_t sigma = 0;
  std::size_t n = 0;
  while (true) {
    const std::size_t tau = lower_crossing_aux_at(band.a, f, sigma, N, atom);
    const std::size_t next = hitting_at(f, above, tau, N, atom);
    if (next >= N) return n;
    if (next == sigma) return 0;  // stalled below N forever
    sigma = next;
    ++n;
  }
}

template <Scalar S>
std::vector<std::size_t> upcrossings_before(const Band<S>& band, const Process<S>& f, std::size_t N) {
  require_crossing_time(N, f.horizon());
  std::vector<std::size_t> out(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a) out[a] = upcrossings_before_at(band, f, N, a);
  return out;
}

/// sup over N <= horizon of U_N, in extended nonnegative form.
template <Scalar S>
std::vector<ExtendedNonneg<S>> upcrossings(const Band<S>& band, const Process<S>& f) {
  std::vector<ExtendedNonneg<S>> out(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a) {
    std::size_t best = 0;
    for (std::size_t N = 0; N <= f.horizon(); ++N) best = std::max(best, upcrossings_before_at(band, f, N, a));
    out[a] = ExtendedNonneg<S>(S(static_cast<long>(best)));
  }
  return out;
}

template <Scalar S>
RandomVariable<S> as_random_variable(const std::vector<std::size_t>& counts) {
  RandomVariable<S> r(counts.size(), S(0));
  for (Atom a = 0; a < counts.size(); ++a) r[a] = S(static_cast<long>(counts[a]));
  return r;
}

template <Scalar S>
struct UpcrossingEstimateReport {
  S lhs{0};  // (b - a) mu[U_N]
  S rhs{0};  // mu[(f_N - a)^+]
  bool holds = false;
};

/// Both sides of (b - a) mu[U_N(a, b)] <= mu[(f_N - a)^+]; no precondition on f.
template <Scalar S>
UpcrossingEstimateReport<S> evaluate_upcrossing_estimate(const Band<S>& band, const Process<S>& f,
                                                         const FiniteMeasureSpace<S>& space, std::size_t N) {
  const RandomVariable<S> u = as_random_variable<S>(upcrossings_before(band, f, N));
  UpcrossingEstimateReport<S> rep;
  rep.lhs = S(band.b - band.a) * integral(space, u);
  rep.rhs = integral(space, map_values(f.at(N), [&](const S& x) { return positive_part(S(x - band.a)); }));
  rep.holds = approx_le(rep.lhs, rep.rhs);
  return rep;
}

template <Scalar S>
UpcrossingEstimateReport<S> check_upcrossing_estimate(const Band<S>& band, const Process<S>& f,
                                                      const Filtration& filtration,
                                                      const FiniteMeasureSpace<S>& space, std::size_t N) {
  if (!classify(f, filtration, space).is_submartingale()) {
    throw std::invalid_argument("upcrossing estimate needs a submartingale");
  }
  return evaluate_upcrossing_estimate(band, f, space, N);
}

template <Scalar S>
struct UpcrossingSupReport {
  ExtendedNonneg<S> lhs;  // (b - a)^+ * lower integral of U
  ExtendedNonneg<S> rhs;  // sup_N lower integral of (f_N - a)^+
  bool holds = false;
};

template <Scalar S>
UpcrossingSupReport<S> evaluate_upcrossing_estimate_sup(const Band<S>& band, const Process<S>& f,
                                                        const FiniteMeasureSpace<S>& space) {
  const auto u = upcrossings(band, f);
  ExtendedNonneg<S> lower_integral;
  for (Atom a = 0; a < f.atom_count(); ++a) lower_integral += u[a] * ExtendedNonneg<S>(space.weight(a));
  UpcrossingSupReport<S> rep;
  rep.lhs = ExtendedNonneg<S>::of_real(S(band.b - band.a)) * lower_integral;
  for (std::size_t N = 0; N <= f.horizon(); ++N) {
    ExtendedNonneg<S> term;
    for (Atom a = 0; a < f.atom_count(); ++a) {
      term += ExtendedNonneg<S>::of_real(S(f.value(N, a) - band.a)) * ExtendedNonneg<S>(space.weight(a));
    }
    if (term > rep.rhs) rep.rhs = term;
  }
  if constexpr (is_exact_v<S>) {
    rep.holds = rep.lhs <= rep.rhs;
  } else {
    rep.holds = rep.lhs.is_infinite() ? rep.rhs.is_infinite()
                                      : (rep.rhs.is_infinite() ||
                                         approx_le(rep.lhs.finite_value(), rep.rhs.finite_value()));
  }
  return rep;
}

template <Scalar S>
UpcrossingSupReport<S> check_upcrossing_estimate_sup(const Band<S>& band, const Process<S>& f,
                                                     const Filtration& filtration,
                                                     const FiniteMeasureSpace<S>& space) {
  if (!classify(f, filtration, space).is_submartingale()) {
    throw std::invalid_argument("upcrossing estimate needs a submartingale");
  }
  return evaluate_upcrossing_estimate_sup(band, f, space);
}

struct BandTranslationReport {
  bool holds = true;
  std::size_t first_bad_N = 0;
  Atom first_bad_atom = 0;
  std::size_t checked = 0;
};

/// U_N((f - a)^+; 0, b - a) == U_N(f; a, b) at every atom and every N <= horizon.
template <Scalar S>
BandTranslationReport band_translation_identity(const Band<S>& band, const Process<S>& f) {
  if (!(band.a < band.b)) throw std::invalid_argument("band translation identity needs a < b");
  Process<S> shifted = f;
  for (std::size_t n = 0; n <= f.horizon(); ++n)
    for (Atom a = 0; a < f.atom_count(); ++a) shifted.value(n, a) = positive_part(S(f.value(n, a) - band.a));
  const Band<S> moved{S(0), S(band.b - band.a)};
  BandTranslationReport rep;
  for (std::size_t N = 0; N <= f.horizon(); ++N) {
    for (Atom a = 0; a < f.atom_count(); ++a) {
      ++rep.checked;
      if (upcrossings_before_at(moved, shifted, N, a) != upcrossings_before_at(band, f, N, a) && rep.holds) {
        rep.holds = false;
        rep.first_bad_N = N;
        rep.first_bad_atom = a;
      }
    }
  }
  return rep;
}

}  // namespace mgale

#endif  // MGALE_CROSSINGS_HPP
