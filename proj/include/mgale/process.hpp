#ifndef MGALE_PROCESS_HPP
#define MGALE_PROCESS_HPP

// Discrete-time processes, filtrations, martingale classification, the
// discrete stochastic integral and the Doob decomposition.

#include "mgale/condexp.hpp"
#include "mgale/measure.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgale {

/// Values f_n(w) for n = 0..horizon, stored time-major.
template <Scalar S>
class Process {
 public:
  Process() = default;
  explicit Process(std::vector<RandomVariable<S>> slices) : slices_(std::move(slices)) {
    if (slices_.empty()) throw std::invalid_argument("process needs at least one time slice");
    for (const auto& s : slices_) require_same_atoms(s.atom_count(), slices_.front().atom_count(), "process slices");
  }
  Process(std::size_t horizon, std::size_t atom_count, const S& fill)
      : slices_(horizon + 1, RandomVariable<S>(atom_count, fill)) {}

  /// One path per atom; paths[atom][n].
  static Process from_paths(const std::vector<std::vector<S>>& paths) {
    if (paths.empty() || paths.front().empty()) throw std::invalid_argument("process needs at least one path value");
    const std::size_t len = paths.front().size();
    Process p(len - 1, paths.size(), S(0));
    for (Atom a = 0; a < paths.size(); ++a) {
      if (paths[a].size() != len) throw std::invalid_argument("process paths have different lengths");
      for (std::size_t n = 0; n < len; ++n) p.slices_[n][a] = paths[a][n];
    }
    return p;
  }

  std::size_t horizon() const { return slices_.size() - 1; }
  std::size_t atom_count() const { return slices_.front().atom_count(); }
  const RandomVariable<S>& at(std::size_t n) const { return slices_.at(n); }
  RandomVariable<S>& at(std::size_t n) { return slices_.at(n); }
  const S& value(std::size_t n, Atom a) const { return slices_[n][a]; }
  S& value(std::size_t n, Atom a) { return slices_[n][a]; }

  std::vector<S> path(Atom a) const {
    std::vector<S> out;
    out.reserve(slices_.size());
    for (const auto& s : slices_) out.push_back(s[a]);
    return out;
  }

  friend bool operator==(const Process&, const Process&) = default;

 private:
  std::vector<RandomVariable<S>> slices_;
};

template <Scalar S>
Process<S> operator+(const Process<S>& f, const Process<S>& g) {
  if (f.horizon() != g.horizon()) throw std::invalid_argument("process horizon mismatch");
  std::vector<RandomVariable<S>> out;
  for (std::size_t n = 0; n <= f.horizon(); ++n) out.push_back(f.at(n) + g.at(n));
  return Process<S>(std::move(out));
}

template <Scalar S>
Process<S> operator-(const Process<S>& f, const Process<S>& g) {
  if (f.horizon() != g.horizon()) throw std::invalid_argument("process horizon mismatch");
  std::vector<RandomVariable<S>> out;
  for (std::size_t n = 0; n <= f.horizon(); ++n) out.push_back(f.at(n) - g.at(n));
  return Process<S>(std::move(out));
}

/// Nondecreasing sequence of partitions, each coarser than the ambient one.
class Filtration {
 public:
  Filtration() = default;
  Filtration(std::vector<Partition> steps, Partition ambient) : steps_(std::move(steps)), ambient_(std::move(ambient)) {
    if (steps_.empty()) throw std::invalid_argument("filtration needs at least one step");
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      require_same_atoms(steps_[i].atom_count(), ambient_.atom_count(), "filtration steps");
      if (!partition_le(steps_[i], ambient_)) {
        throw std::invalid_argument("filtration step " + std::to_string(i) + " is finer than the ambient partition");
      }
      if (i > 0 && !partition_le(steps_[i - 1], steps_[i])) {
        throw std::invalid_argument("filtration is not monotone at step " + std::to_string(i));
      }
    }
  }
  explicit Filtration(std::vector<Partition> steps)
      : Filtration(steps, Partition::singletons(steps.empty() ? 0 : steps.front().atom_count())) {}

  std::size_t horizon() const { return steps_.size() - 1; }
  std::size_t atom_count() const { return ambient_.atom_count(); }
  const Partition& step(std::size_t n) const { return steps_.at(n); }
  const std::vector<Partition>& steps() const { return steps_; }
  const Partition& ambient() const { return ambient_; }

  friend bool operator==(const Filtration&, const Filtration&) = default;

 private:
  std::vector<Partition> steps_;
  Partition ambient_;
};

/// The join of all steps; equal to the last step by monotonicity.
inline Partition filtration_sup(const Filtration& filtration) {
  Partition acc = filtration.step(0);
  for (const auto& p : filtration.steps()) acc = partition_join(acc, p);
  return acc;
}

/// F_n = sigma(f_0, ..., f_n), clipped to the ambient partition.
template <Scalar S>
Filtration natural_filtration(const Process<S>& f, const Partition& ambient) {
  require_same_atoms(f.atom_count(), ambient.atom_count(), "natural_filtration");
  std::vector<Partition> steps;
  Partition acc = Partition::trivial(f.atom_count());
  for (std::size_t n = 0; n <= f.horizon(); ++n) {
    acc = partition_join(acc, generated_partition(f.at(n)));
    if (!partition_le(acc, ambient)) acc = partition_meet(acc, ambient);
    steps.push_back(acc);
  }
  return Filtration(std::move(steps), ambient);
}

template <Scalar S>
Filtration natural_filtration(const Process<S>& f) {
  return natural_filtration(f, Partition::singletons(f.atom_count()));
}

inline void require_horizon(std::size_t process_horizon, const Filtration& filtration, const char* what) {
  if (process_horizon != filtration.horizon()) {
    throw std::invalid_argument(std::string(what) + ": process and filtration horizons differ");
  }
}

template <Scalar S>
bool is_adapted(const Process<S>& f, const Filtration& filtration) {
  require_horizon(f.horizon(), filtration, "is_adapted");
  for (std::size_t n = 0; n <= f.horizon(); ++n)
    if (!is_measurable_wrt(f.at(n), filtration.step(n))) return false;
  return true;
}

/// c_0 is F_0-measurable and c_{n+1} is F_n-measurable.
template <Scalar S>
bool is_predictable(const Process<S>& c, const Filtration& filtration) {
  require_horizon(c.horizon(), filtration, "is_predictable");
  if (!is_measurable_wrt(c.at(0), filtration.step(0))) return false;
  for (std::size_t n = 0; n < c.horizon(); ++n)
    if (!is_measurable_wrt(c.at(n + 1), filtration.step(n))) return false;
  return true;
}

// ---------------------------------------------------------------------------

enum class MartingaleKind { Martingale, Submartingale, Supermartingale, None };

inline const char* to_string(MartingaleKind k) {
  switch (k) {
    case MartingaleKind::Martingale: return "martingale";
    case MartingaleKind::Submartingale: return "submartingale";
    case MartingaleKind::Supermartingale: return "supermartingale";
    case MartingaleKind::None: return "none";
  }
  return "none";
}

inline MartingaleKind parse_martingale_kind(std::string_view s) {
  if (s == "martingale") return MartingaleKind::Martingale;
  if (s == "submartingale") return MartingaleKind::Submartingale;
  if (s == "supermartingale") return MartingaleKind::Supermartingale;
  if (s == "none") return MartingaleKind::None;
  throw std::invalid_argument("unknown martingale class '" + std::string(s) + "'");
}

/// Witness of a failure of the martingale identity mu[f_j | F_i] = f_i.
/// For non-adapted processes i == j and the atom is where f_i is not F_i-measurable.
struct ClassWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  Atom atom = 0;
  bool adaptedness_failure = false;
};

struct MartingaleClass {
  MartingaleKind kind = MartingaleKind::None;
  std::optional<ClassWitness> witness;  // first pair breaking equality, if any

  bool is_submartingale() const { return kind == MartingaleKind::Martingale || kind == MartingaleKind::Submartingale; }
  bool is_supermartingale() const {
    return kind == MartingaleKind::Martingale || kind == MartingaleKind::Supermartingale;
  }
};

namespace detail {

template <Scalar S>
std::optional<Atom> first_unmeasurable_atom(const RandomVariable<S>& f, const Partition& p) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> rep(p.block_count(), unset);
  for (Atom a = 0; a < f.atom_count(); ++a) {
    auto& r = rep[p.block_of(a)];
    if (r == unset) {
      r = a;
    } else if (!(f[a] == f[r])) {
      return a;
    }
  }
  return std::nullopt;
}

template <Scalar S>
MartingaleClass classify_pairs(const Process<S>& f, const Filtration& filtration, const FiniteMeasureSpace<S>& space,
                               bool consecutive_only) {
  require_horizon(f.horizon(), filtration, "classify");
  require_same_atoms(f.atom_count(), space.atom_count(), "classify");
  MartingaleClass result;
  for (std::size_t n = 0; n <= f.horizon(); ++n) {
    if (auto bad = first_unmeasurable_atom(f.at(n), filtration.step(n))) {
      result.witness = ClassWitness{n, n, *bad, true};
      return result;
    }
  }
  bool all_eq = true, all_ge = true, all_le = true;
  for (std::size_t i = 0; i <= f.horizon(); ++i) {
    const std::size_t j_end = consecutive_only ? std::min(i + 1, f.horizon()) : f.horizon();
    for (std::size_t j = i + 1; j <= j_end; ++j) {
      const RandomVariable<S> ce = condexp(CondexpInput<S>(space, filtration.ambient(), filtration.step(i), f.at(j)));
      for (Atom a = 0; a < f.atom_count(); ++a) {
        if (!space.charges(a)) continue;
        const S& lhs = ce[a];
        const S& base = f.value(i, a);
        if (!approx_eq(lhs, base)) {
          if (all_eq) result.witness = ClassWitness{i, j, a, false};
          all_eq = false;
        }
        if (!approx_le(base, lhs)) all_ge = false;
        if (!approx_le(lhs, base)) all_le = false;
      }
    }
  }
  if (all_eq) {
    result.kind = MartingaleKind::Martingale;
  } else if (all_ge) {
    result.kind = MartingaleKind::Submartingale;
  } else if (all_le) {
    result.kind = MartingaleKind::Supermartingale;
  }
  return result;
}

}  // namespace detail

/// Classifies f against mu[f_j | F_i] for every pair i <= j. Rational mode
/// compares exactly; float mode uses an absolute tolerance of 1e-9.
template <Scalar S>
MartingaleClass classify(const Process<S>& f, const Filtration& filtration, const FiniteMeasureSpace<S>& space) {
  return detail::classify_pairs(f, filtration, space, false);
}

/// Consecutive pairs (i, i + 1) only; equivalent to `classify` by the tower property.
template <Scalar S>
MartingaleClass classify_consecutive(const Process<S>& f, const Filtration& filtration,
                                     const FiniteMeasureSpace<S>& space) {
  return detail::classify_pairs(f, filtration, space, true);
}

/// (c . f)_n = sum_{k < n} c_{k+1} (f_{k+1} - f_k).
template <Scalar S>
Process<S> stochastic_integral(const Process<S>& c, const Process<S>& f) {
  if (c.horizon() != f.horizon()) throw std::invalid_argument("stochastic_integral: horizon mismatch");
  require_same_atoms(c.atom_count(), f.atom_count(), "stochastic_integral");
  Process<S> out(f.horizon(), f.atom_count(), S(0));
  for (std::size_t n = 1; n <= f.horizon(); ++n)
    for (Atom a = 0; a < f.atom_count(); ++a)
      out.value(n, a) = out.value(n - 1, a) + c.value(n, a) * (f.value(n, a) - f.value(n - 1, a));
  return out;
}

template <Scalar S>
struct DoobDecomposition {
  Process<S> martingale_part;
  Process<S> predictable_part;
};

/// f = M + A with A_0 = 0 and A_{n+1} - A_n = mu[f_{n+1} - f_n | F_n].
template <Scalar S>
DoobDecomposition<S> doob_decomposition(const Process<S>& f, const Filtration& filtration,
                                        const FiniteMeasureSpace<S>& space) {
  if (!is_adapted(f, filtration)) throw std::invalid_argument("doob_decomposition: process is not adapted");
  Process<S> predictable(f.horizon(), f.atom_count(), S(0));
  Process<S> martingale(f.horizon(), f.atom_count(), S(0));
  martingale.at(0) = f.at(0);
  for (std::size_t n = 0; n < f.horizon(); ++n) {
    const RandomVariable<S> increment = f.at(n + 1) - f.at(n);
    const RandomVariable<S> drift =
        condexp(CondexpInput<S>(space, filtration.ambient(), filtration.step(n), increment));
    predictable.at(n + 1) = predictable.at(n) + drift;
    martingale.at(n + 1) = martingale.at(n) + (increment - drift);
  }
  return {std::move(martingale), std::move(predictable)};
}

}  // namespace mgale

#endif  // MGALE_PROCESS_HPP
