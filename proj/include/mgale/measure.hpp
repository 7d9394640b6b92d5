#ifndef MGALE_MEASURE_HPP
#define MGALE_MEASURE_HPP

// Finite measure spaces and the objects that live on them: atom sets,
// partitions (the finite-space form of sub-sigma-algebras), random variables,
// integrals and L^p norms.

#include "mgale/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mgale {

using Atom = std::size_t;

/// Subset of {0, ..., atom_count - 1}.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(std::size_t atom_count) : members_(atom_count, false) {}
  AtomSet(std::size_t atom_count, std::initializer_list<Atom> atoms) : members_(atom_count, false) {
    for (Atom a : atoms) insert(a);
  }

  static AtomSet full(std::size_t atom_count) {
    AtomSet s(atom_count);
    s.members_.assign(atom_count, true);
    return s;
  }

  std::size_t atom_count() const { return members_.size(); }
  bool contains(Atom a) const { return members_.at(a); }
  void insert(Atom a) {
    if (a >= members_.size()) throw std::out_of_range("atom index out of range");
    members_[a] = true;
  }
  void erase(Atom a) { members_.at(a) = false; }
  std::size_t size() const { return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true)); }
  bool empty() const { return size() == 0; }

  AtomSet complement() const {
    AtomSet c(atom_count());
    for (Atom a = 0; a < atom_count(); ++a) c.members_[a] = !members_[a];
    return c;
  }
  AtomSet operator|(const AtomSet& o) const { return combine(o, [](bool x, bool y) { return x || y; }); }
  AtomSet operator&(const AtomSet& o) const { return combine(o, [](bool x, bool y) { return x && y; }); }

  std::vector<Atom> atoms() const {
    std::vector<Atom> out;
    for (Atom a = 0; a < atom_count(); ++a)
      if (members_[a]) out.push_back(a);
    return out;
  }

  friend bool operator==(const AtomSet&, const AtomSet&) = default;

 private:
  template <typename Op>
  AtomSet combine(const AtomSet& o, Op op) const {
    if (o.atom_count() != atom_count()) throw std::invalid_argument("atom sets over different spaces");
    AtomSet r(atom_count());
    for (Atom a = 0; a < atom_count(); ++a) r.members_[a] = op(members_[a], o.members_[a]);
    return r;
  }

  std::vector<bool> members_;
};

/// A partition of the atoms. Blocks are numbered canonically in order of their
/// first atom, so structurally equal partitions compare equal.
class Partition {
 public:
  Partition() = default;

  /// Builds from an arbitrary labelling; labels are renumbered canonically.
  static Partition from_labels(std::span<const std::size_t> labels) {
    Partition p;
    p.block_of_.resize(labels.size());
    std::map<std::size_t, std::size_t> renumber;
    for (Atom a = 0; a < labels.size(); ++a) {
      auto [it, inserted] = renumber.emplace(labels[a], renumber.size());
      p.block_of_[a] = it->second;
    }
    p.block_count_ = renumber.size();
    return p;
  }

  static Partition from_blocks(std::size_t atom_count, const std::vector<std::vector<Atom>>& blocks) {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> labels(atom_count, unset);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw std::invalid_argument("partition block is empty");
      for (Atom a : blocks[b]) {
        if (a >= atom_count) throw std::invalid_argument("partition atom out of range");
        if (labels[a] != unset) throw std::invalid_argument("atom appears in two partition blocks");
        labels[a] = b;
      }
    }
    if (std::find(labels.begin(), labels.end(), unset) != labels.end()) {
      throw std::invalid_argument("partition does not cover every atom");
    }
    return from_labels(labels);
  }

  static Partition trivial(std::size_t atom_count) {
    std::vector<std::size_t> labels(atom_count, 0);
    return from_labels(labels);
  }
  static Partition singletons(std::size_t atom_count) {
    std::vector<std::size_t> labels(atom_count);
    std::iota(labels.begin(), labels.end(), std::size_t{0});
    return from_labels(labels);
  }

  std::size_t atom_count() const { return block_of_.size(); }
  std::size_t block_count() const { return block_count_; }
  std::size_t block_of(Atom a) const { return block_of_.at(a); }
  std::span<const std::size_t> labels() const { return block_of_; }

  std::vector<std::vector<Atom>> blocks() const {
    std::vector<std::vector<Atom>> out(block_count_);
    for (Atom a = 0; a < block_of_.size(); ++a) out[block_of_[a]].push_back(a);
    return out;
  }

  AtomSet block_set(std::size_t block) const {
    AtomSet s(atom_count());
    for (Atom a = 0; a < block_of_.size(); ++a)
      if (block_of_[a] == block) s.insert(a);
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::size_t> block_of_;
  std::size_t block_count_ = 0;
};

inline void require_same_atoms(std::size_t x, std::size_t y, const char* what) {
  if (x != y) throw std::invalid_argument(std::string("mismatched atom counts: ") + what);
}

/// p <= q iff every block of q lies inside a block of p (q is the finer partition).
inline bool partition_le(const Partition& p, const Partition& q) {
  require_same_atoms(p.atom_count(), q.atom_count(), "partition_le");
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> coarse_of(q.block_count(), unset);
  for (Atom a = 0; a < q.atom_count(); ++a) {
    auto& c = coarse_of[q.block_of(a)];
    if (c == unset) {
      c = p.block_of(a);
    } else if (c != p.block_of(a)) {
      return false;
    }
  }
  return true;
}

/// Common refinement: blocks are the nonempty pairwise intersections.
inline Partition partition_join(const Partition& p, const Partition& q) {
  require_same_atoms(p.atom_count(), q.atom_count(), "partition_join");
  std::vector<std::size_t> labels(p.atom_count());
  for (Atom a = 0; a < p.atom_count(); ++a) labels[a] = p.block_of(a) * q.block_count() + q.block_of(a);
  return Partition::from_labels(labels);
}

/// Finest partition coarser than both: connected components of the union of
/// the two equivalence relations.
inline Partition partition_meet(const Partition& p, const Partition& q) {
  require_same_atoms(p.atom_count(), q.atom_count(), "partition_meet");
  const std::size_t n = p.atom_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite_blocks = [&](const Partition& r) {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> rep(r.block_count(), unset);
    for (Atom a = 0; a < n; ++a) {
      auto& first = rep[r.block_of(a)];
      if (first == unset) {
        first = a;
      } else {
        parent[find(a)] = find(first);
      }
    }
  };
  unite_blocks(p);
  unite_blocks(q);
  std::vector<std::size_t> labels(n);
  for (Atom a = 0; a < n; ++a) labels[a] = find(a);
  return Partition::from_labels(labels);
}

inline bool set_measurable_wrt(const AtomSet& s, const Partition& p) {
  require_same_atoms(s.atom_count(), p.atom_count(), "set_measurable_wrt");
  std::vector<int> state(p.block_count(), -1);
  for (Atom a = 0; a < p.atom_count(); ++a) {
    int in = s.contains(a) ? 1 : 0;
    int& st = state[p.block_of(a)];
    if (st == -1) {
      st = in;
    } else if (st != in) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

template <Scalar S>
class FiniteMeasureSpace {
 public:
  FiniteMeasureSpace() = default;
  explicit FiniteMeasureSpace(std::vector<S> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("measure space needs at least one atom");
    for (const S& w : weights_) {
      if (w < S(0)) throw std::invalid_argument("atom weight must be nonnegative");
      if constexpr (!is_exact_v<S>) {
        if (!std::isfinite(w)) throw std::invalid_argument("atom weight must be finite");
      }
    }
  }

  static FiniteMeasureSpace uniform(std::size_t atom_count) {
    if (atom_count == 0) throw std::invalid_argument("measure space needs at least one atom");
    return FiniteMeasureSpace(std::vector<S>(atom_count, S(1) / S(static_cast<long>(atom_count))));
  }

  std::size_t atom_count() const { return weights_.size(); }
  const S& weight(Atom a) const { return weights_.at(a); }
  std::span<const S> weights() const { return weights_; }
  bool charges(Atom a) const { return weights_.at(a) > S(0); }

  S total_mass() const {
    S total(0);
    for (const S& w : weights_) total += w;
    return total;
  }

 private:
  std::vector<S> weights_;
};

template <Scalar S>
struct RandomVariable {
  std::vector<S> values;

  RandomVariable() = default;
  explicit RandomVariable(std::vector<S> v) : values(std::move(v)) {}
  RandomVariable(std::size_t atom_count, const S& constant) : values(atom_count, constant) {}

  std::size_t atom_count() const { return values.size(); }
  const S& operator[](Atom a) const { return values[a]; }
  S& operator[](Atom a) { return values[a]; }

  friend bool operator==(const RandomVariable&, const RandomVariable&) = default;
};

template <Scalar S>
RandomVariable<S> indicator(const AtomSet& s) {
  RandomVariable<S> r(s.atom_count(), S(0));
  for (Atom a = 0; a < s.atom_count(); ++a)
    if (s.contains(a)) r[a] = S(1);
  return r;
}

template <Scalar S, typename Fn>
RandomVariable<S> map_values(const RandomVariable<S>& f, Fn fn) {
  RandomVariable<S> r;
  r.values.reserve(f.atom_count());
  for (const S& x : f.values) r.values.push_back(fn(x));
  return r;
}

template <Scalar S, typename Fn>
RandomVariable<S> zip_values(const RandomVariable<S>& f, const RandomVariable<S>& g, Fn fn) {
  require_same_atoms(f.atom_count(), g.atom_count(), "zip_values");
  RandomVariable<S> r;
  r.values.reserve(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a) r.values.push_back(fn(f[a], g[a]));
  return r;
}

template <Scalar S>
RandomVariable<S> operator+(const RandomVariable<S>& f, const RandomVariable<S>& g) {
  return zip_values(f, g, [](const S& x, const S& y) { return S(x + y); });
}
template <Scalar S>
RandomVariable<S> operator-(const RandomVariable<S>& f, const RandomVariable<S>& g) {
  return zip_values(f, g, [](const S& x, const S& y) { return S(x - y); });
}
template <Scalar S>
RandomVariable<S> operator*(const S& c, const RandomVariable<S>& f) {
  return map_values(f, [&](const S& x) { return S(c * x); });
}

/// Restriction f * 1_s.
template <Scalar S>
RandomVariable<S> restrict_to(const RandomVariable<S>& f, const AtomSet& s) {
  require_same_atoms(f.atom_count(), s.atom_count(), "restrict_to");
  RandomVariable<S> r(f.atom_count(), S(0));
  for (Atom a = 0; a < f.atom_count(); ++a)
    if (s.contains(a)) r[a] = f[a];
  return r;
}

// ---------------------------------------------------------------------------

template <Scalar S>
S measure(const FiniteMeasureSpace<S>& space, const AtomSet& s) {
  require_same_atoms(space.atom_count(), s.atom_count(), "measure");
  S total(0);
  for (Atom a = 0; a < s.atom_count(); ++a)
    if (s.contains(a)) total += space.weight(a);
  return total;
}

template <Scalar S>
S integral(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f) {
  require_same_atoms(space.atom_count(), f.atom_count(), "integral");
  S total(0);
  for (Atom a = 0; a < f.atom_count(); ++a) total += f[a] * space.weight(a);
  return total;
}

template <Scalar S>
S set_integral(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f, const AtomSet& s) {
  require_same_atoms(f.atom_count(), s.atom_count(), "set_integral");
  S total(0);
  for (Atom a = 0; a < f.atom_count(); ++a)
    if (s.contains(a)) total += f[a] * space.weight(a);
  return total;
}

/// Equality outside the zero-weight atoms.
template <Scalar S>
bool ae_equal(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f, const RandomVariable<S>& g) {
  require_same_atoms(f.atom_count(), g.atom_count(), "ae_equal");
  for (Atom a = 0; a < f.atom_count(); ++a)
    if (space.charges(a) && !approx_eq(f[a], g[a])) return false;
  return true;
}

template <Scalar S>
bool ae_le(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f, const RandomVariable<S>& g) {
  require_same_atoms(f.atom_count(), g.atom_count(), "ae_le");
  for (Atom a = 0; a < f.atom_count(); ++a)
    if (space.charges(a) && !approx_le(f[a], g[a])) return false;
  return true;
}

/// Largest |f(w) - g(w)| over charged atoms.
template <Scalar S>
S ae_sup_gap(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f, const RandomVariable<S>& g) {
  require_same_atoms(f.atom_count(), g.atom_count(), "ae_sup_gap");
  S worst(0);
  for (Atom a = 0; a < f.atom_count(); ++a)
    if (space.charges(a)) worst = std::max(worst, abs_value(S(f[a] - g[a])));
  return worst;
}

// ---------------------------------------------------------------------------
// L^p norms.

/// Exponent p in [1, inf].
class Exponent {
 public:
  static Exponent finite(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("norm exponent must satisfy p >= 1");
    return Exponent(p, false);
  }
  static Exponent infinity() { return Exponent(0.0, true); }
  static Exponent parse(std::string_view text) {
    if (text == "inf" || text == "infinity") return infinity();
    return finite(parse_scalar<double>(text));
  }

  bool is_infinite() const { return infinite_; }
  double value() const { return value_; }
  bool is_integral() const { return infinite_ || value_ == std::floor(value_); }
  unsigned integral_value() const {
    if (infinite_ || !is_integral() || value_ > 64.0) {
      throw std::invalid_argument("exact arithmetic needs an integral exponent in [1, 64]");
    }
    return static_cast<unsigned>(value_);
  }
  std::string format() const { return infinite_ ? "inf" : format_scalar(value_); }

  friend bool operator==(const Exponent&, const Exponent&) = default;
  friend bool operator<=(const Exponent& x, const Exponent& y) {
    if (y.infinite_) return true;
    if (x.infinite_) return false;
    return x.value_ <= y.value_;
  }

 private:
  Exponent(double p, bool inf) : value_(p), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// An L^p norm kept in a form that is comparable without roots: for finite p the
/// stored base is sum |f|^p mu (the norm is base^(1/p)); for p = inf the base is
/// the essential supremum itself. In exact mode p must be integral.
template <Scalar S>
struct LpNorm {
  S base{0};
  Exponent p = Exponent::finite(1);

  /// Root degree applied to `base` (1 for p = inf).
  unsigned degree() const { return p.is_infinite() ? 1u : p.integral_value(); }

  double to_double() const {
    const double b = mgale::to_double(base);
    if (p.is_infinite() || p.value() == 1.0) return b;
    return std::pow(b, 1.0 / p.value());
  }

  /// Exact value when no root is needed (p = 1 or p = inf).
  bool has_exact_value() const { return p.is_infinite() || p.value() == 1.0; }
  const S& exact_value() const {
    if (!has_exact_value()) throw std::logic_error("norm value is a root; use to_double or compare");
    return base;
  }

  static LpNorm of_scalar(const S& value) { return LpNorm{value, Exponent::finite(1)}; }
};

/// x <= y for norms possibly taken at different exponents.
template <Scalar S>
bool norm_le(const LpNorm<S>& x, const LpNorm<S>& y) {
  if constexpr (is_exact_v<S>) {
    const unsigned dx = x.degree();
    const unsigned dy = y.degree();
    if (dx == dy) return x.base <= y.base;
    return pow_uint(x.base, dy) <= pow_uint(y.base, dx);
  } else {
    const double a = x.to_double();
    const double b = y.to_double();
    return a <= b + 1e-12 * std::max(1.0, std::abs(b));
  }
}

template <Scalar S>
const LpNorm<S>& norm_max(const LpNorm<S>& x, const LpNorm<S>& y) {
  return norm_le(x, y) ? y : x;
}

template <Scalar S>
S power_abs(const S& x, const Exponent& p) {
  const S ax = abs_value(x);
  if constexpr (is_exact_v<S>) {
    return pow_uint(ax, p.integral_value());
  } else {
    return p.value() == 1.0 ? ax : std::pow(ax, p.value());
  }
}

/// ||f||_p; p = inf is the essential supremum (zero-weight atoms ignored).
template <Scalar S>
LpNorm<S> snorm(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f, const Exponent& p) {
  require_same_atoms(space.atom_count(), f.atom_count(), "snorm");
  if constexpr (is_exact_v<S>) {
    if (!p.is_infinite()) (void)p.integral_value();
  }
  LpNorm<S> out{S(0), p};
  for (Atom a = 0; a < f.atom_count(); ++a) {
    if (!space.charges(a)) continue;
    if (p.is_infinite()) {
      out.base = std::max(out.base, abs_value(f[a]));
    } else {
      out.base += power_abs(f[a], p) * space.weight(a);
    }
  }
  return out;
}

/// L^1 norm as a plain scalar.
template <Scalar S>
S l1_norm(const FiniteMeasureSpace<S>& space, const RandomVariable<S>& f) {
  return snorm(space, f, Exponent::finite(1)).base;
}

// ---------------------------------------------------------------------------

namespace detail {
inline std::uint64_t value_key(double x) { return std::bit_cast<std::uint64_t>(x); }
inline const Rational& value_key(const Rational& x) { return x; }
}  // namespace detail

/// Level-set partition of f: atoms share a block iff f takes the same value
/// (exact equality, or bitwise equality for doubles).
template <Scalar S>
Partition generated_partition(const RandomVariable<S>& f) {
  using Key = std::decay_t<decltype(detail::value_key(std::declval<const S&>()))>;
  std::map<Key, std::size_t> label_of;
  std::vector<std::size_t> labels(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a) {
    auto [it, inserted] = label_of.emplace(detail::value_key(f[a]), label_of.size());
    labels[a] = it->second;
  }
  return Partition::from_labels(labels);
}

/// f is constant on every block of p.
template <Scalar S>
bool is_measurable_wrt(const RandomVariable<S>& f, const Partition& p) {
  require_same_atoms(f.atom_count(), p.atom_count(), "is_measurable_wrt");
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> rep(p.block_count(), unset);
  for (Atom a = 0; a < f.atom_count(); ++a) {
    auto& r = rep[p.block_of(a)];
    if (r == unset) {
      r = a;
    } else if (!(f[a] == f[r])) {
      return false;
    }
  }
  return true;
}

}  // namespace mgale

#endif  // MGALE_MEASURE_HPP
