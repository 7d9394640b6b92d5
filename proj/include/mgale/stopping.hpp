#ifndef MGALE_STOPPING_HPP
#define MGALE_STOPPING_HPP

// Stopping times valued in N u {inf}, window-bounded hitting times, stopped
// processes and the optional stopping check.

#include "mgale/process.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mgale {

/// A natural number or +infinity; infinity is the top element and min(inf, n) = n.
class ExtendedTime {
 public:
  constexpr ExtendedTime() = default;
  constexpr explicit ExtendedTime(std::size_t n) : value_(n) {}
  static constexpr ExtendedTime infinity() {
    ExtendedTime t;
    t.value_ = kInfinity;
    return t;
  }

  constexpr bool is_finite() const { return value_ != kInfinity; }
  std::size_t finite_value() const {
    if (!is_finite()) throw std::domain_error("stopping time is infinite at this atom");
    return value_;
  }
  std::string format() const { return is_finite() ? std::to_string(value_) : std::string("inf"); }

  friend constexpr auto operator<=>(const ExtendedTime&, const ExtendedTime&) = default;
  friend constexpr bool operator==(const ExtendedTime&, const ExtendedTime&) = default;

  /// min(t, n) as a natural number.
  constexpr std::size_t capped(std::size_t n) const { return value_ < n ? value_ : n; }

 private:
  static constexpr std::size_t kInfinity = std::numeric_limits<std::size_t>::max();
  std::size_t value_ = 0;
};

struct StoppingTime {
  std::vector<ExtendedTime> time_of;

  StoppingTime() = default;
  explicit StoppingTime(std::vector<ExtendedTime> t) : time_of(std::move(t)) {}
  static StoppingTime constant(std::size_t atom_count, ExtendedTime t) {
    return StoppingTime(std::vector<ExtendedTime>(atom_count, t));
  }
  static StoppingTime from_naturals(const std::vector<std::size_t>& times) {
    StoppingTime s;
    for (std::size_t t : times) s.time_of.emplace_back(t);
    return s;
  }

  std::size_t atom_count() const { return time_of.size(); }
  const ExtendedTime& operator[](Atom a) const { return time_of[a]; }
  bool all_finite() const {
    for (const auto& t : time_of)
      if (!t.is_finite()) return false;
    return true;
  }

  friend bool operator==(const StoppingTime&, const StoppingTime&) = default;
};

inline StoppingTime stopping_min(const StoppingTime& x, const StoppingTime& y) {
  require_same_atoms(x.atom_count(), y.atom_count(), "stopping_min");
  StoppingTime r = x;
  for (Atom a = 0; a < r.atom_count(); ++a) r.time_of[a] = std::min(x[a], y[a]);
  return r;
}

inline StoppingTime stopping_max(const StoppingTime& x, const StoppingTime& y) {
  require_same_atoms(x.atom_count(), y.atom_count(), "stopping_max");
  StoppingTime r = x;
  for (Atom a = 0; a < r.atom_count(); ++a) r.time_of[a] = std::max(x[a], y[a]);
  return r;
}

/// Value sets a hitting time can target: (-inf, a], [b, inf), [lo, hi], or an
/// arbitrary membership test (not serializable).
template <Scalar S>
class ValuePredicate {
 public:
  struct AtMost { S a; };
  struct AtLeast { S b; };
  struct Closed { S lo; S hi; };
  struct Custom { std::function<bool(const S&)> contains; std::string name; };

  static ValuePredicate at_most(S a) { return ValuePredicate(AtMost{std::move(a)}); }
  static ValuePredicate at_least(S b) { return ValuePredicate(AtLeast{std::move(b)}); }
  static ValuePredicate closed(S lo, S hi) { return ValuePredicate(Closed{std::move(lo), std::move(hi)}); }
  static ValuePredicate custom(std::function<bool(const S&)> fn, std::string name = "custom") {
    return ValuePredicate(Custom{std::move(fn), std::move(name)});
  }

  bool contains(const S& x) const {
    return std::visit(
        [&](const auto& p) -> bool {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, AtMost>) return x <= p.a;
          else if constexpr (std::is_same_v<P, AtLeast>) return x >= p.b;
          else if constexpr (std::is_same_v<P, Closed>) return p.lo <= x && x <= p.hi;
          else return p.contains(x);
        },
        repr_);
  }

  bool serializable() const { return !std::holds_alternative<Custom>(repr_); }
  const auto& repr() const { return repr_; }

 private:
  explicit ValuePredicate(std::variant<AtMost, AtLeast, Closed, Custom> r) : repr_(std::move(r)) {}
  std::variant<AtMost, AtLeast, Closed, Custom> repr_;
};

/// For every i, {tau <= i} is a union of blocks of F_i.
inline bool is_stopping_time(const StoppingTime& tau, const Filtration& filtration) {
  require_same_atoms(tau.atom_count(), filtration.atom_count(), "is_stopping_time");
  for (std::size_t i = 0; i <= filtration.horizon(); ++i) {
    AtomSet level(tau.atom_count());
    for (Atom a = 0; a < tau.atom_count(); ++a)
      if (tau[a] <= ExtendedTime(i)) level.insert(a);
    if (!set_measurable_wrt(level, filtration.step(i))) return false;
  }
  return true;
}

/// First j in [n, m] with f_j(w) in s, or m when there is none (including n > m).
template <Scalar S>
std::size_t hitting_at(const Process<S>& f, const ValuePredicate<S>& s, std::size_t n, std::size_t m, Atom a) {
  for (std::size_t j = n; j <= m; ++j)
    if (s.contains(f.value(j, a))) return j;
  return m;
}

template <Scalar S>
std::vector<std::size_t> hitting(const Process<S>& f, const ValuePredicate<S>& s, std::size_t n, std::size_t m) {
  if (n > f.horizon() || m > f.horizon()) throw std::out_of_range("hitting: window exceeds the process horizon");
  std::vector<std::size_t> out(f.atom_count());
  for (Atom a = 0; a < f.atom_count(); ++a) out[a] = hitting_at(f, s, n, m, a);
  return out;
}

/// First j in [n, horizon] with f_j(w) in s, else infinity.
template <Scalar S>
StoppingTime hitting_unbounded(const Process<S>& f, const ValuePredicate<S>& s, std::size_t n) {
  if (n > f.horizon()) throw std::out_of_range("hitting_unbounded: start exceeds the process horizon");
  StoppingTime out = StoppingTime::constant(f.atom_count(), ExtendedTime::infinity());
  for (Atom a = 0; a < f.atom_count(); ++a) {
    for (std::size_t j = n; j <= f.horizon(); ++j) {
      if (s.contains(f.value(j, a))) {
        out.time_of[a] = ExtendedTime(j);
        break;
      }
    }
  }
  return out;
}

template <Scalar S>
bool check_hitting_is_stopping_time(const Process<S>& f, const ValuePredicate<S>& s, std::size_t n, std::size_t m,
                                    const Filtration& filtration) {
  if (!is_adapted(f, filtration)) throw std::invalid_argument("hitting check: process is not adapted");
  return is_stopping_time(StoppingTime::from_naturals(hitting(f, s, n, m)), filtration);
}

/// g_n(w) = f_{min(tau(w), n)}(w).
template <Scalar S>
Process<S> stopped_process(const Process<S>& f, const StoppingTime& tau) {
  require_same_atoms(f.atom_count(), tau.atom_count(), "stopped_process");
  Process<S> g(f.horizon(), f.atom_count(), S(0));
  for (std::size_t n = 0; n <= f.horizon(); ++n)
    for (Atom a = 0; a < f.atom_count(); ++a) g.value(n, a) = f.value(tau[a].capped(n), a);
  return g;
}

/// f_tau as a random variable; tau must be finite and within the horizon.
template <Scalar S>
RandomVariable<S> value_at_time(const Process<S>& f, const StoppingTime& tau) {
  require_same_atoms(f.atom_count(), tau.atom_count(), "value_at_time");
  RandomVariable<S> out(f.atom_count(), S(0));
  for (Atom a = 0; a < f.atom_count(); ++a) {
    const std::size_t t = tau[a].finite_value();
    if (t > f.horizon()) throw std::out_of_range("stopping time exceeds the process horizon");
    out[a] = f.value(t, a);
  }
  return out;
}

template <Scalar S>
struct OptionalStoppingReport {
  S lhs{0};  // mu[f_tau]
  S rhs{0};  // mu[f_sigma]
  bool holds = false;
  bool martingale = false;  // equality was required and checked
};

/// For a submartingale and bounded stopping times tau <= sigma: mu[f_tau] <= mu[f_sigma],
/// with equality for martingales.
template <Scalar S>
OptionalStoppingReport<S> evaluate_optional_stopping(const Process<S>& f, const FiniteMeasureSpace<S>& space,
                                                     const StoppingTime& tau, const StoppingTime& sigma,
                                                     bool martingale) {
  if (!tau.all_finite() || !sigma.all_finite()) {
    throw std::invalid_argument("optional stopping needs bounded (finite) stopping times");
  }
  for (Atom a = 0; a < tau.atom_count(); ++a) {
    if (tau[a] > sigma[a]) throw std::invalid_argument("optional stopping needs tau <= sigma pointwise");
    if (sigma[a] > ExtendedTime(f.horizon())) throw std::invalid_argument("optional stopping needs sigma <= horizon");
  }
  OptionalStoppingReport<S> rep;
  rep.lhs = integral(space, value_at_time(f, tau));
  rep.rhs = integral(space, value_at_time(f, sigma));
  rep.martingale = martingale;
  rep.holds = martingale ? approx_eq(rep.lhs, rep.rhs) : approx_le(rep.lhs, rep.rhs);
  return rep;
}

template <Scalar S>
OptionalStoppingReport<S> check_optional_stopping(const Process<S>& f, const Filtration& filtration,
                                                  const FiniteMeasureSpace<S>& space, const StoppingTime& tau,
                                                  const StoppingTime& sigma) {
  const MartingaleClass cls = classify(f, filtration, space);
  if (!cls.is_submartingale()) throw std::invalid_argument("optional stopping needs a submartingale");
  if (!is_stopping_time(tau, filtration) || !is_stopping_time(sigma, filtration)) {
    throw std::invalid_argument("optional stopping: argument is not a stopping time");
  }
  return evaluate_optional_stopping(f, space, tau, sigma, cls.kind == MartingaleKind::Martingale);
}

}  // namespace mgale

#endif  // MGALE_STOPPING_HPP
