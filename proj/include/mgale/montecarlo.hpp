#ifndef MGALE_MONTECARLO_HPP
#define MGALE_MONTECARLO_HPP

// Trajectory models, exact path-space enumeration and seeded simulation.
//
// Every trial draws from its own generator seeded by a hash of (seed, trial),
// so a trajectory depends only on those two numbers and never on how trials
// are spread over threads.

#include "mgale/measure.hpp"
#include "mgale/process.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace mgale {

struct FairWalk {
  Rational step{1};
};

struct BiasedWalk {
  Rational p_up;
  Rational step{1};
};

/// Values are the red proportion red / (red + black); one ball of the drawn
/// colour is added per step.
struct PolyaUrn {
  unsigned initial_red = 1;
  unsigned initial_black = 1;
};

enum class StakeRule { Constant, Doubling, Proportional };

/// Wealth of a player betting on coin flips won with probability p_win.
///   Constant:     stake every round
///   Doubling:     stake * 2^(losses since the last win)
///   Proportional: stake * current wealth (stake read as a fraction)
struct BettingProcess {
  Rational p_win{1, 2};
  StakeRule rule = StakeRule::Constant;
  Rational stake{1};
  Rational initial_wealth{0};
};

/// Value at n >= 1 is the indicator of S_n, which occurs independently with
/// prob(n). S_0 is empty.
struct IndependentEvents {
  std::function<Rational(std::size_t)> prob;
};

/// User-supplied dynamics. `branches` lists (probability, next value) from the
/// path so far and drives exhaustive enumeration; `sample` maps a uniform draw
/// in [0, 1) to the next value.
struct CustomSpec {
  Rational initial{0};
  std::function<std::vector<std::pair<Rational, Rational>>(std::size_t n, std::span<const Rational> path)> branches;
  std::function<double(std::size_t n, std::span<const double> path, double u)> sample;
};

using TrajectoryModel = std::variant<FairWalk, BiasedWalk, PolyaUrn, BettingProcess, IndependentEvents, CustomSpec>;

inline void validate_model(const TrajectoryModel& model) {
  const auto prob_ok = [](const Rational& p) { return p >= 0 && p <= 1; };
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BiasedWalk>) {
          if (!prob_ok(m.p_up)) throw std::invalid_argument("biased walk: p_up outside [0, 1]");
        } else if constexpr (std::is_same_v<M, PolyaUrn>) {
          if (m.initial_red == 0 || m.initial_black == 0) throw std::invalid_argument("polya urn: counts must be positive");
        } else if constexpr (std::is_same_v<M, BettingProcess>) {
          if (!prob_ok(m.p_win)) throw std::invalid_argument("betting process: p_win outside [0, 1]");
        } else if constexpr (std::is_same_v<M, IndependentEvents>) {
          if (!m.prob) throw std::invalid_argument("independent events: missing probability schedule");
        } else if constexpr (std::is_same_v<M, CustomSpec>) {
          if (!m.branches && !m.sample) throw std::invalid_argument("custom model: no dynamics given");
        }
      },
      model);
}

inline const char* model_name(const TrajectoryModel& model) {
  static constexpr const char* names[] = {"fair_walk", "biased_walk", "polya_urn", "betting", "independent", "custom"};
  return names[model.index()];
}

// ---------------------------------------------------------------------------
// Exhaustive path space

namespace detail {

/// Hidden state a path needs beyond its values.
template <Scalar S>
struct WalkState {
  S value{0};
  std::uint64_t red = 0, black = 0;  // urn
  S stake{0};                        // betting: stake of the next round
};

template <Scalar S>
S from_rational(const Rational& x) {
  if constexpr (is_exact_v<S>) {
    return x;
  } else {
    return x.convert_to<double>();
  }
}

template <Scalar S>
WalkState<S> initial_state(const TrajectoryModel& model, std::size_t) {
  WalkState<S> st;
  if (const auto* urn = std::get_if<PolyaUrn>(&model)) {
    st.red = urn->initial_red;
    st.black = urn->initial_black;
    st.value = S(static_cast<long>(st.red)) / S(static_cast<long>(st.red + st.black));
  } else if (const auto* bet = std::get_if<BettingProcess>(&model)) {
    st.value = from_rational<S>(bet->initial_wealth);
    st.stake = bet->rule == StakeRule::Proportional ? S(from_rational<S>(bet->stake) * st.value)
                                                    : from_rational<S>(bet->stake);
  } else if (const auto* custom = std::get_if<CustomSpec>(&model)) {
    st.value = from_rational<S>(custom->initial);
  }
  return st;
}

/// Outcome of one step given which of the two coin faces came up.
template <Scalar S>
WalkState<S> coin_step(const TrajectoryModel& model, const WalkState<S>& st, bool up) {
  WalkState<S> next = st;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, FairWalk> || std::is_same_v<M, BiasedWalk>) {
          const S step = from_rational<S>(m.step);
          next.value = up ? S(st.value + step) : S(st.value - step);
        } else if constexpr (std::is_same_v<M, PolyaUrn>) {
          if (up) ++next.red; else ++next.black;
          next.value = S(static_cast<long>(next.red)) / S(static_cast<long>(next.red + next.black));
        } else if constexpr (std::is_same_v<M, BettingProcess>) {
          next.value = up ? S(st.value + st.stake) : S(st.value - st.stake);
          const S base = from_rational<S>(m.stake);
          switch (m.rule) {
            case StakeRule::Constant: next.stake = base; break;
            case StakeRule::Doubling: next.stake = up ? base : S(st.stake * S(2)); break;
            case StakeRule::Proportional: next.stake = S(base * next.value); break;
          }
        }
      },
      model);
  return next;
}

/// Probability of the "up" face at step n -> n + 1.
template <Scalar S>
S up_probability(const TrajectoryModel& model, const WalkState<S>& st, std::size_t n) {
  return std::visit(
      [&](const auto& m) -> S {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, FairWalk>) return ratio<S>(1, 2);
        else if constexpr (std::is_same_v<M, BiasedWalk>) return from_rational<S>(m.p_up);
        else if constexpr (std::is_same_v<M, PolyaUrn>)
          return S(static_cast<long>(st.red)) / S(static_cast<long>(st.red + st.black));
        else if constexpr (std::is_same_v<M, BettingProcess>) return from_rational<S>(m.p_win);
        else if constexpr (std::is_same_v<M, IndependentEvents>) return from_rational<S>(m.prob(n + 1));
        else return S(0);
      },
      model);
}

}  // namespace detail

template <Scalar S>
struct PathSpace {
  FiniteMeasureSpace<S> space;
  Process<S> process;
  Filtration filtration;
};

/// All paths of the model up to `horizon`, depth first with the "up" branch
/// (or the first listed custom branch) first. Zero-probability paths are kept
/// as zero-weight atoms.
template <Scalar S>
PathSpace<S> exhaustive_space(const TrajectoryModel& model, std::size_t horizon, std::size_t cap = std::size_t{1} << 16) {
  validate_model(model);
  std::vector<std::vector<S>> paths;
  std::vector<S> weights;

  if (const auto* custom = std::get_if<CustomSpec>(&model)) {
    if (!custom->branches) throw std::invalid_argument("custom model has no branch function");
    std::vector<Rational> path{custom->initial};
    std::vector<std::pair<std::vector<Rational>, Rational>> stack{{path, Rational(1)}};
    std::vector<std::pair<std::vector<Rational>, Rational>> done;
    while (!stack.empty()) {
      auto [p, w] = std::move(stack.back());
      stack.pop_back();
      if (p.size() == horizon + 1) {
        done.emplace_back(std::move(p), std::move(w));
        if (done.size() > cap) throw std::length_error("exhaustive space exceeds the atom cap");
        continue;
      }
      auto br = custom->branches(p.size() - 1, p);
      for (auto it = br.rbegin(); it != br.rend(); ++it) {
        auto q = p;
        q.push_back(it->second);
        stack.emplace_back(std::move(q), Rational(w * it->first));
      }
      if (stack.size() + done.size() > cap * 2 + 64) throw std::length_error("exhaustive space exceeds the atom cap");
    }
    for (auto& [p, w] : done) {
      std::vector<S> row;
      for (const auto& v : p) row.push_back(detail::from_rational<S>(v));
      paths.push_back(std::move(row));
      weights.push_back(detail::from_rational<S>(w));
    }
  } else {
    if (horizon >= 63 || (std::size_t{1} << horizon) > cap) {
      throw std::length_error("exhaustive space: 2^" + std::to_string(horizon) + " paths exceed the atom cap " +
                              std::to_string(cap));
    }
    struct Frame {
      detail::WalkState<S> state;
      std::vector<S> path;
      S weight;
    };
    std::vector<Frame> stack;
    auto start = detail::initial_state<S>(model, horizon);
    stack.push_back({start, {start.value}, S(1)});
    while (!stack.empty()) {
      Frame fr = std::move(stack.back());
      stack.pop_back();
      const std::size_t n = fr.path.size() - 1;
      if (n == horizon) {
        paths.push_back(std::move(fr.path));
        weights.push_back(std::move(fr.weight));
        continue;
      }
      const S up = detail::up_probability<S>(model, fr.state, n);
      for (int face = 0; face < 2; ++face) {  // push "down" first so "up" is explored first
        const bool is_up = face == 1;
        Frame child{detail::coin_step<S>(model, fr.state, is_up), fr.path, S(0)};
        if (std::holds_alternative<IndependentEvents>(model)) child.state.value = is_up ? S(1) : S(0);
        child.path.push_back(child.state.value);
        child.weight = fr.weight * (is_up ? up : S(S(1) - up));
        stack.push_back(std::move(child));
      }
    }
  }

  Process<S> process = Process<S>::from_paths(paths);
  Filtration filtration = natural_filtration(process);
  return {FiniteMeasureSpace<S>(std::move(weights)), std::move(process), std::move(filtration)};
}

// ---------------------------------------------------------------------------
// Simulation

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::size_t horizon = 0;
  std::vector<std::size_t> checkpoints;
  unsigned threads = 1;  // 0 = hardware concurrency
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Generator of one trial.
inline std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace detail {

/// Sampler specialised per model; writes horizon + 1 values into `out`.
class PathSampler {
 public:
  PathSampler(const TrajectoryModel& model, std::size_t horizon) : model_(model), horizon_(horizon) {
    validate_model(model);
    if (const auto* ev = std::get_if<IndependentEvents>(&model)) {
      probs_.resize(horizon + 1);
      for (std::size_t n = 0; n <= horizon; ++n) probs_[n] = ev->prob(n).convert_to<double>();
    }
    if (const auto* c = std::get_if<CustomSpec>(&model); c && !c->sample) {
      throw std::invalid_argument("custom model has no sampler");
    }
  }

  void operator()(std::mt19937_64& rng, std::span<double> out) const {
    std::visit([&](const auto& m) { run(m, rng, out); }, model_);
  }

 private:
  void run(const FairWalk& m, std::mt19937_64& rng, std::span<double> out) const {
    const double step = m.step.convert_to<double>();
    out[0] = 0.0;
    for (std::size_t n = 1; n <= horizon_; ++n) out[n] = out[n - 1] + (uniform01(rng) < 0.5 ? step : -step);
  }
  void run(const BiasedWalk& m, std::mt19937_64& rng, std::span<double> out) const {
    const double step = m.step.convert_to<double>(), p = m.p_up.convert_to<double>();
    out[0] = 0.0;
    for (std::size_t n = 1; n <= horizon_; ++n) out[n] = out[n - 1] + (uniform01(rng) < p ? step : -step);
  }
  void run(const PolyaUrn& m, std::mt19937_64& rng, std::span<double> out) const {
    std::uint64_t red = m.initial_red, total = std::uint64_t{m.initial_red} + m.initial_black;
    out[0] = static_cast<double>(red) / static_cast<double>(total);
    for (std::size_t n = 1; n <= horizon_; ++n) {
      if (uniform01(rng) * static_cast<double>(total) < static_cast<double>(red)) ++red;
      ++total;
      out[n] = static_cast<double>(red) / static_cast<double>(total);
    }
  }
  void run(const BettingProcess& m, std::mt19937_64& rng, std::span<double> out) const {
    WalkState<double> st = initial_state<double>(model_, horizon_);
    const double p = m.p_win.convert_to<double>();
    out[0] = st.value;
    for (std::size_t n = 1; n <= horizon_; ++n) {
      st = coin_step<double>(model_, st, uniform01(rng) < p);
      out[n] = st.value;
    }
  }
  void run(const IndependentEvents&, std::mt19937_64& rng, std::span<double> out) const {
    out[0] = 0.0;
    for (std::size_t n = 1; n <= horizon_; ++n) out[n] = uniform01(rng) < probs_[n] ? 1.0 : 0.0;
  }
  void run(const CustomSpec& m, std::mt19937_64& rng, std::span<double> out) const {
    out[0] = m.initial.convert_to<double>();
    for (std::size_t n = 1; n <= horizon_; ++n) out[n] = m.sample(n - 1, out.first(n), uniform01(rng));
  }

  const TrajectoryModel& model_;
  std::size_t horizon_;
  std::vector<double> probs_;
};

inline unsigned resolve_threads(unsigned requested, std::size_t trials) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(trials, 1)));
}

}  // namespace detail

/// Applies fn(trial, path) to every simulated trajectory and returns the
/// results in trial order. Paths are generated into a per-thread buffer, so
/// memory stays O(threads * horizon).
template <typename Fn>
auto map_trajectories(const TrajectoryModel& model, const RunConfig& config, Fn fn) {
  using R = std::invoke_result_t<Fn&, std::size_t, std::span<const double>>;
  const detail::PathSampler sampler(model, config.horizon);
  std::vector<R> results(config.trials);
  const unsigned threads = detail::resolve_threads(config.threads, config.trials);

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> buffer(config.horizon + 1);
    for (std::size_t t = begin; t < end; ++t) {
      auto rng = trial_stream(config.seed, t);
      sampler(rng, buffer);
      results[t] = fn(t, std::span<const double>(buffer));
    }
  };

  if (threads <= 1) {
    work(0, config.trials);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (config.trials + threads - 1) / threads;
    for (unsigned i = 0; i < threads; ++i) {
      const std::size_t begin = std::min(config.trials, i * chunk), end = std::min(config.trials, begin + chunk);
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return results;
}

/// trials x (horizon + 1) values, row-major by trial.
struct TrajectoryBatch {
  std::size_t trials = 0;
  std::size_t horizon = 0;
  std::vector<double> values;

  std::span<const double> trajectory(std::size_t trial) const {
    return std::span<const double>(values).subspan(trial * (horizon + 1), horizon + 1);
  }
  double at(std::size_t trial, std::size_t n) const { return values[trial * (horizon + 1) + n]; }

  /// The batch as a process on `trials` equally weighted atoms.
  Process<double> as_process() const {
    std::vector<std::vector<double>> paths;
    for (std::size_t t = 0; t < trials; ++t) {
      auto tr = trajectory(t);
      paths.emplace_back(tr.begin(), tr.end());
    }
    return Process<double>::from_paths(paths);
  }
};

inline TrajectoryBatch simulate(const TrajectoryModel& model, const RunConfig& config) {
  TrajectoryBatch batch{config.trials, config.horizon, std::vector<double>(config.trials * (config.horizon + 1))};
  const std::size_t stride = config.horizon + 1;
  map_trajectories(model, config, [&](std::size_t t, std::span<const double> path) {
    std::copy(path.begin(), path.end(), batch.values.begin() + static_cast<std::ptrdiff_t>(t * stride));
    return 0;
  });
  return batch;
}

}  // namespace mgale

#endif  // MGALE_MONTECARLO_HPP
