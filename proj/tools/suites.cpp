#include "suites.hpp"

#include "mgale/mgale.hpp"
#include "mgale/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mgale::suites {
namespace {

using Q = Rational;

std::string fmt(const Q& x) { return format_scalar(x); }
std::string fmt(double x) { return format_double(x); }
std::string fmt(std::size_t x) { return std::to_string(x); }
std::string fmt(bool b) { return format_bool(b); }

gen::Rng suite_rng(const SuiteConfig& cfg, int id) {
  return gen::Rng(splitmix64(cfg.seed ^ (0x5157ULL * static_cast<std::uint64_t>(id))));
}

SuiteOutcome outcome(int id, const char* name, std::vector<std::string> header) {
  SuiteOutcome out;
  out.id = id;
  out.name = name;
  out.table = CsvTable(std::move(header));
  return out;
}

const std::vector<Q>& band_grid() {
  static const std::vector<Q> grid{Q(-2), Q(-1), Q(-1, 2), Q(0), Q(1, 2), Q(1), Q(2)};
  return grid;
}

}  // namespace

SuiteOutcome condexp_equivalence(const SuiteConfig& cfg) {
  auto out = outcome(1, "condexp_equivalence", {"instance", "atoms", "ambient_blocks", "sub_blocks", "agree", "characterization"});
  auto rng = suite_rng(cfg, 1);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + gen::below(rng, 16);
    const auto space = gen::space<Q>(rng, n, 2);
    const Partition ambient = gen::partition(rng, n, 1 + gen::below(rng, n));
    const Partition sub = gen::coarsen(rng, ambient);
    const RandomVariable<Q> f = gen::measurable<Q>(rng, ambient, -9, 9, 4);
    const CondexpInput<Q> in(space, ambient, sub, f);
    const bool agree = ae_equal(space, condexp(in), condexp_l2(in));
    const bool charac = check_set_integral_characterization(in).holds;
    if (!agree || !charac) ++failures;
    out.table.add_row({fmt(i), fmt(n), fmt(ambient.block_count()), fmt(sub.block_count()), fmt(agree), fmt(charac)});
  }
  out.passed = failures == 0;
  out.headline = "1000 instances, failures " + std::to_string(failures);
  return out;
}

SuiteOutcome upcrossing_estimate(const SuiteConfig&) {
  auto out = outcome(2, "upcrossing_estimate", {"N", "a", "b", "lhs", "rhs", "holds"});
  std::size_t violations = 0, checks = 0;
  for (std::size_t N = 1; N <= 10; ++N) {
    const auto ps = exhaustive_space<Q>(FairWalk{}, N);
    const bool sub = classify_consecutive(ps.process, ps.filtration, ps.space).is_submartingale();
    for (const Q& a : band_grid()) {
      for (const Q& b : band_grid()) {
        if (a == b) continue;
        const Band<Q> band{a, b};
        const auto rep = evaluate_upcrossing_estimate(band, ps.process, ps.space, N);
        bool holds = sub && rep.lhs <= rep.rhs;
        if (!(a < b)) holds = holds && rep.lhs <= 0 && rep.rhs >= 0;
        ++checks;
        if (!holds) ++violations;
        out.table.add_row({fmt(N), fmt(a), fmt(b), fmt(rep.lhs), fmt(rep.rhs), fmt(holds)});
      }
    }
  }
  out.passed = violations == 0;
  out.headline = std::to_string(checks) + " (N, band) checks, violations " + std::to_string(violations);
  return out;
}

SuiteOutcome band_translation(const SuiteConfig& cfg) {
  auto out = outcome(3, "band_translation", {"block", "paths", "comparisons", "violations"});
  auto rng = suite_rng(cfg, 3);
  std::size_t total_violations = 0;
  for (std::size_t block = 0; block < 10; ++block) {
    std::size_t comparisons = 0, violations = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
      const std::size_t len = 1 + gen::below(rng, 30);
      std::vector<Q> path(len);
      for (auto& x : path) x = gen::rational<Q>(rng, 12, 4);
      Q a = gen::rational<Q>(rng, 8, 4), b = gen::rational<Q>(rng, 8, 4);
      if (a == b) b += 1;
      if (b < a) std::swap(a, b);
      const auto rep = band_translation_identity(Band<Q>{a, b}, Process<Q>::from_paths({path}));
      comparisons += rep.checked;
      if (!rep.holds) ++violations;
    }
    total_violations += violations;
    out.table.add_row({fmt(block), "1000", fmt(comparisons), fmt(violations)});
  }
  out.passed = total_violations == 0;
  out.headline = "10000 paths, violations " + std::to_string(total_violations);
  return out;
}

SuiteOutcome figure1(const SuiteConfig&) {
  auto out = outcome(4, "figure1", {"k", "sigma", "tau"});
  const auto f = Process<Q>::from_paths({fixtures::figure1_path<Q>()});
  const auto band = fixtures::figure1_band<Q>();
  const CrossingTable table = crossing_table(band, f, 13);
  for (std::size_t k = 0; k < table.sigma.size(); ++k) out.table.add_row({fmt(k), fmt(table.sigma[k][0]), fmt(table.tau[k][0])});
  const std::size_t u = upcrossings_before(band, f, 13)[0];
  const std::vector<std::size_t> sigma{0, 5, 10, 13}, tau{1, 7, 11, 13};
  bool ok = table.sigma.size() == 4 && u == 2;
  for (std::size_t k = 0; ok && k < 4; ++k) ok = table.sigma[k][0] == sigma[k] && table.tau[k][0] == tau[k];
  // sigma_n = tau_n = 13 beyond the table
  ok = ok && upper_crossing(band, f, 13, 6)[0] == 13 && lower_crossing(band, f, 13, 6)[0] == 13;
  out.passed = ok;
  out.headline = "upcrossings_before = " + std::to_string(u);
  return out;
}

namespace {

struct SubmartingaleInstance {
  FiniteMeasureSpace<Q> space;
  Filtration filtration;
  Process<Q> f;
};

SubmartingaleInstance random_submartingale(gen::Rng& rng) {
  const std::size_t n = 1 + gen::below(rng, 16);
  const std::size_t horizon = 1 + gen::below(rng, 8);
  auto space = gen::space<Q>(rng, n, 1);
  auto filtration = gen::filtration(rng, n, horizon);
  auto f = gen::submartingale(rng, space, filtration);
  return {std::move(space), std::move(filtration), std::move(f)};
}

}  // namespace

SuiteOutcome stochastic_integral_lemma(const SuiteConfig& cfg) {
  auto out = outcome(5, "stochastic_integral", {"instance", "atoms", "horizon", "bound", "submartingale", "unit_identity"});
  auto rng = suite_rng(cfg, 5);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto inst = random_submartingale(rng);
    const std::int64_t bound = gen::between(rng, 1, 4);
    const Process<Q> c = gen::predictable<Q>(rng, inst.filtration, bound);
    const bool sub = classify(stochastic_integral(c, inst.f), inst.filtration, inst.space).is_submartingale();
    const Process<Q> ones(inst.f.horizon(), inst.f.atom_count(), Q(1));
    const Process<Q> unit = stochastic_integral(ones, inst.f);
    const std::size_t N = inst.f.horizon();
    const bool identity =
        integral(inst.space, unit.at(N)) == integral(inst.space, inst.f.at(N)) - integral(inst.space, inst.f.at(0));
    if (!sub || !identity) ++failures;
    out.table.add_row({fmt(i), fmt(inst.f.atom_count()), fmt(N), std::to_string(bound), fmt(sub), fmt(identity)});
  }
  out.passed = failures == 0;
  out.headline = "1000 instances, failures " + std::to_string(failures);
  return out;
}

SuiteOutcome doob_decomposition_suite(const SuiteConfig& cfg) {
  auto out = outcome(6, "doob_decomposition",
                     {"instance", "atoms", "horizon", "martingale_part", "predictable", "nondecreasing", "reconstruction",
                      "event_martingale_identical"});
  auto rng = suite_rng(cfg, 6);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto inst = random_submartingale(rng);
    const auto doob = doob_decomposition(inst.f, inst.filtration, inst.space);
    const bool mart =
        classify(doob.martingale_part, inst.filtration, inst.space).kind == MartingaleKind::Martingale;
    const bool pred = is_predictable(doob.predictable_part, inst.filtration);
    bool nondecreasing = true;
    for (std::size_t n = 0; n < inst.f.horizon(); ++n)
      for (Atom a = 0; a < inst.f.atom_count(); ++a)
        nondecreasing = nondecreasing && doob.predictable_part.value(n, a) <= doob.predictable_part.value(n + 1, a);
    const bool recon = doob.martingale_part + doob.predictable_part == inst.f;

    std::vector<AtomSet> sets;
    for (std::size_t n = 0; n <= inst.f.horizon(); ++n) {
      const Partition& p = inst.filtration.step(n);
      AtomSet s(p.atom_count());
      for (std::size_t b = 0; b < p.block_count(); ++b)
        if (gen::coin(rng, 1, 2)) s = s | p.block_set(b);
      sets.push_back(std::move(s));
    }
    const EventSequence events(std::move(sets), inst.filtration);
    const auto bc = borel_cantelli_martingale(events, inst.space);
    const auto count_doob = doob_decomposition(event_count<Q>(events, inst.f.atom_count()), inst.filtration, inst.space);
    const bool identical = bc == count_doob.martingale_part;

    if (!(mart && pred && nondecreasing && recon && identical)) ++failures;
    out.table.add_row({fmt(i), fmt(inst.f.atom_count()), fmt(inst.f.horizon()), fmt(mart), fmt(pred), fmt(nondecreasing),
                       fmt(recon), fmt(identical)});
  }
  out.passed = failures == 0;
  out.headline = "1000 instances, failures " + std::to_string(failures);
  return out;
}

SuiteOutcome maximal_and_optional_stopping(const SuiteConfig&) {
  auto out = outcome(7, "maximal_optional_stopping", {"model", "horizon", "maximal_checks", "maximal_violations",
                                                     "stopping_pairs", "stopping_violations"});
  const std::vector<Q> lambdas{Q(1, 2), Q(1), Q(3, 2), Q(2), Q(3), Q(5)};
  std::size_t violations = 0;
  bool worked_example = false;
  const std::vector<std::pair<const char*, TrajectoryModel>> models{{"fair", FairWalk{}},
                                                                   {"biased_2/3", BiasedWalk{Q(2, 3)}}};
  for (const auto& [name, model] : models) {
    for (std::size_t H = 1; H <= 10; ++H) {
      const auto ps = exhaustive_space<Q>(model, H);
      const MartingaleClass cls = classify(ps.process, ps.filtration, ps.space);
      std::size_t max_checks = 0, max_bad = 0, os_pairs = 0, os_bad = 0;
      if (!cls.is_submartingale()) ++max_bad;
      for (std::size_t n = 0; n <= H; ++n) {
        for (const Q& lambda : lambdas) {
          const auto rep = evaluate_maximal_inequality(ps.process, ps.space, n, lambda);
          ++max_checks;
          if (!rep.holds) ++max_bad;
          if (std::string(name) == "fair" && H == 2 && n == 2 && lambda == 1) {
            worked_example = rep.lhs == Q(1, 2) && rep.rhs == Q(1, 2);
          }
        }
      }
      std::vector<StoppingTime> times;
      for (std::size_t t = 0; t <= H; ++t) times.push_back(StoppingTime::constant(ps.space.atom_count(), ExtendedTime(t)));
      for (int level = 1; level <= 3; ++level) {
        times.push_back(StoppingTime::from_naturals(hitting(ps.process, ValuePredicate<Q>::at_least(Q(level)), 0, H)));
        times.push_back(StoppingTime::from_naturals(hitting(ps.process, ValuePredicate<Q>::at_most(Q(-level)), 0, H)));
      }
      for (const auto& t : times)
        if (!is_stopping_time(t, ps.filtration)) ++os_bad;
      for (const auto& t1 : times) {
        for (const auto& t2 : times) {
          const auto rep = evaluate_optional_stopping(ps.process, ps.space, stopping_min(t1, t2), stopping_max(t1, t2),
                                                      cls.kind == MartingaleKind::Martingale);
          ++os_pairs;
          if (!rep.holds) ++os_bad;
        }
      }
      violations += max_bad + os_bad;
      out.table.add_row({name, fmt(H), fmt(max_checks), fmt(max_bad), fmt(os_pairs), fmt(os_bad)});
    }
  }
  out.passed = violations == 0 && worked_example;
  out.headline = "violations " + std::to_string(violations) + ", fair walk lambda=1 n=2 gives 1/2 = 1/2: " +
                 fmt(worked_example);
  return out;
}

SuiteOutcome levy_upward(const SuiteConfig& cfg) {
  auto out = outcome(8, "levy_upward", {"instance", "atoms", "steps", "nonincreasing", "exact_at_horizon", "distances"});
  auto rng = suite_rng(cfg, 8);
  std::size_t not_monotone = 0, not_exact = 0;
  {
    const fixtures::LevyExample<Q> ex;
    const auto rep = check_levy_upward(ex.g, ex.filtration, ex.space);
    std::string d;
    for (const auto& x : rep.distance) d += (d.empty() ? "" : " ") + fmt(x);
    const bool example_ok = rep.distance == std::vector<Q>{Q(1), Q(1, 2), Q(0)};
    if (!example_ok) ++not_exact;
    out.table.add_row({"example", "4", "2", fmt(rep.nonincreasing), fmt(rep.exact_at_horizon), d});
  }
  for (std::size_t i = 0; i < 500; ++i) {
    const std::size_t n = 1 + gen::below(rng, 16);
    const auto space = gen::space<Q>(rng, n, 1);
    const auto filtration = gen::filtration(rng, n, 1 + gen::below(rng, 5), true);
    const auto g = gen::random_variable<Q>(rng, n);
    const auto rep = check_levy_upward(g, filtration, space);
    if (!rep.nonincreasing) ++not_monotone;
    if (!rep.exact_at_horizon) ++not_exact;
    std::string d;
    for (const auto& x : rep.distance) d += (d.empty() ? "" : " ") + fmt(x);
    out.table.add_row({fmt(i), fmt(n), fmt(filtration.horizon()), fmt(rep.nonincreasing), fmt(rep.exact_at_horizon), d});
  }
  out.passed = not_monotone == 0 && not_exact == 0;
  out.headline = "500 instances: d_horizon != 0 on " + std::to_string(not_exact) + ", d_n increases somewhere on " +
                 std::to_string(not_monotone);
  return out;
}

SuiteOutcome ui_moduli(const SuiteConfig& cfg) {
  auto out = outcome(9, "ui_moduli", {"part", "instances", "failures"});
  auto rng = suite_rng(cfg, 9);

  std::size_t bridging_bad = 0;
  for (std::size_t i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + gen::below(rng, 12);
    const auto space = gen::space<Q>(rng, n, 1);
    FunctionFamily<Q> fam{{gen::random_variable<Q>(rng, n)}, Exponent::finite(1)};
    const Q C = gen::rational<Q>(rng, 10, 3, true);
    AtomSet A(n);
    for (Atom a = 0; a < n; ++a)
      if (gen::coin(rng, 1, 2)) A.insert(a);
    if (!check_bridging_inequality(space, fam, C, A).holds) ++bridging_bad;
  }
  out.table.add_row({"bridging", "10000", fmt(bridging_bad)});

  std::size_t knap_bad = 0, knap_count = 0;
  for (std::size_t i = 0; i < 300; ++i) {
    const std::size_t n = 1 + gen::below(rng, 20);
    const auto space = gen::space<Q>(rng, n, 1);
    const Exponent p = gen::coin(rng, 1, 2) ? Exponent::finite(1) : Exponent::finite(2);
    FunctionFamily<Q> fam{{gen::random_variable<Q>(rng, n)}, p};
    if (n <= 10) fam.members.push_back(gen::random_variable<Q>(rng, n));
    const Q delta = space.total_mass() * Q(static_cast<long>(gen::between(rng, 0, 8)), 8);
    const auto bf = analyst_modulus_bruteforce(space, fam, delta);
    const auto bb = analyst_modulus_branch_and_bound(space, fam, delta);
    ++knap_count;
    if (!(bf.base == bb.base)) ++knap_bad;
  }
  out.table.add_row({"bruteforce_vs_branch_and_bound", fmt(knap_count), fmt(knap_bad)});

  std::size_t holder_bad = 0;
  const std::vector<std::pair<Exponent, Exponent>> pairs{{Exponent::finite(1), Exponent::finite(2)},
                                                         {Exponent::finite(1), Exponent::infinity()},
                                                         {Exponent::finite(2), Exponent::finite(3)},
                                                         {Exponent::finite(1), Exponent::finite(1)}};
  const std::vector<Q> grid{Q(0), Q(1, 2), Q(1), Q(2), Q(4)};
  for (std::size_t i = 0; i < 500; ++i) {
    const std::size_t n = 1 + gen::below(rng, 12);
    const auto space = gen::space<Q>(rng, n, 1, true);
    std::vector<RandomVariable<Q>> members{gen::random_variable<Q>(rng, n), gen::random_variable<Q>(rng, n)};
    const auto& [p, q] = pairs[i % pairs.size()];
    if (!check_p_monotonicity(space, members, p, q, grid).holds) ++holder_bad;
  }
  out.table.add_row({"holder_ordering", "500", fmt(holder_bad)});

  out.passed = bridging_bad == 0 && knap_bad == 0 && holder_bad == 0;
  out.headline = "bridging " + fmt(bridging_bad) + ", subset search " + fmt(knap_bad) + ", holder " + fmt(holder_bad) +
                 " failures";
  return out;
}

namespace {

bool close(double x, double y) { return std::abs(x - y) <= 1e-12; }

}  // namespace

SuiteOutcome vitali(const SuiteConfig&) {
  auto out = outcome(10, "vitali", {"family", "quantity", "argument", "measured", "expected", "match"});
  const std::size_t H = 64;
  const std::vector<double> c_grid{0.5, 1, 2, 4, 8, 16, 32};
  bool all_match = true;
  const auto record = [&](const char* fam, const char* what, double arg, double measured, double expected) {
    const bool m = close(measured, expected);
    all_match = all_match && m;
    out.table.add_row({fam, what, fmt(arg), fmt(measured), fmt(expected), fmt(m)});
  };

  VitaliOptions<double> options;
  options.epsilons = {0.5};
  options.c_grid = c_grid;

  const auto shrinking = fixtures::shrinking_spikes<double>(H);
  const auto rs = vitali_empirical<double>(
      shrinking.space, [&](std::size_t n) { return shrinking.member(n); },
      RandomVariable<double>(shrinking.space.atom_count(), 0.0), Exponent::finite(1), H, options);
  const auto fixed = fixtures::fixed_mass_spikes<double>(H);
  const auto rf = vitali_empirical<double>(
      fixed.space, [&](std::size_t n) { return fixed.member(n); }, RandomVariable<double>(fixed.space.atom_count(), 0.0),
      Exponent::finite(1), H, options);

  for (std::size_t i = 0; i < rs.checkpoints.size(); ++i) {
    const double n = static_cast<double>(rs.checkpoints[i]);
    record("shrinking", "l1_norm", n, rs.lp_distance[i].to_double(), 1.0 / n);
    record("shrinking", "in_measure", n, rs.in_measure[0][i], 1.0 / (n * n));
    record("fixed_mass", "l1_norm", n, rf.lp_distance[i].to_double(), 1.0);
    record("fixed_mass", "in_measure", n, rf.in_measure[0][i], 1.0 / n);
  }
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    record("shrinking", "ui_modulus", c_grid[i], rs.ui_modulus_curve[i].to_double(), 1.0 / std::max(1.0, std::ceil(c_grid[i])));
    record("fixed_mass", "ui_modulus", c_grid[i], rf.ui_modulus_curve[i].to_double(), 1.0);
  }
  const bool shrinking_ok = rs.lp_decay && rs.ui_modulus_small && rs.in_measure_decay && rs.consistent;
  const bool fixed_ok = rf.in_measure_decay && !rf.ui_modulus_small && !rf.lp_decay && rf.consistent;
  out.passed = all_match && shrinking_ok && fixed_ok;
  out.headline = "closed forms matched: " + fmt(all_match) + ", shrinking L1 decay with vanishing modulus: " +
                 fmt(shrinking_ok) + ", fixed-mass negative control: " + fmt(fixed_ok);
  return out;
}

BandDecay fair_walk_band_decay(std::uint64_t seed, std::size_t trials, std::size_t horizon, unsigned threads) {
  BandDecay d;
  d.ks = {1, 2, 4, 8, 16};
  const Band<double> band{-0.5, 0.5};
  const auto counts = map_trajectories(FairWalk{}, RunConfig{seed, trials, horizon, {}, threads},
                                       [&](std::size_t, std::span<const double> path) {
                                         const auto f = Process<double>::from_paths({{path.begin(), path.end()}});
                                         return upcrossings_before_at(band, f, horizon, 0);
                                       });
  for (std::size_t k : d.ks) {
    std::size_t hit = 0;
    for (std::size_t c : counts) hit += c >= k;
    d.fractions.push_back(static_cast<double>(hit) / static_cast<double>(trials));
  }
  d.halves = true;
  for (std::size_t i = 0; i + 1 < d.fractions.size(); ++i)
    if (!(d.fractions[i + 1] <= d.fractions[i] / 2)) d.halves = false;
  return d;
}

SuiteOutcome ae_convergence(const SuiteConfig& cfg) {
  auto out = outcome(11, "ae_convergence", {"experiment", "horizon", "parameter", "value"});
  const std::size_t trials = 10000, horizon = 10000;
  struct Osc {
    double last_window;
    double last_100;
  };
  const auto osc = map_trajectories(PolyaUrn{1, 1}, RunConfig{cfg.seed, trials, horizon, {}, cfg.threads},
                                    [](std::size_t, std::span<const double> path) {
                                      return Osc{window_oscillation<double>(path, 1000), window_oscillation<double>(path, 100)};
                                    });
  std::size_t converged = 0, converged_fine = 0;
  for (const auto& o : osc) {
    converged += o.last_window <= 1e-2;
    converged_fine += o.last_100 <= 1e-3;
  }
  const double fraction = static_cast<double>(converged) / trials;
  const double fraction_fine = static_cast<double>(converged_fine) / trials;
  out.table.add_row({"polya_window_1000_tol_1e-2", fmt(horizon), "converged_fraction", fmt(fraction)});
  out.table.add_row({"polya_window_100_tol_1e-3", fmt(horizon), "converged_fraction", fmt(fraction_fine)});

  const BandDecay decay = fair_walk_band_decay(cfg.seed, trials, 32, cfg.threads);
  for (std::size_t i = 0; i < decay.ks.size(); ++i)
    out.table.add_row({"fair_walk_band_-1/2_1/2", "32", "P(U>=" + fmt(decay.ks[i]) + ")", fmt(decay.fractions[i])});
  const BandDecay long_run = fair_walk_band_decay(cfg.seed, trials, horizon, cfg.threads);
  for (std::size_t i = 0; i < long_run.ks.size(); ++i)
    out.table.add_row({"fair_walk_band_-1/2_1/2", fmt(horizon), "P(U>=" + fmt(long_run.ks[i]) + ")",
                       fmt(long_run.fractions[i])});

  out.passed = fraction >= 0.99 && decay.halves;
  out.headline = "polya converged " + fmt(fraction) + ", fair-walk band decay halves per doubling at horizon 32: " +
                 fmt(decay.halves) + " (horizon " + fmt(horizon) + ": " + fmt(long_run.halves) + ")";
  return out;
}

SuiteOutcome borel_cantelli(const SuiteConfig& cfg) {
  auto out = outcome(12, "borel_cantelli", {"schedule", "trial_block", "match_fraction", "p_horizon_mean"});
  const RunConfig run{cfg.seed, 10000, 200, {}, cfg.threads};
  const BorelCantelliOptions options{50, 100, 1000};
  const auto half = check_borel_cantelli(IndependentEvents{[](std::size_t) { return Q(1, 2); }}, run, options);
  const auto summable = check_borel_cantelli(
      IndependentEvents{[](std::size_t n) { return n == 0 ? Q(0) : Q(1, static_cast<long>(n * n)); }}, run, options);
  for (const auto& [name, rep] : {std::pair{"constant_1/2", &half}, std::pair{"inverse_square", &summable}}) {
    for (const auto& b : rep->blocks) out.table.add_row({name, fmt(b.trial_block), fmt(b.match_fraction), fmt(b.p_horizon_mean)});
    out.table.add_row({name, "all", fmt(rep->match_fraction), fmt(rep->p_horizon_mean)});
  }
  out.passed = half.match_fraction >= 0.999 && summable.match_fraction >= 0.95;
  out.headline = "constant 1/2: " + fmt(half.match_fraction) + " (membership floor 1 - 2^-101), 1/n^2: " +
                 fmt(summable.match_fraction) + " (union-bound floor 0.99)";
  return out;
}

const std::vector<SuiteInfo>& registry() {
  static const std::vector<SuiteInfo> suites{
      {1, "condexp_equivalence", condexp_equivalence},
      {2, "upcrossing_estimate", upcrossing_estimate},
      {3, "band_translation", band_translation},
      {4, "figure1", figure1},
      {5, "stochastic_integral", stochastic_integral_lemma},
      {6, "doob_decomposition", doob_decomposition_suite},
      {7, "maximal_optional_stopping", maximal_and_optional_stopping},
      {8, "levy_upward", levy_upward},
      {9, "ui_moduli", ui_moduli},
      {10, "vitali", vitali},
      {11, "ae_convergence", ae_convergence},
      {12, "borel_cantelli", borel_cantelli},
  };
  return suites;
}

}  // namespace mgale::suites
