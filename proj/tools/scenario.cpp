#include "scenario.hpp"

#include "mgale/mgale.hpp"
#include "suites.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <set>

namespace mgale::cli {
namespace {

/// A problem with the scenario document itself (exit code 2).
struct ConfigError : std::runtime_error {
  std::size_t line;
  ConfigError(std::size_t l, const std::string& what) : std::runtime_error(what), line(l) {}
};

struct CheckResult {
  bool holds = false;
  std::string value, lhs, rhs, detail;
  CsvTable table{{"empty"}};
};

struct CheckSpec {
  const char* type;
  bool monte_carlo;
  const char* help;
};

const std::vector<CheckSpec>& check_specs() {
  static const std::vector<CheckSpec> specs{
      {"classify", false, "expect: martingale|submartingale|supermartingale|none; witness (i, j, atom) on failure"},
      {"condexp_characterization", false, "sub: blocks; f: values (default f_horizon); averaging vs projection and set integrals"},
      {"crossing_table", false, "band: [a, b]; N (default horizon); sigma_k and tau_k per atom"},
      {"upcrossing_estimate", false, "bands: [[a, b], ...]; N; (b - a) mu[U_N] <= mu[(f_N - a)^+] for submartingales"},
      {"upcrossing_estimate_sup", false, "bands; supremum form in extended arithmetic"},
      {"band_translation", false, "bands; U_N((f - a)^+; 0, b - a) == U_N(f; a, b)"},
      {"maximal_inequality", false, "n; lambdas; lambda mu{max f_k >= lambda} <= integral of f_n over that set"},
      {"optional_stopping", false, "tau <= sigma, bounded: naturals, \"inf\", arrays or {\"hit_at_least\"|\"hit_at_most\": x}"},
      {"doob_decomposition", false, "martingale part, predictable part, exact reconstruction"},
      {"stochastic_integral", false, "c: a constant or {\"values\": time-major}; predictable, nonnegative; (c . f) is a submartingale"},
      {"l1_convergence_b", false, "f_n == mu[f_horizon | F_n] for all n"},
      {"levy_upward", false, "g (default f_horizon); d_n nonincreasing and d_horizon == 0"},
      {"ui_modulus", false, "p; c_grid; deltas; probabilist and analyst moduli of {f_n}"},
      {"ae_diagnostic", false, "cutoff; bands; ks; l1_bound (number or \"auto\")"},
      {"fatou", false, "g; tol; p; tail_start; ||g||_p <= min of ||f_n||_p over the tail"},
      {"limit_estimate", true, "model; trials; horizon; tol; window; min_fraction"},
      {"band_decay", true, "model; trials; horizon; band; ks; measures must halve per doubling of k"},
      {"borel_cantelli", true, "schedule: {\"constant\": p} | \"inverse_square\"; trials; horizon; tail_start; divergence_cut; min_match"},
  };
  return specs;
}

const CheckSpec* find_spec(const std::string& type) {
  for (const auto& s : check_specs())
    if (type == s.type) return &s;
  return nullptr;
}

/// Line of the index-th "type" key after "checks"; 0 when not found.
std::size_t check_line(const std::string& text, std::size_t index) {
  std::size_t pos = text.find("\"checks\"");
  if (pos == std::string::npos) return 0;
  for (std::size_t i = 0; i <= index; ++i) {
    pos = text.find("\"type\"", pos + 1);
    if (pos == std::string::npos) return line_of_key(text, "checks");
  }
  return line_of_offset(text, pos);
}

std::string join_sizes(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

// ---------------------------------------------------------------------------

template <Scalar S>
struct Data {
  std::optional<FiniteMeasureSpace<S>> space;
  std::optional<Process<S>> process;
  std::optional<Filtration> filtration;

  void require() const {
    if (!process) throw std::invalid_argument("this check needs a process (give \"model\" or \"process\")");
  }
  const FiniteMeasureSpace<S>& sp() const { return *space; }
  const Process<S>& f() const { return *process; }
  const Filtration& F() const { return *filtration; }
};

template <Scalar S>
Band<S> band_from_json(const Json& j) {
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("band must be \"a,b\" or [a, b]");
    return {parse_scalar<S>(text.substr(0, comma)), parse_scalar<S>(text.substr(comma + 1))};
  }
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("band must be [a, b]");
  return {scalar_from_json<S>(j[0]), scalar_from_json<S>(j[1])};
}

template <Scalar S>
std::vector<Band<S>> bands_from_json(const Json& check) {
  std::vector<Band<S>> out;
  if (check.contains("band")) out.push_back(band_from_json<S>(check.at("band")));
  if (check.contains("bands"))
    for (const auto& b : check.at("bands")) out.push_back(band_from_json<S>(b));
  if (out.empty()) throw std::invalid_argument("missing \"band\" or \"bands\"");
  return out;
}

Exponent exponent_from_json(const Json& j) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  return Exponent::finite(j.get<double>());
}

template <Scalar S>
StoppingTime time_from_json(const Json& j, const Process<S>& f) {
  if (j.is_object()) {
    if (j.contains("hit_at_least"))
      return StoppingTime::from_naturals(
          hitting(f, ValuePredicate<S>::at_least(scalar_from_json<S>(j.at("hit_at_least"))), 0, f.horizon()));
    if (j.contains("hit_at_most"))
      return StoppingTime::from_naturals(
          hitting(f, ValuePredicate<S>::at_most(scalar_from_json<S>(j.at("hit_at_most"))), 0, f.horizon()));
    throw std::invalid_argument("stopping time object needs hit_at_least or hit_at_most");
  }
  return stopping_time_from_json(j, f.atom_count());
}

template <Scalar S>
CheckResult precondition_failed(const std::string& what) {
  CheckResult r;
  r.holds = false;
  r.detail = "precondition: " + what;
  r.table = CsvTable({"precondition"});
  r.table.add_row({what});
  return r;
}

// --- exact / path-space checks ---------------------------------------------

template <Scalar S>
CheckResult run_classify(const Json& c, const Data<S>& d) {
  d.require();
  const MartingaleKind expect = parse_martingale_kind(c.value("expect", std::string("martingale")));
  const MartingaleClass cls = classify(d.f(), d.F(), d.sp());
  CheckResult r;
  r.holds = cls.kind == expect || (expect == MartingaleKind::Submartingale && cls.is_submartingale()) ||
            (expect == MartingaleKind::Supermartingale && cls.is_supermartingale());
  r.value = to_string(cls.kind);
  r.table = CsvTable({"kind", "expected", "witness_i", "witness_j", "witness_atom", "adaptedness_failure"});
  std::vector<std::string> row{to_string(cls.kind), to_string(expect), "", "", "", ""};
  if (cls.witness) {
    row[2] = std::to_string(cls.witness->i);
    row[3] = std::to_string(cls.witness->j);
    row[4] = std::to_string(cls.witness->atom);
    row[5] = format_bool(cls.witness->adaptedness_failure);
    if (!r.holds) r.detail = "witness (i, j, atom) = (" + row[2] + ", " + row[3] + ", " + row[4] + ")";
  }
  r.table.add_row(row);
  return r;
}

template <Scalar S>
CheckResult run_condexp(const Json& c, const Data<S>& d) {
  d.require();
  const std::size_t n = d.sp().atom_count();
  const Partition sub = partition_from_json(c.at("sub"), n);
  const Partition ambient = c.contains("ambient") ? partition_from_json(c.at("ambient"), n) : Partition::singletons(n);
  const RandomVariable<S> f =
      c.contains("f") ? RandomVariable<S>(scalars_from_json<S>(c.at("f"))) : d.f().at(d.f().horizon());
  const CondexpInput<S> in(d.sp(), ambient, sub, f);
  const auto avg = condexp(in);
  const auto proj = condexp_l2(in);
  const auto charac = check_set_integral_characterization(in);
  CheckResult r;
  r.holds = ae_equal(d.sp(), avg, proj) && charac.holds;
  r.table = CsvTable({"atom", "block", "averaging", "projection"});
  for (Atom a = 0; a < n; ++a)
    r.table.add_row({std::to_string(a), std::to_string(sub.block_of(a)), format_scalar(avg[a]), format_scalar(proj[a])});
  r.detail = "worst block gap " + format_scalar(charac.worst_block_gap);
  return r;
}

template <Scalar S>
std::size_t end_time(const Json& c, const Data<S>& d, const char* key = "N") {
  const std::size_t N = c.value(key, d.f().horizon());
  if (N > d.f().horizon()) throw std::invalid_argument(std::string(key) + " exceeds the horizon");
  return N;
}

template <Scalar S>
CheckResult run_crossing_table(const Json& c, const Data<S>& d) {
  d.require();
  const auto band = band_from_json<S>(c.at("band"));
  const std::size_t N = end_time(c, d);
  const CrossingTable t = crossing_table(band, d.f(), N);
  const auto u = upcrossings_before(band, d.f(), N);
  CheckResult r;
  r.table = CsvTable({"atom", "k", "sigma", "tau"});
  for (Atom a = 0; a < d.f().atom_count(); ++a)
    for (std::size_t k = 0; k < t.sigma.size(); ++k)
      r.table.add_row({std::to_string(a), std::to_string(k), std::to_string(t.sigma[k][a]), std::to_string(t.tau[k][a])});
  r.holds = true;
  if (c.contains("expect_upcrossings")) {
    const auto want = c.at("expect_upcrossings").get<std::vector<std::size_t>>();
    r.holds = want == u;
  }
  r.value = join_sizes(u);
  r.detail = "upcrossings_before per atom";
  return r;
}

template <Scalar S>
CheckResult run_upcrossing_estimate(const Json& c, const Data<S>& d) {
  d.require();
  if (!classify(d.f(), d.F(), d.sp()).is_submartingale()) return precondition_failed<S>("not a submartingale");
  const std::size_t N = end_time(c, d);
  CheckResult r;
  r.holds = true;
  r.table = CsvTable({"a", "b", "N", "lhs", "rhs", "holds"});
  for (const auto& band : bands_from_json<S>(c)) {
    const auto rep = evaluate_upcrossing_estimate(band, d.f(), d.sp(), N);
    r.holds = r.holds && rep.holds;
    r.table.add_row({format_scalar(band.a), format_scalar(band.b), std::to_string(N), format_scalar(rep.lhs),
                     format_scalar(rep.rhs), format_bool(rep.holds)});
    r.lhs = format_scalar(rep.lhs);
    r.rhs = format_scalar(rep.rhs);
  }
  return r;
}

template <Scalar S>
CheckResult run_upcrossing_estimate_sup(const Json& c, const Data<S>& d) {
  d.require();
  if (!classify(d.f(), d.F(), d.sp()).is_submartingale()) return precondition_failed<S>("not a submartingale");
  CheckResult r;
  r.holds = true;
  r.table = CsvTable({"a", "b", "lhs", "rhs", "holds"});
  for (const auto& band : bands_from_json<S>(c)) {
    const auto rep = evaluate_upcrossing_estimate_sup(band, d.f(), d.sp());
    r.holds = r.holds && rep.holds;
    r.table.add_row({format_scalar(band.a), format_scalar(band.b), rep.lhs.format(), rep.rhs.format(), format_bool(rep.holds)});
  }
  return r;
}

template <Scalar S>
CheckResult run_band_translation(const Json& c, const Data<S>& d) {
  d.require();
  CheckResult r;
  r.holds = true;
  r.table = CsvTable({"a", "b", "comparisons", "holds", "first_bad_N", "first_bad_atom"});
  for (const auto& band : bands_from_json<S>(c)) {
    const auto rep = band_translation_identity(band, d.f());
    r.holds = r.holds && rep.holds;
    r.table.add_row({format_scalar(band.a), format_scalar(band.b), std::to_string(rep.checked), format_bool(rep.holds),
                     rep.holds ? "" : std::to_string(rep.first_bad_N), rep.holds ? "" : std::to_string(rep.first_bad_atom)});
  }
  return r;
}

template <Scalar S>
CheckResult run_maximal(const Json& c, const Data<S>& d) {
  d.require();
  if (!classify(d.f(), d.F(), d.sp()).is_submartingale()) return precondition_failed<S>("not a submartingale");
  const std::size_t n = end_time(c, d, "n");
  CheckResult r;
  r.holds = true;
  r.table = CsvTable({"n", "lambda", "lhs", "rhs", "holds"});
  for (const auto& lj : c.at("lambdas")) {
    const S lambda = scalar_from_json<S>(lj);
    const auto rep = evaluate_maximal_inequality(d.f(), d.sp(), n, lambda);
    r.holds = r.holds && rep.holds;
    r.lhs = format_scalar(rep.lhs);
    r.rhs = format_scalar(rep.rhs);
    r.table.add_row({std::to_string(n), format_scalar(lambda), r.lhs, r.rhs, format_bool(rep.holds)});
  }
  return r;
}

template <Scalar S>
CheckResult run_optional_stopping(const Json& c, const Data<S>& d) {
  d.require();
  const StoppingTime tau = time_from_json(c.at("tau"), d.f());
  const StoppingTime sigma = time_from_json(c.at("sigma"), d.f());
  const MartingaleClass cls = classify(d.f(), d.F(), d.sp());
  if (!cls.is_submartingale()) return precondition_failed<S>("not a submartingale");
  if (!is_stopping_time(tau, d.F()) || !is_stopping_time(sigma, d.F()))
    return precondition_failed<S>("argument is not a stopping time");
  if (!tau.all_finite() || !sigma.all_finite()) return precondition_failed<S>("stopping times must be bounded");
  for (Atom a = 0; a < tau.atom_count(); ++a)
    if (tau[a] > sigma[a]) return precondition_failed<S>("tau <= sigma fails at atom " + std::to_string(a));
  const auto rep = evaluate_optional_stopping(d.f(), d.sp(), tau, sigma, cls.kind == MartingaleKind::Martingale);
  CheckResult r;
  r.holds = rep.holds;
  r.lhs = format_scalar(rep.lhs);
  r.rhs = format_scalar(rep.rhs);
  r.table = CsvTable({"lhs", "rhs", "equality_required", "holds"});
  r.table.add_row({r.lhs, r.rhs, format_bool(rep.martingale), format_bool(rep.holds)});
  return r;
}

template <Scalar S>
CheckResult run_doob(const Json&, const Data<S>& d) {
  d.require();
  if (!is_adapted(d.f(), d.F())) return precondition_failed<S>("process is not adapted");
  const auto doob = doob_decomposition(d.f(), d.F(), d.sp());
  CheckResult r;
  const bool mart = classify(doob.martingale_part, d.F(), d.sp()).kind == MartingaleKind::Martingale;
  const bool pred = is_predictable(doob.predictable_part, d.F());
  const bool recon = doob.martingale_part + doob.predictable_part == d.f();
  r.holds = mart && pred && recon;
  r.table = CsvTable({"n", "atom", "martingale_part", "predictable_part"});
  for (std::size_t n = 0; n <= d.f().horizon(); ++n)
    for (Atom a = 0; a < d.f().atom_count(); ++a)
      r.table.add_row({std::to_string(n), std::to_string(a), format_scalar(doob.martingale_part.value(n, a)),
                       format_scalar(doob.predictable_part.value(n, a))});
  r.detail = "martingale " + format_bool(mart) + ", predictable " + format_bool(pred) + ", reconstruction " + format_bool(recon);
  return r;
}

template <Scalar S>
CheckResult run_stochastic_integral(const Json& c, const Data<S>& d) {
  d.require();
  const Json& cj = c.at("c");
  const Process<S> weights = cj.is_object() ? process_from_json<S>(cj)
                                            : Process<S>(d.f().horizon(), d.f().atom_count(), scalar_from_json<S>(cj));
  if (!is_predictable(weights, d.F())) return precondition_failed<S>("c is not predictable");
  if (!classify(d.f(), d.F(), d.sp()).is_submartingale()) return precondition_failed<S>("not a submartingale");
  for (std::size_t n = 0; n <= weights.horizon(); ++n)
    for (Atom a = 0; a < weights.atom_count(); ++a)
      if (weights.value(n, a) < S(0)) return precondition_failed<S>("c must be nonnegative");
  const Process<S> integral_process = stochastic_integral(weights, d.f());
  const MartingaleClass cls = classify(integral_process, d.F(), d.sp());
  CheckResult r;
  r.holds = cls.is_submartingale();
  r.value = to_string(cls.kind);
  r.table = CsvTable({"n", "atom", "value"});
  for (std::size_t n = 0; n <= integral_process.horizon(); ++n)
    for (Atom a = 0; a < integral_process.atom_count(); ++a)
      r.table.add_row({std::to_string(n), std::to_string(a), format_scalar(integral_process.value(n, a))});
  return r;
}

template <Scalar S>
CheckResult run_l1_b(const Json&, const Data<S>& d) {
  d.require();
  const MartingaleClass cls = classify(d.f(), d.F(), d.sp());
  const ClosureReport rep = evaluate_l1_convergence_b(d.f(), d.F(), d.sp());
  CheckResult r;
  r.holds = cls.kind == MartingaleKind::Martingale && rep.holds;
  r.value = to_string(cls.kind);
  r.table = CsvTable({"class", "closure_holds", "witness_n", "witness_atom"});
  r.table.add_row({to_string(cls.kind), format_bool(rep.holds), rep.holds ? "" : std::to_string(rep.n),
                   rep.holds ? "" : std::to_string(rep.atom)});
  if (!rep.holds) r.detail = "f_n != mu[f_horizon | F_n] at (n, atom) = (" + std::to_string(rep.n) + ", " + std::to_string(rep.atom) + ")";
  return r;
}

template <Scalar S>
CheckResult run_levy(const Json& c, const Data<S>& d) {
  d.require();
  const RandomVariable<S> g =
      c.contains("g") ? RandomVariable<S>(scalars_from_json<S>(c.at("g"))) : d.f().at(d.f().horizon());
  if (!is_measurable_wrt(g, filtration_sup(d.F()))) return precondition_failed<S>("g is not measurable at the horizon");
  const auto rep = check_levy_upward(g, d.F(), d.sp());
  CheckResult r;
  r.holds = rep.holds();
  r.table = CsvTable({"n", "distance"});
  for (std::size_t n = 0; n < rep.distance.size(); ++n) r.table.add_row({std::to_string(n), format_scalar(rep.distance[n])});
  r.detail = "nonincreasing " + format_bool(rep.nonincreasing) + ", exact at horizon " + format_bool(rep.exact_at_horizon);
  return r;
}

template <Scalar S>
CheckResult run_ui(const Json& c, const Data<S>& d) {
  d.require();
  FunctionFamily<S> fam{{}, exponent_from_json(c.value("p", Json(1)))};
  for (std::size_t n = 0; n <= d.f().horizon(); ++n) fam.members.push_back(d.f().at(n));
  CheckResult r;
  r.holds = true;
  r.table = CsvTable({"modulus", "argument", "value"});
  std::optional<LpNorm<S>> prev;
  for (const auto& cj : c.value("c_grid", Json::array())) {
    const S C = scalar_from_json<S>(cj);
    const auto m = probabilist_modulus(d.sp(), fam, C);
    if (prev && !norm_le(m, *prev)) r.holds = false;  // nonincreasing in C
    prev = m;
    r.table.add_row({"probabilist", format_scalar(C), format_double(m.to_double())});
  }
  prev.reset();
  for (const auto& dj : c.value("deltas", Json::array())) {
    const S delta = scalar_from_json<S>(dj);
    const auto m = analyst_modulus(d.sp(), fam, delta);
    if (prev && !norm_le(*prev, m)) r.holds = false;  // nondecreasing in delta
    prev = m;
    r.table.add_row({"analyst", format_scalar(delta), format_double(m.to_double())});
  }
  r.detail = "monotone in the argument: " + format_bool(r.holds);
  return r;
}

template <Scalar S>
CheckResult run_ae_diagnostic(const Json& c, const Data<S>& d) {
  d.require();
  DiagnosticOptions<S> o;
  o.cutoff = scalar_from_json<S>(c.at("cutoff"));
  o.bands = bands_from_json<S>(c);
  if (c.contains("ks")) o.ks = c.at("ks").get<std::vector<std::size_t>>();
  if (c.contains("l1_bound")) {
    const Json& b = c.at("l1_bound");
    if (b.is_string() && b.get<std::string>() == "auto") {
      S R(0);
      for (std::size_t n = 0; n <= d.f().horizon(); ++n) R = std::max(R, l1_norm(d.sp(), d.f().at(n)));
      o.l1_bound = R;
    } else {
      o.l1_bound = scalar_from_json<S>(b);
    }
  }
  const auto diag = ae_convergence_diagnostic(d.f(), d.sp(), o);
  CheckResult r;
  r.holds = true;
  r.table = CsvTable({"quantity", "a", "b", "k", "value", "bound"});
  r.table.add_row({"bounded_fraction", "", "", "", format_scalar(diag.bounded_fraction), ""});
  for (const auto& v : diag.band_violations)
    r.table.add_row({"band_violation", format_scalar(v.band.a), format_scalar(v.band.b), std::to_string(v.k),
                     format_scalar(v.fraction), ""});
  for (std::size_t i = 0; i < diag.cauchy_gap.size(); ++i)
    r.table.add_row({"cauchy_gap", "", "", std::to_string(diag.checkpoints[i]) + "-" + std::to_string(diag.checkpoints[i + 1]),
                     format_scalar(diag.cauchy_gap[i]), ""});
  for (const auto& cb : diag.chain_bounds) {
    r.holds = r.holds && cb.holds;
    r.table.add_row({"mean_upcrossings", format_scalar(cb.band.a), format_scalar(cb.band.b), "",
                     format_scalar(cb.mean_upcrossings), format_scalar(cb.bound)});
  }
  r.value = format_scalar(diag.bounded_fraction);
  return r;
}

template <Scalar S>
CheckResult run_fatou(const Json& c, const Data<S>& d) {
  d.require();
  const Exponent p = exponent_from_json(c.value("p", Json(1)));
  const std::size_t tail = c.value("tail_start", d.f().horizon() / 2);
  const RandomVariable<S> g =
      c.contains("g") ? RandomVariable<S>(scalars_from_json<S>(c.at("g"))) : d.f().at(d.f().horizon());
  const S tol = c.contains("tol") ? scalar_from_json<S>(c.at("tol")) : S(0);
  const auto rep = fatou_norm_check(d.f(), g, d.sp(), p, tol, tail);
  CheckResult r;
  r.holds = rep.holds;
  r.lhs = format_double(rep.limit_norm.to_double());
  r.rhs = format_double(rep.liminf_surrogate.to_double());
  r.table = CsvTable({"p", "limit_norm", "tail_infimum", "holds"});
  r.table.add_row({p.format(), r.lhs, r.rhs, format_bool(rep.holds)});
  return r;
}

// --- Monte Carlo checks (float mode only) ------------------------------------

RunConfig run_config(const Json& c, std::uint64_t seed, unsigned threads) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.trials = c.at("trials").get<std::size_t>();
  cfg.horizon = c.at("horizon").get<std::size_t>();
  cfg.threads = threads;
  return cfg;
}

CheckResult run_limit_estimate(const Json& c, std::uint64_t seed, unsigned threads) {
  const TrajectoryModel model = model_from_json(c.at("model"));
  const RunConfig cfg = run_config(c, seed, threads);
  const double tol = c.at("tol").get<double>();
  const std::size_t window = c.at("window").get<std::size_t>();
  if (window > cfg.horizon) throw std::invalid_argument("window exceeds the horizon");
  const double min_fraction = c.value("min_fraction", 0.99);
  const auto osc = map_trajectories(model, cfg, [&](std::size_t, std::span<const double> path) {
    return window_oscillation<double>(path, window);
  });
  std::size_t converged = 0;
  for (double o : osc) converged += o <= tol;
  const double fraction = cfg.trials ? static_cast<double>(converged) / static_cast<double>(cfg.trials) : 1.0;
  CheckResult r;
  r.holds = fraction >= min_fraction;
  r.value = format_double(fraction);
  r.table = CsvTable({"trials", "horizon", "window", "tol", "converged_fraction", "threshold"});
  r.table.add_row({std::to_string(cfg.trials), std::to_string(cfg.horizon), std::to_string(window), format_double(tol),
                   r.value, format_double(min_fraction)});
  return r;
}

CheckResult run_band_decay(const Json& c, std::uint64_t seed, unsigned threads) {
  const TrajectoryModel model = model_from_json(c.at("model"));
  const RunConfig cfg = run_config(c, seed, threads);
  const Band<double> band = band_from_json<double>(c.at("band"));
  const auto ks = c.value("ks", std::vector<std::size_t>{1, 2, 4, 8, 16});
  const auto counts = map_trajectories(model, cfg, [&](std::size_t, std::span<const double> path) {
    const auto f = Process<double>::from_paths({{path.begin(), path.end()}});
    return upcrossings_before_at(band, f, cfg.horizon, 0);
  });
  CheckResult r;
  r.holds = true;
  r.table = CsvTable({"k", "fraction"});
  double prev = -1;
  for (std::size_t k : ks) {
    std::size_t hit = 0;
    for (std::size_t u : counts) hit += u >= k;
    const double fr = cfg.trials ? static_cast<double>(hit) / static_cast<double>(cfg.trials) : 0.0;
    if (prev >= 0 && !(fr <= prev / 2)) r.holds = false;
    prev = fr;
    r.table.add_row({std::to_string(k), format_double(fr)});
  }
  return r;
}

IndependentEvents schedule_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inverse_square")
    return IndependentEvents{[](std::size_t n) { return n == 0 ? Rational(0) : Rational(1, static_cast<long>(n * n)); }};
  if (j.is_string() && j.get<std::string>() == "empty") return IndependentEvents{[](std::size_t) { return Rational(0); }};
  if (j.is_object() && j.contains("constant")) {
    const Rational p = scalar_from_json<Rational>(j.at("constant"));
    if (p < 0 || p > 1) throw std::invalid_argument("event probability outside [0, 1]");
    return IndependentEvents{[p](std::size_t) { return p; }};
  }
  throw std::invalid_argument("schedule must be {\"constant\": p}, \"inverse_square\" or \"empty\"");
}

CheckResult run_bc(const Json& c, std::uint64_t seed, unsigned threads) {
  const IndependentEvents events = schedule_from_json(c.at("schedule"));
  const RunConfig cfg = run_config(c, seed, threads);
  BorelCantelliOptions o;
  o.tail_start = c.value("tail_start", cfg.horizon / 2);
  o.divergence_cut = c.value("divergence_cut", 50.0);
  o.block_size = c.value("block_size", std::size_t{1000});
  const double min_match = c.value("min_match", 0.95);
  const auto rep = check_borel_cantelli(events, cfg, o);
  CheckResult r;
  r.holds = rep.match_fraction >= min_match;
  r.value = format_double(rep.match_fraction);
  r.table = CsvTable({"trial_block", "match_fraction", "p_horizon_mean"});
  for (const auto& b : rep.blocks)
    r.table.add_row({std::to_string(b.trial_block), format_double(b.match_fraction), format_double(b.p_horizon_mean)});
  r.detail = "membership " + format_double(rep.membership_fraction) + ", divergence " + format_double(rep.divergence_fraction);
  return r;
}

// ---------------------------------------------------------------------------

template <Scalar S>
Data<S> load_data(const Json& doc) {
  Data<S> d;
  if (doc.contains("model")) {
    const TrajectoryModel model = model_from_json(doc.at("model"));
    const std::size_t horizon = doc.at("model").at("horizon").get<std::size_t>();
    auto ps = exhaustive_space<S>(model, horizon);
    d.space = std::move(ps.space);
    d.process = std::move(ps.process);
    d.filtration = std::move(ps.filtration);
  } else if (doc.contains("process")) {
    d.process = process_from_json<S>(doc.at("process"));
    const std::size_t n = d.process->atom_count();
    d.space = doc.contains("space") ? space_from_json<S>(doc.at("space")) : FiniteMeasureSpace<S>::uniform(n);
    if (d.space->atom_count() != n) throw std::invalid_argument("space and process have different atom counts");
    d.filtration = doc.contains("filtration") ? filtration_from_json(doc.at("filtration"), n) : natural_filtration(*d.process);
    require_horizon(d.process->horizon(), *d.filtration, "scenario");
  }
  return d;
}

template <Scalar S>
CheckResult dispatch(const std::string& type, const Json& c, const Data<S>& d, std::uint64_t seed, unsigned threads) {
  using Fn = std::function<CheckResult(const Json&, const Data<S>&)>;
  static const std::map<std::string, Fn> exact{
      {"classify", run_classify<S>},
      {"condexp_characterization", run_condexp<S>},
      {"crossing_table", run_crossing_table<S>},
      {"upcrossing_estimate", run_upcrossing_estimate<S>},
      {"upcrossing_estimate_sup", run_upcrossing_estimate_sup<S>},
      {"band_translation", run_band_translation<S>},
      {"maximal_inequality", run_maximal<S>},
      {"optional_stopping", run_optional_stopping<S>},
      {"doob_decomposition", run_doob<S>},
      {"stochastic_integral", run_stochastic_integral<S>},
      {"l1_convergence_b", run_l1_b<S>},
      {"levy_upward", run_levy<S>},
      {"ui_modulus", run_ui<S>},
      {"ae_diagnostic", run_ae_diagnostic<S>},
      {"fatou", run_fatou<S>},
  };
  if (auto it = exact.find(type); it != exact.end()) return it->second(c, d);
  if (type == "limit_estimate") return run_limit_estimate(c, seed, threads);
  if (type == "band_decay") return run_band_decay(c, seed, threads);
  if (type == "borel_cantelli") return run_bc(c, seed, threads);
  throw std::invalid_argument("unknown check type '" + type + "'");
}

std::string safe_name(std::string s) {
  for (char& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  return s.empty() ? "scenario" : s;
}

template <Scalar S>
int run_document(const Json& doc, const std::string& text, const std::string& name, std::uint64_t seed,
                 const std::string& out_dir, unsigned threads, std::ostream& log) {
  Data<S> data;
  try {
    data = load_data<S>(doc);
  } catch (const std::exception& e) {
    const std::size_t line = doc.contains("model") ? line_of_key(text, "model") : line_of_key(text, "process");
    throw ConfigError(line, e.what());
  }

  const Json& checks = doc.at("checks");
  // Validate everything before running anything.
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Json& c = checks[i];
    if (!c.is_object() || !c.contains("type") || !c.at("type").is_string())
      throw ConfigError(check_line(text, i), "check " + std::to_string(i) + " needs a string \"type\"");
    const CheckSpec* spec = find_spec(c.at("type").get<std::string>());
    if (!spec) throw ConfigError(check_line(text, i), "unknown check type '" + c.at("type").get<std::string>() + "'");
    if (spec->monte_carlo && is_exact_v<S>)
      throw ConfigError(check_line(text, i), std::string("check '") + spec->type + "' is Monte Carlo and needs mode \"float\"");
  }

  std::filesystem::create_directories(out_dir);
  CsvTable summary({"index", "check", "holds", "value", "lhs", "rhs", "detail", "csv"});
  bool all = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Json& c = checks[i];
    const std::string type = c.at("type").get<std::string>();
    CheckResult r;
    try {
      r = dispatch<S>(type, c, data, seed, threads);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(check_line(text, i), "check " + std::to_string(i) + " (" + type + "): " + e.what());
    }
    const std::string file = name + "_" + std::to_string(i) + "_" + type + ".csv";
    r.table.write((std::filesystem::path(out_dir) / file).string());
    summary.add_row({std::to_string(i), type, format_bool(r.holds), r.value, r.lhs, r.rhs, r.detail, file});
    log << (r.holds ? "PASS " : "FAIL ") << name << " #" << i << " " << type;
    if (!r.detail.empty()) log << ": " << r.detail;
    log << "\n";
    all = all && r.holds;
  }
  summary.write((std::filesystem::path(out_dir) / (name + "_summary.csv")).string());
  return all ? kOk : kCheckFailed;
}

}  // namespace

TrajectoryModel model_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  const auto q = [&](const char* key, const char* fallback) {
    return j.contains(key) ? scalar_from_json<Rational>(j.at(key)) : parse_scalar<Rational>(fallback);
  };
  TrajectoryModel m;
  if (type == "fair_walk") {
    m = FairWalk{q("step", "1")};
  } else if (type == "biased_walk") {
    m = BiasedWalk{q("p_up", "1/2"), q("step", "1")};
  } else if (type == "polya_urn") {
    m = PolyaUrn{j.value("red", 1u), j.value("black", 1u)};
  } else if (type == "betting") {
    const std::string rule = j.value("rule", std::string("constant"));
    StakeRule r = StakeRule::Constant;
    if (rule == "doubling") r = StakeRule::Doubling;
    else if (rule == "proportional") r = StakeRule::Proportional;
    else if (rule != "constant") throw std::invalid_argument("unknown stake rule '" + rule + "'");
    m = BettingProcess{q("p_win", "1/2"), r, q("stake", "1"), q("initial_wealth", "0")};
  } else if (type == "independent") {
    m = schedule_from_json(j.at("schedule"));
  } else {
    throw std::invalid_argument("unknown model type '" + type + "'");
  }
  validate_model(m);
  return m;
}

std::string check_catalogue() {
  std::string out;
  for (const auto& s : check_specs()) {
    out += "  ";
    out += s.type;
    out += s.monte_carlo ? " [float only]: " : ": ";
    out += s.help;
    out += "\n";
  }
  return out;
}

int run_scenario_text(const std::string& text, const std::string& origin, const std::string& out_dir,
                      const ScenarioOverrides& overrides, std::ostream& log) {
  try {
    Json doc;
    try {
      doc = parse_json_document(text);
    } catch (const InputError& e) {
      std::string what = e.what();
      const std::string prefix = "line " + std::to_string(e.line()) + ": ";
      if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
      throw ConfigError(e.line(), what);
    }
    if (!doc.is_object()) throw ConfigError(1, "scenario must be a JSON object");
    static const std::set<std::string> known{"name", "mode", "seed", "model", "space", "process", "filtration", "checks",
                                             "description"};
    for (const auto& [key, value] : doc.items())
      if (!known.count(key)) throw ConfigError(line_of_key(text, key), "unknown field '" + key + "'");
    if (!doc.contains("checks") || !doc.at("checks").is_array())
      throw ConfigError(line_of_key(text, "checks"), "scenario needs a \"checks\" array");
    const std::string name = safe_name(doc.value("name", std::filesystem::path(origin).stem().string()));
    const std::string mode = overrides.mode ? *overrides.mode : doc.value("mode", std::string("exact"));
    std::uint64_t seed = 42;
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned()) throw ConfigError(line_of_key(text, "seed"), "seed must be a natural number");
      seed = doc.at("seed").get<std::uint64_t>();
    }
    if (overrides.seed) seed = *overrides.seed;
    if (mode == "exact") return run_document<Rational>(doc, text, name, seed, out_dir, overrides.threads, log);
    if (mode == "float") return run_document<double>(doc, text, name, seed, out_dir, overrides.threads, log);
    throw ConfigError(line_of_key(text, "mode"), "mode must be \"exact\" or \"float\"");
  } catch (const ConfigError& e) {
    log << origin << ":" << (e.line ? std::to_string(e.line) + ":" : std::string()) << " error: " << e.what() << "\n";
    return kConfigError;
  }
}

int run_scenario_file(const std::string& path, const std::string& out_dir, const ScenarioOverrides& overrides,
                      std::ostream& log) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    log << path << ": error: " << e.what() << "\n";
    return kConfigError;
  }
  return run_scenario_text(text, path, out_dir, overrides, log);
}

}  // namespace mgale::cli
