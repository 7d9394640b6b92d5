#include "common.hpp"

using namespace mgale;
using namespace testing_util;

namespace {

/// Three fair coin flips; S_n = {flip n is heads}, flip n read off bit (3 - n) of the atom.
EventSequence coin_events() {
  const auto f = oracle_walk_process(3);
  const auto F = natural_filtration(f);
  std::vector<AtomSet> sets{AtomSet(8)};
  for (std::size_t n = 1; n <= 3; ++n) {
    AtomSet s(8);
    for (Atom a = 0; a < 8; ++a)
      if (f.value(n, a) > f.value(n - 1, a)) s.insert(a);
    sets.push_back(s);
  }
  return EventSequence(sets, F);
}

}  // namespace

TEST(BorelCantelli, EmptyEventsGiveZero) {
  const auto F = natural_filtration(oracle_walk_process(3));
  const EventSequence s(std::vector<AtomSet>(4, AtomSet(8)), F);
  const auto p = predictable_sum(s, uniform(8));
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(p.at(n).values, std::vector<Q>(8, Q(0)));
}

TEST(BorelCantelli, WholeSpaceCountsSteps) {
  const auto F = natural_filtration(oracle_walk_process(3));
  AtomSet all(8);
  for (Atom a = 0; a < 8; ++a) all.insert(a);
  const EventSequence s(std::vector<AtomSet>(4, all), F);
  const auto p = predictable_sum(s, uniform(8));
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(p.at(n).values, std::vector<Q>(8, Q(static_cast<long>(n))));
  EXPECT_EQ(event_count<Q>(s, 8), p);
}

TEST(BorelCantelli, FairCoinHalves) {
  const auto s = coin_events();
  const auto p = predictable_sum(s, uniform(8));
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(p.at(n).values, std::vector<Q>(8, Q(static_cast<long>(n), 2)));
  const auto m = borel_cantelli_martingale(s, uniform(8));
  EXPECT_EQ(classify(m, s.filtration, uniform(8)).kind, MartingaleKind::Martingale);
  EXPECT_EQ(m, event_count<Q>(s, 8) - p);
}

TEST(BorelCantelli, MartingalePartOfTheCount) {
  gen::Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + gen::below(rng, 10);
    const auto sp = gen::space<Q>(rng, n);
    const auto F = gen::filtration(rng, n, 1 + gen::below(rng, 4));
    std::vector<AtomSet> sets{AtomSet(n)};
    for (std::size_t k = 1; k <= F.horizon(); ++k) {
      const auto ind = gen::measurable<Q>(rng, F.step(k), 0, 1, 1);
      AtomSet s(n);
      for (Atom a = 0; a < n; ++a)
        if (ind[a] == Q(1)) s.insert(a);
      sets.push_back(s);
    }
    const EventSequence s(sets, F);
    const auto m = borel_cantelli_martingale(s, sp);
    const auto count = event_count<Q>(s, n);
    EXPECT_EQ(classify(m, F, sp).kind, MartingaleKind::Martingale);
    const auto d = doob_decomposition(count, F, sp);
    for (std::size_t k = 0; k <= F.horizon(); ++k)
      for (Atom a = 0; a < n; ++a)
        if (sp.charges(a)) {
          EXPECT_EQ(d.martingale_part.value(k, a), m.value(k, a));
        }
  }
}

TEST(BorelCantelli, RejectsNonAdaptedEvents) {
  const auto F = natural_filtration(oracle_walk_process(2));
  std::vector<AtomSet> sets(3, AtomSet(4));
  sets[1].insert(0);  // F_1 only sees the first step
  EXPECT_THROW(predictable_sum(EventSequence(sets, F), uniform(4)), std::invalid_argument);
  EXPECT_THROW(EventSequence(std::vector<AtomSet>(2, AtomSet(4)), F), std::invalid_argument);
}

TEST(BorelCantelliMonteCarlo, ConstantHalfAlwaysMatches) {
  const IndependentEvents ev{[](std::size_t) { return Rational(1, 2); }};
  const auto rep = check_borel_cantelli(ev, RunConfig{7, 2000, 1000, {}, 1}, {});
  EXPECT_DOUBLE_EQ(rep.p_horizon_mean, 500.0);
  EXPECT_EQ(rep.divergence_fraction, 1.0);
  EXPECT_GE(rep.match_fraction, 0.999);
}

TEST(BorelCantelliMonteCarlo, InverseSquareMostlyMatches) {
  const IndependentEvents ev{[](std::size_t n) { return n == 0 ? Rational(0) : Rational(1, static_cast<long>(n * n)); }};
  const auto rep = check_borel_cantelli(ev, RunConfig{7, 5000, 1000, {}, 1}, {});
  EXPECT_LT(rep.p_horizon_mean, 1.65);
  EXPECT_EQ(rep.divergence_fraction, 0.0);
  // mu{some S_n, 100 <= n <= 1000} is about sum 1/n^2 over that range, near 0.009
  EXPECT_GE(rep.match_fraction, 0.95);
}

TEST(BorelCantelliMonteCarlo, EmptySequence) {
  const IndependentEvents ev{[](std::size_t) { return Rational(0); }};
  const auto rep = check_borel_cantelli(ev, RunConfig{1, 500, 200, {}, 1}, {});
  EXPECT_EQ(rep.match_fraction, 1.0);
  EXPECT_EQ(rep.membership_fraction, 0.0);
}

TEST(BorelCantelliMonteCarlo, Validation) {
  const IndependentEvents ev{[](std::size_t) { return Rational(1, 2); }};
  EXPECT_THROW(check_borel_cantelli(ev, RunConfig{1, 10, 50, {}, 1}, {}), std::invalid_argument);
  BorelCantelliOptions o;
  o.block_size = 0;
  EXPECT_THROW(check_borel_cantelli(ev, RunConfig{1, 10, 200, {}, 1}, o), std::invalid_argument);
}
