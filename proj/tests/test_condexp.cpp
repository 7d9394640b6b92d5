#include "common.hpp"

using namespace mgale;
using namespace testing_util;

namespace {

CondexpInput<Q> pairs_input(const RandomVariable<Q>& f) {
  return CondexpInput<Q>(uniform(4), blocks(4, {{0, 1}, {2, 3}}), f);
}

}  // namespace

TEST(Condexp, TrivialSubGivesMean) {
  const auto sp = uniform(4);
  const auto f = rv({1, 3, 5, 7});
  const auto ce = condexp(CondexpInput<Q>(sp, Partition::trivial(4), f));
  for (Atom a = 0; a < 4; ++a) EXPECT_EQ(ce[a], Q(4));
}

TEST(Condexp, MeasurableInputReturnedUnchanged) {
  const auto f = rv({2, 2, 9, 9});
  EXPECT_EQ(condexp(pairs_input(f)).values, f.values);
  const RandomVariable<double> g({0.1, 0.1, 0.7, 0.7});
  const auto out = condexp(CondexpInput<double>(FiniteMeasureSpace<double>::uniform(4), blocks(4, {{0, 1}, {2, 3}}), g));
  for (Atom a = 0; a < 4; ++a) EXPECT_EQ(std::bit_cast<std::uint64_t>(out[a]), std::bit_cast<std::uint64_t>(g[a]));
}

TEST(Condexp, BlockAverages) {
  EXPECT_EQ(condexp(pairs_input(rv({1, 3, 5, 7}))).values, qi({2, 2, 6, 6}));
}

TEST(Condexp, SubNotCoarserThanAmbientGivesZero) {
  const auto in = CondexpInput<Q>(uniform(4), blocks(4, {{0, 1}, {2, 3}}), Partition::singletons(4), rv({2, 2, 9, 9}));
  EXPECT_EQ(condexp(in).values, qi({0, 0, 0, 0}));
}

TEST(CondexpL2, MatchesBlockAverages) {
  EXPECT_EQ(condexp_l2(pairs_input(rv({1, 3, 5, 7}))).values, qi({2, 2, 6, 6}));
  EXPECT_EQ(condexp_l2(pairs_input(rv({2, 2, 9, 9}))).values, qi({2, 2, 9, 9}));
}

TEST(CondexpL2, NullBlockCoefficientIsZero) {
  const FiniteMeasureSpace<Q> sp(qi({1, 1, 0, 0}));
  const auto in = CondexpInput<Q>(sp, blocks(4, {{0, 1}, {2, 3}}), rv({1, 3, 5, 7}));
  EXPECT_EQ(condexp_l2(in).values, qi({2, 2, 0, 0}));
  EXPECT_TRUE(ae_equal(sp, condexp_l2(in), condexp(in)));
}

TEST(CondexpL2, RequiresCoarserSub) {
  const auto in = CondexpInput<Q>(uniform(4), blocks(4, {{0, 1}, {2, 3}}), Partition::singletons(4), rv({2, 2, 9, 9}));
  EXPECT_THROW(condexp_l2(in), std::invalid_argument);
  EXPECT_THROW(check_set_integral_characterization(in), std::invalid_argument);
}

TEST(Characterization, Examples) {
  const auto in = pairs_input(rv({1, 3, 5, 7}));
  const auto ce = condexp(in);
  EXPECT_EQ(set_integral(in.space, ce, AtomSet(4, {0, 1})), Q(1));
  EXPECT_EQ(set_integral(in.space, in.f, AtomSet(4, {0, 1})), Q(1));
  EXPECT_EQ(integral(in.space, ce), integral(in.space, in.f));
  EXPECT_TRUE(check_set_integral_characterization(in).holds);
  EXPECT_TRUE(check_set_integral_characterization(CondexpInput<Q>(uniform(4), Partition::trivial(4), rv({9, -1, 0, 2}))).holds);
}

TEST(Condexp, AgreesWithPairwiseOracleOnRandomInstances) {
  gen::Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + gen::below(rng, 16);
    const auto sp = gen::space<Q>(rng, n, 2);
    const auto sub = gen::partition(rng, n, 1 + gen::below(rng, n));
    const auto f = gen::random_variable<Q>(rng, n);
    const auto want = oracle::condexp({sp.weights().begin(), sp.weights().end()}, f.values, labels(sub));
    const auto got = condexp(CondexpInput<Q>(sp, sub, f));
    const auto got_l2 = condexp_l2(CondexpInput<Q>(sp, sub, f));
    for (Atom a = 0; a < n; ++a) {
      if (!sp.charges(a)) continue;
      ASSERT_EQ(got[a], want[a]) << "instance " << i << " atom " << a;
      ASSERT_EQ(got_l2[a], want[a]) << "instance " << i << " atom " << a;
    }
  }
}

TEST(CondexpProperties, LinearityTowerMonotonicity) {
  gen::Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto sp = gen::space<Q>(rng, 8);
    const auto fine = gen::partition(rng, 8, 5);
    const auto coarse = gen::coarsen(rng, fine);
    const auto f = gen::random_variable<Q>(rng, 8);
    auto g = f;
    for (Atom a = 0; a < 8; ++a) g[a] += gen::rational<Q>(rng, 5, 3, true);
    const auto rep = condexp_properties(sp, f, g, gen::rational<Q>(rng, 5, 4), gen::rational<Q>(rng, 5, 4), fine, coarse);
    EXPECT_TRUE(rep.linearity);
    EXPECT_TRUE(rep.tower);
    EXPECT_TRUE(rep.monotonicity_applicable);
    EXPECT_TRUE(rep.monotonicity);
  }
}

TEST(CondexpProperties, TowerWithSingletonFine) {
  const auto rep = condexp_properties(uniform(4), rv({1, 3, 5, 7}), rv({0, 0, 0, 0}), Q(1), Q(0),
                                      Partition::singletons(4), blocks(4, {{0, 1}, {2, 3}}));
  EXPECT_TRUE(rep.holds());
  EXPECT_THROW(condexp_properties(uniform(4), rv({1, 3, 5, 7}), rv({0, 0, 0, 0}), Q(1), Q(0), Partition::trivial(4),
                                  Partition::singletons(4)),
               std::invalid_argument);
}
