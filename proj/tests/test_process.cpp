#include "common.hpp"

using namespace mgale;
using namespace testing_util;

namespace {

/// Two fair coin flips on atoms 00, 01, 10, 11; coordinate process X_n = flip n (X_0 = 0).
Process<Q> coordinates() {
  return Process<Q>::from_paths({qi({0, 0, 0}), qi({0, 0, 1}), qi({0, 1, 0}), qi({0, 1, 1})});
}

Process<Q> walk_plus_drift(std::size_t H) {
  Process<Q> f = oracle_walk_process(H);
  for (std::size_t n = 0; n <= H; ++n)
    for (Atom a = 0; a < f.atom_count(); ++a) f.value(n, a) += Q(static_cast<long>(n));
  return f;
}

}  // namespace

TEST(Filtration, SupIsLastStep) {
  const auto P = blocks(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(labels(filtration_sup(Filtration({P, P, P}))), labels(P));
  EXPECT_EQ(filtration_sup(Filtration({Partition::trivial(4), P, Partition::singletons(4)})).block_count(), 4u);
  EXPECT_EQ(labels(filtration_sup(Filtration({Partition::trivial(4), P}))), labels(P));
}

TEST(Filtration, RejectsCoarseningSteps) {
  const auto P = blocks(4, {{0, 1}, {2, 3}});
  EXPECT_THROW(Filtration({P, Partition::trivial(4)}), std::invalid_argument);
  EXPECT_THROW(Filtration({Partition::singletons(4)}, P), std::invalid_argument);
}

TEST(NaturalFiltration, ConstantProcessIsTrivial) {
  const Process<Q> f(3, 4, Q(5));
  for (const auto& p : natural_filtration(f).steps()) EXPECT_EQ(p.block_count(), 1u);
}

TEST(NaturalFiltration, CoinCoordinates) {
  const auto F = natural_filtration(coordinates());
  EXPECT_EQ(F.step(0).block_count(), 1u);
  EXPECT_EQ(labels(F.step(1)), labels(blocks(4, {{0, 1}, {2, 3}})));
  EXPECT_EQ(F.step(2).block_count(), 4u);
  EXPECT_TRUE(is_adapted(coordinates(), F));
}

TEST(Adapted, ConstantProcessAdaptedAndPredictable) {
  const Process<Q> c(2, 4, Q(1, 3));
  const auto F = natural_filtration(coordinates());
  EXPECT_TRUE(is_adapted(c, F));
  EXPECT_TRUE(is_predictable(c, F));
}

TEST(Adapted, ShiftedProcessIsPredictable) {
  const auto f = coordinates();
  const auto F = natural_filtration(f);
  Process<Q> c(2, 4, Q(0));
  for (std::size_t n = 1; n <= 2; ++n) c.at(n) = f.at(n - 1);
  EXPECT_TRUE(is_predictable(c, F));
  EXPECT_FALSE(is_predictable(f, F));
}

TEST(Classify, FairWalkIsMartingale) {
  const auto f = oracle_walk_process(2);
  const auto cls = classify(f, natural_filtration(f), uniform(4));
  EXPECT_EQ(cls.kind, MartingaleKind::Martingale);
  EXPECT_FALSE(cls.witness.has_value());
}

TEST(Classify, DriftMakesSubmartingale) {
  const auto f = walk_plus_drift(3);
  const auto F = natural_filtration(f);
  const auto cls = classify(f, F, uniform(8));
  EXPECT_EQ(cls.kind, MartingaleKind::Submartingale);
  ASSERT_TRUE(cls.witness.has_value());
  EXPECT_EQ(cls.witness->i, 0u);
  EXPECT_EQ(cls.witness->j, 1u);
  // mu[f_j | F_i] exceeds f_i by exactly j - i.
  for (std::size_t i = 0; i <= 3; ++i)
    for (std::size_t j = i; j <= 3; ++j) {
      const auto gap = condexp(uniform(8), f.at(j), F.step(i)) - f.at(i);
      for (Atom a = 0; a < 8; ++a) EXPECT_EQ(gap[a], Q(static_cast<long>(j - i)));
    }
}

TEST(Classify, ConstantIsMartingale) {
  const Process<Q> c(3, 2, Q(7));
  EXPECT_EQ(classify(c, natural_filtration(c), uniform(2)).kind, MartingaleKind::Martingale);
}

TEST(Classify, NonAdaptedReportsWitness) {
  const auto f = coordinates();
  const Filtration trivial({Partition::trivial(4), Partition::trivial(4), Partition::trivial(4)});
  const auto cls = classify(f, trivial, uniform(4));
  EXPECT_EQ(cls.kind, MartingaleKind::None);
  ASSERT_TRUE(cls.witness.has_value());
  EXPECT_TRUE(cls.witness->adaptedness_failure);
}

TEST(Classify, ConsecutiveAgreesWithAllPairs) {
  gen::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto sp = gen::space<Q>(rng, 6);
    const auto F = gen::filtration(rng, 6, 3);
    const auto f = gen::coin(rng, 1, 2) ? gen::martingale<Q>(rng, sp, F) : gen::submartingale<Q>(rng, sp, F);
    EXPECT_EQ(classify(f, F, sp).kind, classify_consecutive(f, F, sp).kind);
  }
}

TEST(StochasticIntegral, UnitWeightsTelescoping) {
  const auto f = oracle_walk_process(3);
  const auto out = stochastic_integral(Process<Q>(3, 8, Q(1)), f);
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(out.at(n), f.at(n) - f.at(0));
  EXPECT_EQ(integral(uniform(8), out.at(3)), integral(uniform(8), f.at(3)) - integral(uniform(8), f.at(0)));
}

TEST(StochasticIntegral, ZeroWeights) {
  const auto out = stochastic_integral(Process<Q>(3, 8, Q(0)), oracle_walk_process(3));
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(out.at(n).values, std::vector<Q>(8, Q(0)));
}

TEST(StochasticIntegral, PrefixSum) {
  const auto f = Process<Q>::from_paths({qi({0, 1, 0})});
  const auto c = Process<Q>::from_paths({qi({9, 2, 3})});
  EXPECT_EQ(stochastic_integral(c, f).path(0), qi({0, 2, -1}));
}

TEST(StochasticIntegral, PreservesSubmartingalesOnRandomInstances) {
  gen::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + gen::below(rng, 10);
    const auto sp = gen::space<Q>(rng, n);
    const auto F = gen::filtration(rng, n, 1 + gen::below(rng, 5));
    const auto f = gen::submartingale<Q>(rng, sp, F);
    const auto c = gen::predictable<Q>(rng, F, 4);
    EXPECT_TRUE(classify(stochastic_integral(c, f), F, sp).is_submartingale()) << "instance " << i;
  }
}

TEST(Doob, MartingaleHasZeroPredictablePart) {
  const auto f = oracle_walk_process(3);
  const auto d = doob_decomposition(f, natural_filtration(f), uniform(8));
  EXPECT_EQ(d.martingale_part, f);
  EXPECT_EQ(d.predictable_part, Process<Q>(3, 8, Q(0)));
}

TEST(Doob, WalkPlusDrift) {
  const auto f = walk_plus_drift(3);
  const auto d = doob_decomposition(f, natural_filtration(f), uniform(8));
  EXPECT_EQ(d.martingale_part, oracle_walk_process(3));
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(d.predictable_part.at(n).values, std::vector<Q>(8, Q(static_cast<long>(n))));
}

TEST(Doob, RandomInstances) {
  gen::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + gen::below(rng, 10);
    const auto sp = gen::space<Q>(rng, n);
    const auto F = gen::filtration(rng, n, 1 + gen::below(rng, 5));
    const auto f = gen::submartingale<Q>(rng, sp, F);
    const auto d = doob_decomposition(f, F, sp);
    EXPECT_EQ(d.martingale_part + d.predictable_part, f);
    EXPECT_EQ(classify(d.martingale_part, F, sp).kind, MartingaleKind::Martingale);
    EXPECT_TRUE(is_predictable(d.predictable_part, F));
    for (std::size_t k = 0; k < F.horizon(); ++k)
      for (Atom a = 0; a < n; ++a)
        if (sp.charges(a)) {
          EXPECT_LE(d.predictable_part.value(k, a), d.predictable_part.value(k + 1, a));
        }
  }
}

TEST(Doob, RejectsNonAdapted) {
  const Filtration trivial({Partition::trivial(4), Partition::trivial(4), Partition::trivial(4)});
  EXPECT_THROW(doob_decomposition(coordinates(), trivial, uniform(4)), std::invalid_argument);
}
