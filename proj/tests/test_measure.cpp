#include "common.hpp"

using namespace mgale;
using namespace testing_util;

TEST(Scalar, ParsesFractionsDecimalsAndSigns) {
  EXPECT_EQ(parse_scalar<Q>("1/2"), Q(1, 2));
  EXPECT_EQ(parse_scalar<Q>("-0.2"), Q(-1, 5));
  EXPECT_EQ(parse_scalar<Q>("08"), Q(8));
  EXPECT_EQ(parse_scalar<Q>("-3/09"), Q(-1, 3));
  EXPECT_EQ(parse_scalar<Q>("1.50"), Q(3, 2));
  EXPECT_THROW(parse_scalar<Q>("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_scalar<Q>("abc"), std::invalid_argument);
  EXPECT_THROW(parse_scalar<Q>(""), std::invalid_argument);
  EXPECT_DOUBLE_EQ(parse_scalar<double>("0.25"), 0.25);
}

TEST(Scalar, FormatsRationalsAsFractions) {
  EXPECT_EQ(format_scalar(Q(3, 4)), "3/4");
  EXPECT_EQ(format_scalar(Q(-2)), "-2");
}

TEST(Measure, UniformHalf) {
  const auto sp = uniform(4);
  EXPECT_EQ(measure(sp, AtomSet(4, {0, 1})), Q(1, 2));
  EXPECT_EQ(measure(sp, AtomSet(4)), Q(0));
}

TEST(Measure, WeightedSum) {
  const FiniteMeasureSpace<Q> sp(qs({"0.1", "0.2", "0.3", "0.4"}));
  EXPECT_EQ(measure(sp, AtomSet(4, {1, 3})), Q(3, 5));
}

TEST(Measure, RejectsNegativeWeights) {
  EXPECT_THROW(FiniteMeasureSpace<Q>(qi({1, -1})), std::invalid_argument);
}

TEST(Integral, Examples) {
  const auto sp = uniform(4);
  EXPECT_EQ(integral(sp, rv({1, 1, 1, 1})), Q(1));
  EXPECT_EQ(integral(sp, rv({1, 3, 5, 7})), Q(4));
  EXPECT_EQ(integral(sp, rv({0, 0, 0, 0})), Q(0));
}

TEST(SetIntegral, Examples) {
  const auto sp = uniform(4);
  const auto f = rv({1, 3, 5, 7});
  EXPECT_EQ(set_integral(sp, f, AtomSet::full(4)), integral(sp, f));
  EXPECT_EQ(set_integral(sp, f, AtomSet(4)), Q(0));
  EXPECT_EQ(set_integral(sp, f, AtomSet(4, {0, 1})), Q(1));
}

TEST(Snorm, ConstantOnProbabilitySpace) {
  const auto sp = uniform(3);
  for (double p : {1.0, 2.0, 5.0}) {
    const auto n = snorm(sp, rv({-3, -3, -3}), Exponent::finite(p));
    EXPECT_NEAR(n.to_double(), 3.0, 1e-12);
  }
  EXPECT_EQ(snorm(sp, rv({-3, -3, -3}), Exponent::infinity()).base, Q(3));
}

TEST(Snorm, PythagoreanTriple) {
  const FiniteMeasureSpace<Q> sp(qi({1, 1}));
  const auto n = snorm(sp, rv({3, 4}), Exponent::finite(2));
  EXPECT_EQ(n.base, Q(25));  // p-th power kept exactly
  EXPECT_DOUBLE_EQ(n.to_double(), 5.0);
}

TEST(Snorm, EssentialSupIgnoresNullAtoms) {
  const FiniteMeasureSpace<Q> sp(qi({1, 0}));
  EXPECT_EQ(snorm(sp, rv({-2, 7}), Exponent::infinity()).base, Q(2));
}

TEST(Snorm, ExactModeNeedsIntegralExponent) {
  EXPECT_THROW(snorm(uniform(2), rv({1, 2}), Exponent::finite(1.5)), std::invalid_argument);
  EXPECT_NO_THROW(snorm(FiniteMeasureSpace<double>::uniform(2), RandomVariable<double>(std::vector<double>{1.0, 2.0}), Exponent::finite(1.5)));
}

TEST(Partition, JoinAndMeet) {
  const auto P = blocks(4, {{0, 1}, {2, 3}});
  const auto R = blocks(4, {{0, 2}, {1, 3}});
  EXPECT_EQ(labels(partition_join(Partition::trivial(4), P)), labels(P));
  EXPECT_EQ(partition_join(P, R).block_count(), 4u);
  EXPECT_EQ(labels(partition_meet(P, P)), labels(P));
  EXPECT_EQ(partition_meet(P, R).block_count(), 1u);
}

TEST(Partition, OrderMeansRefinement) {
  const auto P = blocks(4, {{0, 1}, {2, 3}});
  EXPECT_TRUE(partition_le(Partition::trivial(4), P));
  EXPECT_TRUE(partition_le(P, Partition::singletons(4)));
  EXPECT_FALSE(partition_le(P, Partition::trivial(4)));
  EXPECT_FALSE(partition_le(P, blocks(4, {{0, 2}, {1, 3}})));
}

TEST(Partition, RejectsOverlapsAndGaps) {
  EXPECT_THROW(blocks(3, {{0, 1}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(blocks(3, {{0, 1}}), std::invalid_argument);
}

TEST(Partition, LatticeLawsOnRandomPartitions) {
  gen::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + gen::below(rng, 10);
    const auto p = gen::partition(rng, n, 4);
    const auto q = gen::partition(rng, n, 4);
    const auto j = partition_join(p, q);
    const auto m = partition_meet(p, q);
    EXPECT_TRUE(partition_le(p, j) && partition_le(q, j));
    EXPECT_TRUE(partition_le(m, p) && partition_le(m, q));
    EXPECT_EQ(labels(partition_join(p, q)), labels(partition_join(q, p)));
  }
}

TEST(GeneratedPartition, Examples) {
  EXPECT_EQ(generated_partition(rv({4, 4, 4})).block_count(), 1u);
  EXPECT_EQ(generated_partition(rv({1, 2, 3})).block_count(), 3u);
  EXPECT_EQ(labels(generated_partition(rv({1, 1, 2, 2}))), labels(blocks(4, {{0, 1}, {2, 3}})));
}

TEST(Measurability, Examples) {
  EXPECT_TRUE(is_measurable_wrt(rv({1, 5, 2}), Partition::singletons(3)));
  EXPECT_FALSE(is_measurable_wrt(rv({1, 5, 2}), Partition::trivial(3)));
  EXPECT_TRUE(is_measurable_wrt(rv({2, 2, 9, 9}), blocks(4, {{0, 1}, {2, 3}})));
  EXPECT_TRUE(set_measurable_wrt(AtomSet(4, {2, 3}), blocks(4, {{0, 1}, {2, 3}})));
  EXPECT_FALSE(set_measurable_wrt(AtomSet(4, {1, 2}), blocks(4, {{0, 1}, {2, 3}})));
}

TEST(Measure, FloatModeMatchesExactWithinTolerance) {
  gen::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto sp = gen::space<Q>(rng, 8);
    const auto f = gen::random_variable<Q>(rng, 8);
    std::vector<double> w, fv;
    for (Atom a = 0; a < 8; ++a) {
      w.push_back(to_double(sp.weight(a)));
      fv.push_back(to_double(f[a]));
    }
    const double approx = integral(FiniteMeasureSpace<double>(w), RandomVariable<double>(fv));
    EXPECT_NEAR(approx, to_double(integral(sp, f)), 1e-9);
  }
}
