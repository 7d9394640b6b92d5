#include "common.hpp"

#include <algorithm>
#include <cmath>

using namespace mgale;
using namespace testing_util;

TEST(Exhaustive, FairWalkTwoSteps) {
  const auto ps = exhaustive_space<Q>(FairWalk{}, 2);
  EXPECT_EQ(ps.process.at(0).values, qi({0, 0, 0, 0}));
  EXPECT_EQ(ps.process.at(1).values, qi({1, 1, -1, -1}));
  EXPECT_EQ(ps.process.at(2).values, qi({2, 0, 0, -2}));
  EXPECT_EQ(std::vector<Q>(ps.space.weights().begin(), ps.space.weights().end()), qs({"1/4", "1/4", "1/4", "1/4"}));
  EXPECT_EQ(ps.process, oracle_walk_process(2));
}

TEST(Exhaustive, HorizonZeroIsOneAtom) {
  const auto ps = exhaustive_space<Q>(FairWalk{}, 0);
  EXPECT_EQ(ps.space.atom_count(), 1u);
  EXPECT_EQ(ps.space.weight(0), Q(1));
  EXPECT_EQ(ps.process.at(0)[0], Q(0));
}

TEST(Exhaustive, CertainUpStepsKeepZeroWeightAtoms) {
  const auto ps = exhaustive_space<Q>(BiasedWalk{Rational(1)}, 3);
  ASSERT_EQ(ps.space.atom_count(), 8u);
  EXPECT_EQ(ps.space.weight(0), Q(1));
  for (Atom a = 1; a < 8; ++a) EXPECT_EQ(ps.space.weight(a), Q(0));
  EXPECT_EQ(ps.process.path(0), qi({0, 1, 2, 3}));
}

TEST(Exhaustive, BiasedWeightsMatchOracle) {
  const Q p(2, 3);
  const std::size_t H = 5;
  const auto ps = exhaustive_space<Q>(BiasedWalk{p}, H);
  const auto paths = oracle::walk_paths(H);
  for (Atom a = 0; a < ps.space.atom_count(); ++a) {
    EXPECT_EQ(ps.process.path(a), paths[a]);
    // oracle weights read the bits from the low end; reverse the index
    std::uint64_t rev = 0;
    for (std::size_t k = 0; k < H; ++k) rev |= ((a >> k) & 1u) << (H - 1 - k);
    EXPECT_EQ(ps.space.weight(a), oracle::walk_weight(rev, H, p));
  }
}

TEST(Exhaustive, PolyaUrnIsMartingale) {
  const auto ps = exhaustive_space<Q>(PolyaUrn{}, 6);
  EXPECT_EQ(classify(ps.process, ps.filtration, ps.space).kind, MartingaleKind::Martingale);
  EXPECT_EQ(integral(ps.space, ps.process.at(6)), Q(1, 2));
}

TEST(Exhaustive, AtomCap) {
  EXPECT_THROW(exhaustive_space<Q>(FairWalk{}, 20), std::length_error);
  EXPECT_NO_THROW(exhaustive_space<Q>(FairWalk{}, 4, 16));
}

TEST(Exhaustive, RejectsBadProbabilities) {
  EXPECT_THROW(exhaustive_space<Q>(BiasedWalk{Rational(3, 2)}, 2), std::invalid_argument);
}

TEST(Simulate, SameSeedSameBatch) {
  const RunConfig cfg{11, 50, 40, {}, 1};
  EXPECT_EQ(simulate(FairWalk{}, cfg).values, simulate(FairWalk{}, cfg).values);
  RunConfig other = cfg;
  other.seed = 12;
  EXPECT_NE(simulate(FairWalk{}, cfg).values, simulate(FairWalk{}, other).values);
}

TEST(Simulate, ThreadCountDoesNotChangeResults) {
  const TrajectoryModel models[] = {FairWalk{}, PolyaUrn{2, 3}, BettingProcess{Rational(1, 2), StakeRule::Doubling}};
  for (const auto& m : models) {
    RunConfig one{5, 257, 64, {}, 1};
    RunConfig many = one;
    many.threads = 7;
    EXPECT_EQ(simulate(m, one).values, simulate(m, many).values) << model_name(m);
  }
}

TEST(Simulate, FairWalkMeanWithinFourSigma) {
  const std::size_t trials = 100000, H = 100;
  const auto batch = simulate(FairWalk{}, RunConfig{3, trials, H, {}, 0});
  double sum = 0;
  for (std::size_t t = 0; t < trials; ++t) sum += batch.at(t, H);
  const double sigma = std::sqrt(static_cast<double>(H) / static_cast<double>(trials));
  EXPECT_LE(std::abs(sum / static_cast<double>(trials)), 4 * sigma);
}

TEST(Simulate, PolyaLimitIsUniform) {
  const std::size_t trials = 100000, H = 1000;
  const auto finals = map_trajectories(PolyaUrn{}, RunConfig{9, trials, H, {}, 0},
                                       [](std::size_t, std::span<const double> p) { return p.back(); });
  std::vector<double> xs(finals.begin(), finals.end());
  std::sort(xs.begin(), xs.end());
  double ks = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lo = static_cast<double>(i) / static_cast<double>(trials);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(trials);
    ks = std::max({ks, std::abs(xs[i] - lo), std::abs(hi - xs[i])});
  }
  EXPECT_LE(ks, 0.02);
}

TEST(Simulate, PolyaFineWindowSettlesOnFewerThan99Percent) {
  // Over the last 100 of 10^4 steps the proportion moves by O(1/n) per step,
  // so a 1e-3 oscillation budget is missed on a few percent of paths.
  const std::size_t H = 10000, window = 100;
  const auto settled = map_trajectories(PolyaUrn{}, RunConfig{1, 2000, H, {}, 0},
                                        [&](std::size_t, std::span<const double> p) {
                                          return window_oscillation<double>(p, window) <= 1e-3 ? 1 : 0;
                                        });
  const double frac = static_cast<double>(std::count(settled.begin(), settled.end(), 1)) / 2000.0;
  EXPECT_GT(frac, 0.85);
  EXPECT_LT(frac, 0.99);
}

TEST(Simulate, IndependentEventsAreIndicators) {
  const IndependentEvents ev{[](std::size_t) { return Rational(1, 3); }};
  const auto batch = simulate(ev, RunConfig{2, 100, 30, {}, 1});
  for (double v : batch.values) EXPECT_TRUE(v == 0.0 || v == 1.0);
  for (std::size_t t = 0; t < 100; ++t) EXPECT_EQ(batch.at(t, 0), 0.0);
}

TEST(Simulate, BatchAsProcess) {
  const auto batch = simulate(FairWalk{}, RunConfig{4, 3, 5, {}, 1});
  const auto f = batch.as_process();
  EXPECT_EQ(f.atom_count(), 3u);
  EXPECT_EQ(f.horizon(), 5u);
  EXPECT_EQ(f.value(5, 2), batch.at(2, 5));
}
