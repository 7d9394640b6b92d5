#include "common.hpp"

using namespace mgale;
using namespace testing_util;

namespace {

Process<Q> one_path(std::initializer_list<long> xs) { return Process<Q>::from_paths({qi(xs)}); }

}  // namespace

TEST(StoppingTime, ConstantsAndInfinity) {
  const auto f = oracle_walk_process(3);
  const auto F = natural_filtration(f);
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_TRUE(is_stopping_time(StoppingTime::constant(8, ExtendedTime(k)), F));
  EXPECT_TRUE(is_stopping_time(StoppingTime::constant(8, ExtendedTime::infinity()), F));
}

TEST(StoppingTime, FirstHitOfOneIsStoppingTime) {
  const auto f = oracle_walk_process(3);
  const auto F = natural_filtration(f);
  EXPECT_TRUE(is_stopping_time(hitting_unbounded(f, ValuePredicate<Q>::at_least(Q(1)), 0), F));
}

TEST(StoppingTime, PeekingAheadIsNot) {
  const auto f = oracle_walk_process(2);
  const auto F = natural_filtration(f);
  // stop at 0 exactly on the paths that go up at step 1
  const auto tau = StoppingTime::from_naturals({0, 0, 2, 2});
  EXPECT_FALSE(is_stopping_time(tau, F));
}

TEST(Hitting, Examples) {
  const auto ge = ValuePredicate<Q>::at_least(Q(1));
  const auto le2 = ValuePredicate<Q>::at_most(Q(2));
  EXPECT_EQ(hitting(one_path({5, 2, 8, 1}), le2, 0, 3), std::vector<std::size_t>{1});
  EXPECT_EQ(hitting(one_path({5, 2, 8}), ValuePredicate<Q>::at_most(Q(0)), 0, 2), std::vector<std::size_t>{2});
  EXPECT_EQ(hitting(one_path({5, 2, 8, 1}), le2, 2, 3), std::vector<std::size_t>{3});
  EXPECT_EQ(hitting(one_path({0, -1, 3}), ge, 0, 2), std::vector<std::size_t>{2});
}

TEST(HittingUnbounded, Examples) {
  const auto ge = ValuePredicate<Q>::at_least(Q(1));
  EXPECT_FALSE(hitting_unbounded(one_path({0, 0, 0}), ge, 0)[0].is_finite());
  EXPECT_EQ(hitting_unbounded(one_path({4, 0, 0}), ge, 0)[0], ExtendedTime(0));
  EXPECT_EQ(hitting_unbounded(one_path({0, -1, 3}), ge, 0)[0], ExtendedTime(2));
}

TEST(HittingIsStoppingTime, CoordinateAndConstant) {
  const auto f = oracle_walk_process(3);
  EXPECT_TRUE(check_hitting_is_stopping_time(f, ValuePredicate<Q>::at_least(Q(1)), 0, 3, natural_filtration(f)));
  const Process<Q> c(3, 8, Q(2));
  EXPECT_TRUE(check_hitting_is_stopping_time(c, ValuePredicate<Q>::at_least(Q(1)), 1, 3, natural_filtration(f)));
}

TEST(HittingIsStoppingTime, RandomAdaptedProcesses) {
  gen::Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + gen::below(rng, 16);
    const auto F = gen::filtration(rng, n, 1 + gen::below(rng, 5));
    Process<Q> f(F.horizon(), n, Q(0));
    for (std::size_t k = 0; k <= F.horizon(); ++k) f.at(k) = gen::measurable<Q>(rng, F.step(k), -3, 3, 1);
    const std::size_t lo = gen::below(rng, F.horizon() + 1);
    const std::size_t hi = lo + gen::below(rng, F.horizon() - lo + 1);
    const auto pred = ValuePredicate<Q>::closed(Q(-1), Q(1));
    EXPECT_TRUE(check_hitting_is_stopping_time(f, pred, lo, hi, F));
    // The same answer from a direct level-set scan.
    const auto t = hitting(f, pred, lo, hi);
    for (std::size_t k = 0; k <= F.horizon(); ++k) {
      AtomSet level(n);
      for (Atom a = 0; a < n; ++a)
        if (t[a] <= k) level.insert(a);
      EXPECT_TRUE(set_measurable_wrt(level, F.step(k)));
    }
  }
}

TEST(HittingIsStoppingTime, RejectsNonAdapted) {
  const auto f = oracle_walk_process(2);
  const Filtration trivial({Partition::trivial(4), Partition::trivial(4), Partition::trivial(4)});
  EXPECT_THROW(check_hitting_is_stopping_time(f, ValuePredicate<Q>::at_least(Q(1)), 0, 2, trivial), std::invalid_argument);
}

TEST(StoppedProcess, Examples) {
  const auto f = one_path({0, 5, -3});
  EXPECT_EQ(stopped_process(f, StoppingTime::constant(1, ExtendedTime::infinity())), f);
  EXPECT_EQ(stopped_process(f, StoppingTime::constant(1, ExtendedTime(0))).path(0), qi({0, 0, 0}));
  EXPECT_EQ(stopped_process(f, StoppingTime::constant(1, ExtendedTime(1))).path(0), qi({0, 5, 5}));
}

TEST(StoppingMinMax, Pointwise) {
  const StoppingTime x({ExtendedTime(1), ExtendedTime::infinity()});
  const StoppingTime y({ExtendedTime(3), ExtendedTime(2)});
  EXPECT_EQ(stopping_min(x, y).time_of, (std::vector<ExtendedTime>{ExtendedTime(1), ExtendedTime(2)}));
  EXPECT_EQ(stopping_max(x, y).time_of, (std::vector<ExtendedTime>{ExtendedTime(3), ExtendedTime::infinity()}));
}

TEST(OptionalStopping, Examples) {
  const auto f = oracle_walk_process(2);
  const auto F = natural_filtration(f);
  const auto sp = uniform(4);
  const auto two = StoppingTime::constant(4, ExtendedTime(2));
  const auto r0 = check_optional_stopping(f, F, sp, StoppingTime::constant(4, ExtendedTime(0)), two);
  EXPECT_TRUE(r0.holds);
  EXPECT_EQ(r0.lhs, r0.rhs);
  EXPECT_TRUE(check_optional_stopping(f, F, sp, two, two).holds);

  const auto tau = StoppingTime::from_naturals(hitting(f, ValuePredicate<Q>::custom([](const Q& x) { return abs(x) == 1; }), 0, 2));
  const auto rep = check_optional_stopping(f, F, sp, tau, two);
  EXPECT_EQ(rep.lhs, Q(0));
  EXPECT_EQ(rep.rhs, Q(0));
  EXPECT_TRUE(rep.holds);
}

TEST(OptionalStopping, Errors) {
  const auto f = oracle_walk_process(2);
  const auto F = natural_filtration(f);
  const auto sp = uniform(4);
  EXPECT_THROW(check_optional_stopping(f, F, sp, StoppingTime::constant(4, ExtendedTime(2)),
                                       StoppingTime::constant(4, ExtendedTime(1))),
               std::invalid_argument);
  EXPECT_THROW(check_optional_stopping(f, F, sp, StoppingTime::constant(4, ExtendedTime(0)),
                                       StoppingTime::constant(4, ExtendedTime::infinity())),
               std::invalid_argument);
  EXPECT_THROW(check_optional_stopping(f, F, sp, StoppingTime::from_naturals({0, 0, 2, 2}),
                                       StoppingTime::constant(4, ExtendedTime(2))),
               std::invalid_argument);
}

TEST(OptionalStopping, RandomSubmartingales) {
  gen::Rng rng(55);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + gen::below(rng, 10);
    const auto sp = gen::space<Q>(rng, n);
    const auto F = gen::filtration(rng, n, 1 + gen::below(rng, 4));
    const auto f = gen::submartingale<Q>(rng, sp, F);
    const auto s = gen::stopping_time(rng, F);
    const auto t = gen::stopping_time(rng, F);
    EXPECT_TRUE(check_optional_stopping(f, F, sp, stopping_min(s, t), stopping_max(s, t)).holds);
  }
}
