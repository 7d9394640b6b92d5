#include "common.hpp"

using namespace mgale;
using namespace testing_util;

namespace {

Process<Q> figure1() { return Process<Q>::from_paths({fixtures::figure1_path<Q>()}); }

}  // namespace

TEST(Crossings, Figure1Labels) {
  const auto f = figure1();
  const Band<Q> band{Q(0), Q(1)};
  const std::vector<std::size_t> sigma{0, 5, 10, 13, 13, 13};
  const std::vector<std::size_t> tau{1, 7, 11, 13, 13, 13};
  for (std::size_t n = 0; n < sigma.size(); ++n) {
    EXPECT_EQ(upper_crossing(band, f, 13, n)[0], sigma[n]) << "sigma_" << n;
    EXPECT_EQ(lower_crossing(band, f, 13, n)[0], tau[n]) << "tau_" << n;
  }
  EXPECT_EQ(upcrossings_before(band, f, 13)[0], 2u);
  EXPECT_EQ(upcrossings(band, f)[0].finite_value(), Q(2));
  const auto t = crossing_table(band, f, 13);
  EXPECT_EQ(t.sigma[1][0], 5u);
  EXPECT_EQ(t.tau[2][0], 11u);
}

TEST(Crossings, ConstantPathInsideBand) {
  const auto f = Process<Q>::from_paths({qs({"1/2", "1/2", "1/2", "1/2"})});
  const Band<Q> band{Q(0), Q(1)};
  for (std::size_t n = 0; n < 4; ++n) {
    EXPECT_EQ(lower_crossing(band, f, 3, n)[0], 3u);
    EXPECT_EQ(upper_crossing(band, f, 3, n + 1)[0], 3u);
  }
  EXPECT_EQ(upcrossings(band, f)[0].finite_value(), Q(0));
}

TEST(Crossings, ZeroIndexIsZero) {
  const auto f = oracle_walk_process(4);
  const Band<Q> band{Q(-1), Q(1)};
  EXPECT_EQ(upper_crossing(band, f, 4, 0), std::vector<std::size_t>(16, 0));
}

TEST(Crossings, NeverBelowA) {
  const auto f = Process<Q>::from_paths({qi({3, 5, 2, 9})});
  EXPECT_EQ(upcrossings_before(Band<Q>{Q(1), Q(4)}, f, 3)[0], 0u);
}

TEST(Crossings, ShortWalk) {
  const auto f = Process<Q>::from_paths({qi({0, -1, 0, 1})});
  const Band<Q> band{Q(-1, 2), Q(1, 2)};
  EXPECT_EQ(upcrossings_before(band, f, 3)[0], 0u);  // the only upcrossing completes at time 3
  EXPECT_EQ(upcrossings_before(band, f, 3)[0], oracle::upcrossings(f.path(0), band.a, band.b, 3));
}

TEST(Crossings, StallWhenBandIsInverted) {
  // a >= b and a value in [b, a] before N: the crossing times stall, count is 0.
  const auto f = Process<Q>::from_paths({qi({0, 1, 0, 1, 0})});
  EXPECT_EQ(upcrossings_before(Band<Q>{Q(1), Q(0)}, f, 4)[0], 0u);
  EXPECT_EQ(upcrossings_before(Band<Q>{Q(1), Q(1)}, f, 4)[0], 0u);
  // never inside [b, a] before N: behaves like an ordinary count
  const auto g = Process<Q>::from_paths({qi({-2, 3, -2, 3, 1})});
  EXPECT_EQ(upcrossings_before(Band<Q>{Q(1), Q(0)}, g, 4)[0], oracle::upcrossings(g.path(0), Q(1), Q(0), 4));
}

TEST(Crossings, AgreesWithStateMachineOnRandomPaths) {
  gen::Rng rng(1234);
  for (int i = 0; i < 3000; ++i) {
    const std::size_t len = 1 + gen::below(rng, 25);
    std::vector<Q> path;
    for (std::size_t k = 0; k < len; ++k) path.push_back(gen::rational<Q>(rng, 6, 2));
    const Q a = gen::rational<Q>(rng, 4, 2);
    const Q b = gen::rational<Q>(rng, 4, 2);
    const auto f = Process<Q>::from_paths({path});
    for (std::size_t N = 0; N < len; ++N)
      ASSERT_EQ(upcrossings_before_at(Band<Q>{a, b}, f, N, 0), oracle::upcrossings(path, a, b, N))
          << "path " << i << " N " << N << " band (" << a << ", " << b << ")";
  }
}

TEST(Crossings, MonotoneInN) {
  gen::Rng rng(4321);
  for (int i = 0; i < 300; ++i) {
    const std::size_t len = 2 + gen::below(rng, 20);
    std::vector<Q> path;
    for (std::size_t k = 0; k < len; ++k) path.push_back(gen::rational<Q>(rng, 4, 1));
    const auto f = Process<Q>::from_paths({path});
    const Band<Q> band{Q(-1), Q(1)};
    std::size_t prev = 0;
    for (std::size_t N = 0; N < len; ++N) {
      const std::size_t u = upcrossings_before_at(band, f, N, 0);
      EXPECT_GE(u, prev);
      prev = u;
    }
    EXPECT_EQ(upcrossings(band, f)[0].finite_value(), Q(static_cast<long>(prev)));
  }
}

TEST(Crossings, RejectsTimeBeyondHorizon) {
  EXPECT_THROW(upcrossings_before(Band<Q>{Q(0), Q(1)}, figure1(), 14), std::out_of_range);
}

TEST(UpcrossingEstimate, FairWalkTwoSteps) {
  const auto f = oracle_walk_process(2);
  const auto rep = check_upcrossing_estimate(Band<Q>{Q(-1, 2), Q(1, 2)}, f, natural_filtration(f), uniform(4), 2);
  EXPECT_EQ(rep.lhs, Q(0));
  EXPECT_EQ(rep.rhs, Q(7, 8));
  EXPECT_TRUE(rep.holds);
}

TEST(UpcrossingEstimate, InvertedBandSigns) {
  const auto f = oracle_walk_process(4);
  const auto F = natural_filtration(f);
  for (const auto& [a, b] : std::vector<std::pair<long, long>>{{1, -1}, {0, 0}, {2, -2}}) {
    const auto rep = check_upcrossing_estimate(Band<Q>{Q(a), Q(b)}, f, F, uniform(16), 4);
    EXPECT_LE(rep.lhs, Q(0));
    EXPECT_GE(rep.rhs, Q(0));
    EXPECT_TRUE(rep.holds);
  }
}

TEST(UpcrossingEstimate, ConstantProcess) {
  const Process<Q> c(3, 2, Q(5));
  const auto rep = check_upcrossing_estimate(Band<Q>{Q(4), Q(6)}, c, natural_filtration(c), uniform(2), 3);
  EXPECT_EQ(rep.lhs, Q(0));
  EXPECT_EQ(rep.rhs, Q(1));
}

TEST(UpcrossingEstimate, RequiresSubmartingale) {
  const auto f = oracle_walk_process(2);
  Process<Q> neg = f;
  for (std::size_t n = 0; n <= 2; ++n)
    for (Atom a = 0; a < 4; ++a) neg.value(n, a) -= Q(static_cast<long>(n));
  EXPECT_THROW(check_upcrossing_estimate(Band<Q>{Q(0), Q(1)}, neg, natural_filtration(neg), uniform(4), 2),
               std::invalid_argument);
}

TEST(UpcrossingEstimate, BiasedWalksExhaustive) {
  for (const auto& p : {Q(1, 2), Q(2, 3), Q(3, 4)}) {
    const auto ps = exhaustive_space<Q>(BiasedWalk{p, Q(1)}, 8);
    for (long a2 = -4; a2 <= 4; ++a2)
      for (long b2 = -4; b2 <= 4; ++b2) {
        const auto rep = check_upcrossing_estimate(Band<Q>{Q(a2, 2), Q(b2, 2)}, ps.process, ps.filtration, ps.space, 8);
        EXPECT_TRUE(rep.holds) << "p " << p << " band " << a2 << "/2, " << b2 << "/2";
      }
  }
}

TEST(UpcrossingEstimateSup, Figure1ArithmeticOnly) {
  const auto f = figure1();
  const auto rep = evaluate_upcrossing_estimate_sup(Band<Q>{Q(0), Q(1)}, f, FiniteMeasureSpace<Q>(qi({1})));
  EXPECT_EQ(rep.lhs.finite_value(), Q(2));
  EXPECT_EQ(rep.rhs.finite_value(), Q(3, 2));
  EXPECT_FALSE(rep.holds);  // the path is not a submartingale
}

TEST(UpcrossingEstimateSup, FairWalks) {
  for (std::size_t H = 1; H <= 8; ++H) {
    const auto f = oracle_walk_process(H);
    const auto rep = check_upcrossing_estimate_sup(Band<Q>{Q(-1, 2), Q(1, 2)}, f, natural_filtration(f), uniform(f.atom_count()));
    EXPECT_TRUE(rep.holds) << H;
  }
}

TEST(BandTranslation, Figure1AndZeroLevel) {
  const auto f = figure1();
  const auto rep = band_translation_identity(Band<Q>{Q(0), Q(1)}, f);
  EXPECT_TRUE(rep.holds);
  EXPECT_GT(rep.checked, 0u);
  Process<Q> shifted = f;
  for (std::size_t n = 0; n <= f.horizon(); ++n) shifted.value(n, 0) = positive_part(f.value(n, 0));
  EXPECT_EQ(upcrossings_before(Band<Q>{Q(0), Q(1)}, shifted, 13)[0], 2u);
}

TEST(BandTranslation, RandomPathsAndBands) {
  gen::Rng rng(777);
  for (int i = 0; i < 500; ++i) {
    const std::size_t len = 1 + gen::below(rng, 20);
    std::vector<Q> path;
    for (std::size_t k = 0; k < len; ++k) path.push_back(gen::rational<Q>(rng, 5, 3));
    Q a = gen::rational<Q>(rng, 3, 3), b = gen::rational<Q>(rng, 3, 3);
    if (a == b) b += 1;
    if (a > b) std::swap(a, b);
    const auto f = Process<Q>::from_paths({path});
    EXPECT_TRUE(band_translation_identity(Band<Q>{a, b}, f).holds);
    std::vector<Q> shifted;
    for (const auto& x : path) shifted.push_back(positive_part(Q(x - a)));
    for (std::size_t N = 0; N < len; ++N)
      EXPECT_EQ(oracle::upcrossings(shifted, Q(0), Q(b - a), N), oracle::upcrossings(path, a, b, N));
  }
}
