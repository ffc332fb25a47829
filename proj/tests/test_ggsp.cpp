#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ggsp/errors.hpp"
#include "ggsp/generators.hpp"
#include "ggsp/ggsp.hpp"
#include "oracles.hpp"

using namespace ggsp;

namespace {

const double kH = 1.0 / std::numbers::sqrt2;
const double kA = (2.0 + std::numbers::sqrt2) / 4.0;  // 0.853553...
const double kB = (std::numbers::sqrt2 - 2.0) / 4.0;  // -0.146446...

template <Scalar T>
GeneratedFrame<T> corpus_frame(Rng& rng, int trial) {
  const std::size_t d = 2 + trial % 7;
  const std::size_t n = d + static_cast<std::size_t>(trial * 7) % (21 - d);
  const std::size_t forced = trial % 3 == 0 ? 1 + trial % 4 : 0;
  return random_frame<T>(rng, {d, n, forced, trial % 5 == 0 ? 1u : 0u});
}

}  // namespace

TEST(GgspPass, FigureOneByHand) {
  const auto out = phi(builtin_example("fig1"));
  const FrameSeq<double> expected(2, {{kA, kB}, {kB, kA}, {0.5, 0.5}});
  EXPECT_LE(l2_distance(out, expected), 1e-15);
  EXPECT_NEAR(kA, 0.853553, 1e-6);
  EXPECT_NEAR(kB, -0.146447, 1e-6);
}

TEST(GgspPass, ZeroExtendedOnbIsUnchanged) {
  const FrameSeq<double> f(2, {{1, 0}, {0, 0}, {0, 1}});
  EXPECT_EQ(phi(f), f);
}

TEST(GgspPass, IndependentInputIsGramSchmidt) {
  const auto out = phi(FrameSeq<double>(2, {{2, 0}, {1, 1}}));
  EXPECT_LE(l2_distance(out, FrameSeq<double>(2, {{1, 0}, {0, 1}})), 1e-15);
}

TEST(GgspPass, StepKindsAndSnapshots) {
  const FrameSeq<double> f(2, {{1, 0}, {0, 0}, {0, 1}, {kH, kH}});
  const auto r = ggsp_pass(f, {kDefaultDependencyTol, TraceLevel::steps});
  ASSERT_EQ(r.steps.size(), 4u);
  EXPECT_EQ(r.steps[0].kind, StepKind::independent);
  EXPECT_EQ(r.steps[1].kind, StepKind::zero);
  EXPECT_EQ(r.steps[2].kind, StepKind::independent);
  EXPECT_EQ(r.steps[3].kind, StepKind::dependent);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(r.steps[k].snapshot.size(), k + 1);
  EXPECT_EQ(r.steps[3].updates.size(), 3u);
  EXPECT_EQ(r.steps[3].snapshot, r.frame.vectors());
  EXPECT_TRUE(ggsp_pass(f).steps.empty());
}

TEST(GgspPass, BoundaryResidualTakesDependentBranch) {
  // f_2 - <f_2, g_1> g_1 = (0, t); with t exactly at dep_tol * max(1, ||f_2||)
  // the dependent branch is taken.
  const double tol = 0.25;
  const FrameSeq<double> f(2, {{1, 0}, {0, tol}});
  const auto r = ggsp_pass(f, {tol, TraceLevel::steps});
  EXPECT_EQ(r.steps[1].kind, StepKind::dependent);
  const auto r2 = ggsp_pass(f, {tol * 0.99, TraceLevel::steps});
  EXPECT_EQ(r2.steps[1].kind, StepKind::independent);
}

TEST(GgspPass, OverflowNamesTheStep) {
  const FrameSeq<double> f(2, {{1, 0}, {1e200, 1e200}});
  try {
    phi(f);
    FAIL() << "expected NonFiniteError";
  } catch (const NonFiniteError& e) {
    EXPECT_NE(std::string(e.what()).find("step 2"), std::string::npos) << e.what();
  }
}

TEST(DependentUpdate, Examples) {
  const std::vector<Vector<double>> basis{{1, 0}, {0, 1}};
  const auto a = dependent_update<double>(basis, Vector<double>{kH, kH});
  EXPECT_NEAR(distance<double>(a[0], Vector<double>{kA, kB}), 0.0, 1e-15);
  EXPECT_NEAR(distance<double>(a[1], Vector<double>{kB, kA}), 0.0, 1e-15);

  for (double c : {-3.0, -0.5, 1e-4, 1.0, 7.0}) {
    const std::vector<Vector<double>> one{{1, 0}};
    const auto b = dependent_update<double>(one, Vector<double>{c, 0});
    EXPECT_NEAR(b[0][0], 1.0 / std::sqrt(1.0 + c * c), 1e-15) << c;
    EXPECT_EQ(b[0][1], 0.0);
  }

  const auto c = dependent_update<double>(basis, Vector<double>{1, 0});
  EXPECT_NEAR(c[0][0], kH, 1e-15);
  EXPECT_EQ(c[1], (Vector<double>{0, 1}));

  EXPECT_THROW(dependent_update<double>(basis, Vector<double>{0, 0}), Error);
}

TEST(NormDrop, Examples) {
  EXPECT_DOUBLE_EQ(norm_drop<double>(Vector<double>{1, 0}, Vector<double>{0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(norm_drop<double>(Vector<double>{1, 0}, Vector<double>{1, 0}), 0.5);
  EXPECT_NEAR(norm_drop<double>(Vector<double>{1, 0}, Vector<double>{kH, kH}), 0.75, 1e-15);
  EXPECT_NEAR(kA * kA + kB * kB, 0.75, 1e-15);
}

TEST(GgspProperties, PrefixParsevalAndNoZeroCreation) {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = corpus_frame<cplx>(rng, trial);
    const auto r = ggsp_pass(g.frame, {kDefaultDependencyTol, TraceLevel::steps});
    for (const auto& st : r.steps) {
      const FrameSeq<cplx> snap(g.frame.dim(), st.snapshot);
      EXPECT_LE(is_parseval(snap).residual, 1e-10) << "trial " << trial << " step " << st.step;
    }
    EXPECT_EQ(zero_indices(r.frame), g.zeros);
    for (std::size_t k = 0; k < g.frame.size(); ++k) {
      const bool in_zero = std::all_of(g.frame[k].begin(), g.frame[k].end(), [](cplx x) { return x == 0.0; });
      const bool out_zero = std::all_of(r.frame[k].begin(), r.frame[k].end(), [](cplx x) { return x == 0.0; });
      EXPECT_EQ(in_zero, out_zero);
    }
  }
}

TEST(GgspProperties, GramSchmidtDegeneration) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 8;
    const std::size_t n = 1 + static_cast<std::size_t>(trial / 8) % d;
    const auto f = random_independent<double>(rng, d, n);
    const auto expected = oracle::classical_gram_schmidt(f.vectors());
    EXPECT_LE(l2_distance(phi(f), FrameSeq<double>(d, expected)), 1e-12) << trial;
    const auto fc = random_independent<cplx>(rng, d, n);
    const auto ec = oracle::classical_gram_schmidt(fc.vectors());
    EXPECT_LE(l2_distance(phi(fc), FrameSeq<cplx>(d, ec)), 1e-12) << trial;
  }
}

TEST(GgspProperties, DependentStepEqualsCanonicalParseval) {
  Rng rng(43);
  std::size_t checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = corpus_frame<double>(rng, trial);
    const auto r = ggsp_pass(g.frame, {kDefaultDependencyTol, TraceLevel::steps});
    for (const auto& st : r.steps) {
      if (st.kind != StepKind::dependent) continue;
      const auto& before = r.steps[st.step - 2].snapshot;
      std::vector<Vector<double>> extended = before;
      extended.push_back(g.frame[st.step - 1]);
      const auto oracle = canonical_parseval(FrameSeq<double>(g.frame.dim(), extended));
      EXPECT_LE(l2_distance(oracle, FrameSeq<double>(g.frame.dim(), st.snapshot)), 1e-10);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(GgspProperties, NormDropAndCauchySchwarzFloorPerStep) {
  Rng rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = corpus_frame<cplx>(rng, trial);
    const auto r = ggsp_pass(g.frame, {kDefaultDependencyTol, TraceLevel::steps});
    for (const auto& st : r.steps) {
      if (st.kind != StepKind::dependent) continue;
      const auto& f = g.frame[st.step - 1];
      const double fsq = st.input_norm * st.input_norm;
      for (const auto& u : st.updates) {
        const auto& before = r.steps[st.step - 2].snapshot[u.index - 1];
        const double predicted = norm_drop<cplx>(before, f);
        const double after_sq = u.norm_after * u.norm_after;
        const double scale = std::max(1.0, u.norm_before * u.norm_before);
        EXPECT_LE(std::abs(after_sq - predicted), 1e-12 * scale);
        EXPECT_GE(after_sq, u.norm_before * u.norm_before / (1.0 + fsq) - 1e-12 * scale);
        EXPECT_NEAR(u.abs_inner, std::abs(inner(before, f)), 1e-12 * scale * (1.0 + st.input_norm));
      }
    }
  }
}
