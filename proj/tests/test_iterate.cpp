#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ggsp/errors.hpp"
#include "ggsp/generators.hpp"
#include "ggsp/iterate.hpp"

using namespace ggsp;

namespace {

const double kH = 1.0 / std::numbers::sqrt2;

IterateOptions run_for(std::size_t m, TraceLevel trace = TraceLevel::none) {
  IterateOptions o;
  o.max_iter = m;
  o.eps_delta = 0.0;
  o.trace = trace;
  return o;
}

}  // namespace

TEST(Iterate, ZeroExtendedOnbStopsAfterOneIteration) {
  const FrameSeq<double> f(2, {{0, 0}, {1, 0}, {0, 1}});
  const auto t = iterate(f, {});
  EXPECT_EQ(t.iterations_run, 1u);
  EXPECT_TRUE(t.stationary);
  ASSERT_EQ(t.deltas.size(), 1u);
  EXPECT_EQ(t.deltas[0], 0.0);
}

TEST(Iterate, FigureOneLastVectorFollowsClosedForm) {
  const auto t = iterate(builtin_example("fig1"), run_for(1000));
  EXPECT_EQ(t.iterations_run, 1000u);
  EXPECT_NEAR(t.norms[1000][2], 1.0 / std::sqrt(1001.0), 1e-10);
  EXPECT_NEAR(t.norms[1000][2], 0.031607, 1e-6);
}

TEST(Iterate, FigureThreeKeepsTwoSurvivors) {
  const auto t = iterate(builtin_example("fig3"), run_for(1000));
  const auto report = classify_limit(t);
  EXPECT_EQ(report.surviving_indices.size(), 2u);
  EXPECT_NEAR(squared_l2_norm(t.final_frame()), 2.0, 1e-9);
}

TEST(Iterate, NormsRecordedEveryIterationSnapshotsStrided) {
  IterateOptions o = run_for(25);
  o.snapshot_stride = 10;
  const auto t = iterate(builtin_example("fig2"), o);
  EXPECT_EQ(t.norms.size(), 26u);
  EXPECT_EQ(t.deltas.size(), 25u);
  std::vector<std::size_t> its;
  for (const auto& s : t.frames) its.push_back(s.iteration);
  EXPECT_EQ(its, (std::vector<std::size_t>{0, 10, 20, 25}));
  EXPECT_TRUE(t.steps.empty());
}

TEST(Iterate, RejectsBadOptions) {
  EXPECT_THROW(iterate(builtin_example("fig1"), run_for(0)), InputError);
  IterateOptions o = run_for(3);
  o.snapshot_stride = 0;
  EXPECT_THROW(iterate(builtin_example("fig1"), o), InputError);
}

TEST(ClosedForm, Examples) {
  const Vector<double> f{kH, kH};
  const auto a = closed_form_last_dependent<double>(f, 1);
  EXPECT_NEAR(a[0], 0.5, 1e-15);
  EXPECT_NEAR(a[1], 0.5, 1e-15);
  const auto b = closed_form_last_dependent<double>(f, 2);
  EXPECT_NEAR(b[0], kH / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(b[0], 0.408248, 1e-6);

  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_vector<cplx>(rng, 4);
    const auto c = closed_form_last_dependent<cplx>(v, 1 + trial);
    const cplx ratio = c[0] / v[0];
    EXPECT_NEAR(ratio.imag(), 0.0, 1e-15);
    EXPECT_GT(ratio.real(), 0.0);
    for (std::size_t j = 1; j < 4; ++j) EXPECT_LE(std::abs(c[j] - ratio * v[j]), 1e-14);
  }
}

TEST(StabilizedLast, Examples) {
  const FrameSeq<double> a(2, {{2, 0}, {1, 1}});
  const auto ca = check_stabilized_last(a, iterate(a, run_for(5)));
  EXPECT_TRUE(ca.applicable);
  EXPECT_TRUE(ca.stabilized);
  EXPECT_LE(ca.residual, 1e-15);

  const FrameSeq<double> b(2, {{1, 0}, {0, 1}});
  EXPECT_TRUE(check_stabilized_last(b, iterate(b, run_for(5))).stabilized);

  const auto f1 = builtin_example("fig1");
  EXPECT_FALSE(check_stabilized_last(f1, iterate(f1, run_for(5))).applicable);
}

TEST(StabilizedLast, RandomFramesWithIndependentLastVector) {
  Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 3 + trial % 5;
    // A head living in the first d - 1 coordinates (with forced dependencies),
    // then a generic last vector outside its span.
    auto g = random_frame<double>(rng, {d - 1, d + 2, 2, 0});
    std::vector<Vector<double>> v = g.frame.vectors();
    for (auto& x : v) x.push_back(0.0);
    v.push_back(random_vector<double>(rng, d));
    const FrameSeq<double> f(d, v);
    const auto check = check_stabilized_last(f, iterate(f, run_for(20)));
    EXPECT_TRUE(check.applicable);
    EXPECT_LE(check.residual, 1e-10) << trial;
  }
}

TEST(Recurrences, FigureOneAndThree) {
  const auto r1 = validate_recurrences(iterate(builtin_example("fig1"), run_for(50, TraceLevel::steps)));
  EXPECT_TRUE(r1.passed()) << r1.norm_recurrence << " " << r1.closed_form;
  EXPECT_EQ(r1.iterations_checked, 50u);
  // Single dependent index: no pairs, the closed form governs.
  EXPECT_EQ(r1.pairs_checked, 0u);
  EXPECT_LE(r1.closed_form, 1e-10);

  const auto r3 = validate_recurrences(iterate(builtin_example("fig3"), run_for(20, TraceLevel::steps)));
  EXPECT_TRUE(r3.passed());
  EXPECT_EQ(r3.pairs_checked, 20u * 28u);
}

TEST(Recurrences, RequiresStepTrace) {
  EXPECT_THROW(validate_recurrences(iterate(builtin_example("fig1"), run_for(3))), Error);
}

TEST(Recurrences, RandomFrames) {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 4;
    const auto g = random_frame<cplx>(rng, {d, d + 4, 1, 0});
    const auto r = validate_recurrences(iterate(g.frame, run_for(15, TraceLevel::steps)));
    EXPECT_TRUE(r.passed()) << trial;
  }
}

TEST(ClassifyLimit, Examples) {
  const auto r1 = classify_limit(iterate(builtin_example("fig1"), run_for(1000)));
  EXPECT_EQ(r1.zero_indices, (std::vector<std::size_t>{3}));
  EXPECT_EQ(r1.surviving_indices.size(), 2u);
  EXPECT_LE(r1.onb_residual, 1e-2);
  EXPECT_TRUE(r1.prediction_match);
  EXPECT_TRUE(r1.converged);
  EXPECT_NEAR(r1.delta_zero, 2.0 / std::sqrt(1000.0), 1e-15);

  const FrameSeq<double> onb(2, {{0, 1}, {0, 0}, {1, 0}});
  const auto r2 = classify_limit(iterate(onb, {}));
  EXPECT_EQ(r2.zero_indices, (std::vector<std::size_t>{2}));
  EXPECT_LE(r2.onb_residual, 1e-14);
  EXPECT_TRUE(r2.prediction_match);

  const auto r3 = classify_limit(iterate(builtin_example("fig3"), run_for(1000)));
  EXPECT_EQ(r3.surviving_indices.size(), 2u);
  EXPECT_EQ(r3.zero_indices, (std::vector<std::size_t>{3, 4, 5, 6, 7, 8, 9, 10}));
  EXPECT_TRUE(r3.prediction_match);
}

TEST(ClassifyLimit, PartitionCoversAllIndices) {
  Rng rng(54);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_frame<double>(rng, {3, 7, 1, 1});
    const auto r = classify_limit(iterate(g.frame, run_for(50)));
    std::vector<std::size_t> all = r.zero_indices;
    all.insert(all.end(), r.surviving_indices.begin(), r.surviving_indices.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(7);
    std::iota(expected.begin(), expected.end(), 1u);
    EXPECT_EQ(all, expected);
  }
}

TEST(FixedPoint, Examples) {
  EXPECT_TRUE(is_fixed_point(FrameSeq<double>(2, {{1, 0}, {0, 0}, {0, 1}})));
  EXPECT_FALSE(is_fixed_point(builtin_example("fig1")));
  EXPECT_FALSE(is_fixed_point(FrameSeq<double>(2, {{kH, 0}})));
}

TEST(FixedPoint, EquivalentToStructuralCheck) {
  Rng rng(55);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t d = 1 + trial % 6;
    FrameSeq<cplx> f = random_zero_extended_onb<cplx>(rng, d, trial % 3);
    if (trial % 3 == 1) {
      f = random_frame<cplx>(rng, {d, d + 2, 1, 0}).frame;
    } else if (trial % 3 == 2) {
      // Adversarial: near-ONB at a scale far above or far below the tolerance.
      const double eps = trial % 2 == 0 ? 1e-6 : 1e-14;
      std::vector<Vector<cplx>> v = f.vectors();
      for (auto& x : v)
        for (auto& e : x)
          if (e != 0.0) e += eps * normal(rng);
      f = FrameSeq<cplx>(d, v);
    }
    EXPECT_EQ(is_fixed_point(f), is_zero_extended_orthonormal(f)) << trial;
  }
}

TEST(IterationProperties, MonotoneDecayParsevalAndSphere) {
  Rng rng(56);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const auto g = random_frame<double>(rng, {d, d + 3 + trial % 4, 2, 0});
    IterateOptions o = run_for(200);
    o.snapshot_stride = 20;
    const auto t = iterate(g.frame, o);
    for (std::size_t k : t.dependent_indices) {
      for (std::size_t m = 0; m + 1 < t.norms.size(); ++m) {
        EXPECT_LT(t.norms[m + 1][k - 1], t.norms[m][k - 1] + 1e-13) << trial << " k=" << k << " m=" << m;
      }
    }
    for (const auto& s : t.frames) {
      if (s.iteration == 0) continue;
      EXPECT_LE(is_parseval(s.frame, 1e-9).residual, 1e-9);
      EXPECT_NEAR(squared_l2_norm(s.frame), static_cast<double>(d), 1e-9);
    }
  }
}
