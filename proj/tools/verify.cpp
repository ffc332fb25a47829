#include <algorithm>
#include <cmath>

#include "cli.hpp"
#include "ggsp/generators.hpp"
#include "ggsp/iterate.hpp"

namespace ggsp::cli {

namespace {

struct Accumulator {
  std::string name;
  double tolerance;
  bool lower_bound = false;  // tolerance is a floor; report the smallest value seen
  double worst = 0.0;
  std::size_t failures = 0;
  std::size_t cases = 0;

  void add(double residual, bool ok) {
    worst = lower_bound ? (cases == 0 ? residual : std::min(worst, residual)) : std::max(worst, residual);
    failures += ok ? 0 : 1;
    ++cases;
  }
  void add(double residual) { add(residual, residual <= tolerance); }

  CheckResult result() const {
    return {name, worst, tolerance, failures == 0,
            std::to_string(cases) + " cases" + (failures ? ", " + std::to_string(failures) + " failed" : "")};
  }
};

RandomFrameShape corpus_shape(Rng& rng) {
  std::uniform_int_distribution<std::size_t> dim(2, 8);
  std::bernoulli_distribution forced(0.3);
  RandomFrameShape shape;
  shape.dim = dim(rng);
  shape.count = std::uniform_int_distribution<std::size_t>(shape.dim, 20)(rng);
  shape.forced_dependencies = forced(rng) ? std::uniform_int_distribution<std::size_t>(1, 3)(rng) : 0;
  return shape;
}

struct Battery {
  const RunConfig& config;
  Accumulator pass_parseval{"single-pass Parseval", 1e-10};
  Accumulator prefix_parseval{"prefix Parseval", 1e-10};
  Accumulator oracle{"dependent step = S^-1/2 oracle", 1e-10};
  Accumulator l2_identity{"sum ||g_i||^2 = rank", 1e-10};
  Accumulator classification{"dependency classification", 0.0};
  Accumulator gram_schmidt{"Gram-Schmidt degeneration", 1e-12};
  Accumulator onb_fixed{"zero-extended ONB fixed", 1e-12};
  Accumulator non_onb_moves{"non-ONB frames move (min > 1e-6)", 1e-6, true};
  Accumulator stabilization{"last-vector stabilization", 1e-10};
  Accumulator closed_form{"closed-form decay (fig1)", 1e-8};
  Accumulator recurrences{"norm recurrences (fig1, fig3)", 1e-12};
  Accumulator limit{"limit zero pattern + ONB (fig1-3)", 1e-2};

  template <Scalar T>
  void corpus_case(const GeneratedFrame<T>& g) {
    const auto pass = ggsp_pass(g.frame, {config.dep_tol, TraceLevel::steps});
    pass_parseval.add(is_parseval(pass.frame, 1e-10, config.dep_tol).residual);
    l2_identity.add(std::abs(squared_l2_norm(pass.frame) -
                             static_cast<double>(span_basis(g.frame, config.dep_tol).size())));

    for (const auto& st : pass.steps) {
      const FrameSeq<T> snap(g.frame.dim(), st.snapshot);
      prefix_parseval.add(is_parseval(snap, 1e-10, config.dep_tol).residual);
      if (st.kind != StepKind::dependent) continue;
      std::vector<Vector<T>> extended = pass.steps[st.step - 2].snapshot;
      extended.push_back(g.frame[st.step - 1]);
      const auto expected = canonical_parseval(FrameSeq<T>(g.frame.dim(), extended), SpanMode::restricted,
                                               config.dep_tol);
      oracle.add(l2_distance(expected, snap));
    }

    const bool same = dependency_profile(g.frame, config.dep_tol) == g.dependent;
    classification.add(same ? 0.0 : 1.0, same);
  }

  template <Scalar T>
  void gram_schmidt_case(Rng& rng) {
    const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, d)(rng);
    const FrameSeq<T> f = random_independent<T>(rng, d, n);
    // Plain classical Gram-Schmidt with the same projection order.
    std::vector<Vector<T>> q;
    for (const Vector<T>& v : f) {
      Vector<T> r = v;
      for (const Vector<T>& e : q) {
        const T c = inner(v, e);
        for (std::size_t j = 0; j < d; ++j) r[j] -= c * e[j];
      }
      const double nr = norm(r);
      for (T& x : r) x /= nr;
      q.push_back(std::move(r));
    }
    gram_schmidt.add(l2_distance(phi(f, config.dep_tol), FrameSeq<T>(d, q)));
  }

  template <Scalar T>
  void fixed_point_case(Rng& rng) {
    const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const std::size_t zeros = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    const auto onb = random_zero_extended_onb<T>(rng, d, zeros);
    onb_fixed.add(l2_distance(phi(onb, config.dep_tol), onb));

    const auto other = random_frame<T>(rng, {d, d + 1, 0, 0}).frame;
    const double moved = l2_distance(phi(other, config.dep_tol), other);
    non_onb_moves.add(moved, moved > 1e-6);
  }

  template <Scalar T>
  void stabilization_case(Rng& rng) {
    const std::size_t d = std::uniform_int_distribution<std::size_t>(2, 7)(rng);
    auto head = random_frame<T>(rng, {d, d - 1 + 2, 2, 0}).frame.vectors();
    head.push_back(random_vector<T>(rng, d));
    const FrameSeq<T> f(d, head);
    IterateOptions o;
    o.max_iter = 20;
    o.eps_delta = 0.0;
    o.dep_tol = config.dep_tol;
    const auto check = check_stabilized_last(f, iterate(f, o), 1e-10, config.dep_tol);
    stabilization.add(check.residual, check.applicable && check.stabilized);
  }
};

}  // namespace

std::vector<CheckResult> run_verification(const RunConfig& config) {
  Battery b{config};
  Rng rng(config.seed);

  for (std::size_t i = 0; i < config.random_frames; ++i) {
    const RandomFrameShape shape = corpus_shape(rng);
    if (i % 2 == 0) {
      b.corpus_case(random_frame<double>(rng, shape));
    } else {
      b.corpus_case(random_frame<cplx>(rng, shape));
    }
    if (i % 2 == 0) {
      b.gram_schmidt_case<double>(rng);
      b.fixed_point_case<double>(rng);
      b.stabilization_case<double>(rng);
    } else {
      b.gram_schmidt_case<cplx>(rng);
      b.fixed_point_case<cplx>(rng);
      b.stabilization_case<cplx>(rng);
    }
  }

  // Probe with an independent second vector at relative distance 0.05 from
  // the span of the first; any dependency tolerance above that misreads it.
  const GeneratedFrame<double> probe{FrameSeq<double>(2, {{1, 0}, {1, 0.05}, {0.3, 0.7}}), {3}, {}};
  b.corpus_case(probe);

  const auto fig1 = builtin_example("fig1");
  {
    IterateOptions o;
    o.max_iter = 1000;
    o.eps_delta = 0.0;
    o.dep_tol = config.dep_tol;
    const auto t = iterate(fig1, o);
    for (std::size_t m = 1; m < t.norms.size(); ++m) {
      b.closed_form.add(std::abs(t.norms[m][2] * std::sqrt(1.0 + static_cast<double>(m)) - 1.0));
    }
  }
  for (const char* name : {"fig1", "fig3"}) {
    IterateOptions o;
    o.max_iter = 50;
    o.eps_delta = 0.0;
    o.trace = TraceLevel::steps;
    o.dep_tol = config.dep_tol;
    const auto r = validate_recurrences(iterate(builtin_example(name), o));
    b.recurrences.add(std::max({r.norm_recurrence, r.cauchy_schwarz, r.accumulated_lower, r.upper_bound,
                                r.epsilon_lower}),
                      r.passed());
  }
  for (const char* name : {"fig1", "fig2", "fig3"}) {
    IterateOptions o;
    o.max_iter = 1000;
    o.eps_delta = 0.0;
    o.dep_tol = config.dep_tol;
    const auto report = classify_limit(iterate(builtin_example(name), o), config.delta_zero, config.delta_onb);
    const bool ok = report.prediction_match && report.onb_residual <= report.delta_onb;
    b.limit.add(report.onb_residual, ok);
  }

  return {b.pass_parseval.result(), b.prefix_parseval.result(), b.oracle.result(),   b.l2_identity.result(),
          b.classification.result(), b.gram_schmidt.result(),   b.onb_fixed.result(), b.non_onb_moves.result(),
          b.stabilization.result(), b.closed_form.result(),     b.recurrences.result(), b.limit.result()};
}

}  // namespace ggsp::cli
