#include "ggsp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ggsp/errors.hpp"

namespace ggsp {

namespace {

enum class Slot { generic, forced, zero };

template <Scalar T>
T draw(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  if constexpr (is_complex<T>::value) {
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
  } else {
    return normal(rng);
  }
}

std::vector<std::size_t> pick_positions(Rng& rng, std::vector<std::size_t> pool, std::size_t count) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(count, pool.size()));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

FrameSeq<double> builtin_example(std::string_view name) {
  const double h = 1.0 / std::numbers::sqrt2;
  if (name == "fig1") return FrameSeq<double>(2, {{1.0, 0.0}, {0.0, 1.0}, {h, h}});
  if (name == "fig2") return FrameSeq<double>(2, {{1.0, 0.0}, {0.0, 1.0}, {-h, h}});
  if (name == "fig3") {
    std::vector<Vector<double>> v;
    for (int k = 1; k <= 10; ++k) {
      const double angle = 2.0 * k * std::numbers::pi / 10.0;
      v.push_back({std::cos(angle), std::sin(angle)});
    }
    return FrameSeq<double>(2, std::move(v));
  }
  throw InputError("unknown example '" + std::string(name) + "' (expected fig1, fig2 or fig3)");
}

template <Scalar T>
Vector<T> random_vector(Rng& rng, std::size_t dim) {
  Vector<T> v(dim);
  for (T& x : v) x = draw<T>(rng);
  return v;
}

template <Scalar T>
GeneratedFrame<T> random_frame(Rng& rng, const RandomFrameShape& shape) {
  const std::size_t n = shape.count;
  if (n == 0 || shape.dim == 0) throw InputError("random_frame: empty shape");
  std::vector<Slot> slots(n, Slot::generic);

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (std::size_t z : pick_positions(rng, all, shape.zero_vectors)) slots[z] = Slot::zero;

  // A forced slot needs a nonzero predecessor; position 0 never qualifies.
  std::vector<std::size_t> candidates;
  bool seen_nonzero = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (seen_nonzero && slots[k] == Slot::generic) candidates.push_back(k);
    if (slots[k] == Slot::generic) seen_nonzero = true;
  }
  for (std::size_t k : pick_positions(rng, candidates, shape.forced_dependencies)) slots[k] = Slot::forced;

  GeneratedFrame<T> out{FrameSeq<T>(shape.dim, {Vector<T>(shape.dim, T{})}), {}, {}};
  std::vector<Vector<T>> vectors;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    switch (slots[k]) {
      case Slot::zero:
        vectors.emplace_back(shape.dim, T{});
        out.zeros.push_back(k + 1);
        break;
      case Slot::forced: {
        Vector<T> v(shape.dim, T{});
        for (const Vector<T>& prev : vectors) axpy<T>(draw<T>(rng), prev, v);
        vectors.push_back(std::move(v));
        out.dependent.push_back(k + 1);
        break;
      }
      case Slot::generic:
        vectors.push_back(random_vector<T>(rng, shape.dim));
        if (rank < shape.dim) {
          ++rank;
        } else {
          out.dependent.push_back(k + 1);
        }
        break;
    }
  }
  out.frame = FrameSeq<T>(shape.dim, std::move(vectors));
  return out;
}

template <Scalar T>
FrameSeq<T> random_independent(Rng& rng, std::size_t dim, std::size_t count) {
  if (count > dim) throw InputError("random_independent: more vectors than the dimension");
  std::vector<Vector<T>> v;
  for (std::size_t k = 0; k < count; ++k) v.push_back(random_vector<T>(rng, dim));
  return FrameSeq<T>(dim, std::move(v));
}

template <Scalar T>
FrameSeq<T> random_zero_extended_onb(Rng& rng, std::size_t dim, std::size_t zero_vectors) {
  const auto basis = span_basis(random_independent<T>(rng, dim, dim));
  if (basis.size() != dim) throw Error("random_zero_extended_onb: degenerate draw");

  const std::size_t n = dim + zero_vectors;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto zeros = pick_positions(rng, all, zero_vectors);

  std::vector<Vector<T>> v;
  std::size_t next_basis = 0;
  std::size_t next_zero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (next_zero < zeros.size() && zeros[next_zero] == k) {
      v.emplace_back(dim, T{});
      ++next_zero;
    } else {
      v.push_back(basis[next_basis++]);
    }
  }
  return FrameSeq<T>(dim, std::move(v));
}

#define GGSP_INSTANTIATE(T)                                                              \
  template Vector<T> random_vector<T>(Rng&, std::size_t);                                \
  template GeneratedFrame<T> random_frame<T>(Rng&, const RandomFrameShape&);             \
  template FrameSeq<T> random_independent<T>(Rng&, std::size_t, std::size_t);            \
  template FrameSeq<T> random_zero_extended_onb<T>(Rng&, std::size_t, std::size_t);

GGSP_INSTANTIATE(double)
GGSP_INSTANTIATE(cplx)

#undef GGSP_INSTANTIATE

}  // namespace ggsp
