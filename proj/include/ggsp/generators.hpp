#pragma once

#include <cstddef>
#include <random>
#include <string_view>
#include <vector>

#include "ggsp/frames.hpp"

namespace ggsp {

/// The three planar frames from the worked examples, built from exact
/// trig/sqrt expressions: fig1 = {e1, e2, (1,1)/sqrt2}, fig2 = {e1, e2,
/// (-1,1)/sqrt2}, fig3 = ten unit vectors at angles 2k pi / 10, k = 1..10.
/// Throws InputError for any other name.
FrameSeq<double> builtin_example(std::string_view name);

using Rng = std::mt19937_64;

struct RandomFrameShape {
  std::size_t dim = 2;
  std::size_t count = 2;
  std::size_t forced_dependencies = 0;  // vectors replaced by combinations of predecessors
  std::size_t zero_vectors = 0;
};

/// A random sequence together with its known dependency structure.
template <Scalar T>
struct GeneratedFrame {
  FrameSeq<T> frame;
  std::vector<std::size_t> dependent;  // 1-based, ground truth
  std::vector<std::size_t> zeros;      // 1-based
};

/// Entries drawn from a unit normal (real and imaginary parts independently
/// for complex). Forced dependencies are placed at random positions with at
/// least one nonzero predecessor.
template <Scalar T>
GeneratedFrame<T> random_frame(Rng& rng, const RandomFrameShape& shape);

/// count <= dim generic vectors; linearly independent with probability one.
template <Scalar T>
FrameSeq<T> random_independent(Rng& rng, std::size_t dim, std::size_t count);

/// Random orthonormal basis of the whole space with zero vectors inserted
/// at random positions.
template <Scalar T>
FrameSeq<T> random_zero_extended_onb(Rng& rng, std::size_t dim, std::size_t zero_vectors);

template <Scalar T>
Vector<T> random_vector(Rng& rng, std::size_t dim);

}  // namespace ggsp
