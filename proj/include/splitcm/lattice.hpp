#pragma once

#include "splitcm/arith.hpp"
#include "splitcm/linalg.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace splitcm {

/// Positive definite bilinear form B on Z^n. The norm of x is B(x, x)/2, so
/// for a quaternion lattice with B(x, y) = trd(x conj y) the norm is nrd.
struct GramMatrix {
  RatMatrix B;

  std::size_t rank() const { return B.rows(); }
  Rat norm(const std::vector<Int>& x) const;
  Rat inner(const std::vector<Int>& x, const std::vector<Int>& y) const;
  Rat determinant() const { return splitcm::determinant(B); }
  /// B(x, y) = 2 * sum of coefficient pairs, for sum_i d_i x_i^2 style norm forms.
  static GramMatrix from_norm_form(const RatMatrix& symmetricNorm);
};

struct LLLResult {
  GramMatrix gram;  // Gram of the reduced basis
  IntMatrix U;      // rows: reduced basis in the input coordinates
};

/// Exact LLL with delta = 99/100.
LLLResult lll(const GramMatrix& G);

struct LatticeVector {
  std::vector<Int> coords;
  Rat norm;
};

/// All nonzero vectors of norm at most maxNorm (both signs), in the input coordinates.
std::vector<LatticeVector> short_vectors(const GramMatrix& G, const Rat& maxNorm,
                                         std::size_t budget = 5'000'000);
std::vector<std::vector<Int>> vectors_of_norm(const GramMatrix& G, const Rat& n);
std::int64_t count_lattice_norm(const GramMatrix& G, const Rat& n);

/// Integer matrix M (rows: images of the first lattice's basis, in the second
/// lattice's coordinates) with M B2 M^T = B1, if one exists.
std::optional<IntMatrix> find_isometry(const GramMatrix& G1, const GramMatrix& G2);

}  // namespace splitcm
