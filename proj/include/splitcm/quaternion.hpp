#pragma once

#include "splitcm/arith.hpp"
#include "splitcm/hecke.hpp"
#include "splitcm/lattice.hpp"
#include "splitcm/linalg.hpp"
#include "splitcm/quadratic.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace splitcm {

/// (a, b)_Q with basis 1, u, v, uv; u^2 = a, v^2 = b, uv = -vu.
struct QuatAlgebra {
  std::int64_t a = -1;
  std::int64_t b = -1;

  /// (D, -N)
  static QuatAlgebra for_level(std::int64_t D, std::int64_t N);
  friend bool operator==(const QuatAlgebra&, const QuatAlgebra&) = default;
};

class QuatElem {
 public:
  QuatElem() = default;
  QuatElem(const QuatAlgebra& alg, std::array<Rat, 4> x) : alg_(alg), x_(std::move(x)) {}
  static QuatElem scalar(const QuatAlgebra& alg, const Rat& r) { return {alg, {r, 0, 0, 0}}; }
  static QuatElem u(const QuatAlgebra& alg) { return {alg, {0, 1, 0, 0}}; }
  static QuatElem v(const QuatAlgebra& alg) { return {alg, {0, 0, 1, 0}}; }

  const QuatAlgebra& algebra() const { return alg_; }
  const std::array<Rat, 4>& coords() const { return x_; }
  const Rat& operator[](std::size_t i) const { return x_[i]; }

  QuatElem& operator+=(const QuatElem& o);
  QuatElem& operator-=(const QuatElem& o);
  QuatElem& operator*=(const Rat& r);
  friend QuatElem operator+(QuatElem x, const QuatElem& y) { return x += y; }
  friend QuatElem operator-(QuatElem x, const QuatElem& y) { return x -= y; }
  friend QuatElem operator*(QuatElem x, const Rat& r) { return x *= r; }
  friend QuatElem operator*(const Rat& r, QuatElem x) { return x *= r; }
  friend QuatElem operator*(const QuatElem& x, const QuatElem& y);
  QuatElem operator-() const;

  QuatElem conj() const;
  Rat trd() const { return 2 * x_[0]; }
  Rat nrd() const;
  QuatElem inverse() const;
  bool is_zero() const;
  std::string to_string() const;

  friend bool operator==(const QuatElem&, const QuatElem&) = default;

 private:
  QuatAlgebra alg_;
  std::array<Rat, 4> x_{};
};

/// Full-rank Z-lattice in B, stored by its canonical Hermite basis.
class QuatLattice {
 public:
  QuatLattice() = default;
  static QuatLattice from_generators(const QuatAlgebra& alg, const std::vector<QuatElem>& gens);

  const QuatAlgebra& algebra() const { return alg_; }
  const RatMatrix& basis() const { return basis_; }
  std::vector<QuatElem> elements() const;
  QuatElem element(std::size_t i) const;
  bool contains(const QuatElem& x) const;
  /// Coordinates of x in the basis (rational if x is outside the lattice).
  std::vector<Rat> coordinates(const QuatElem& x) const;
  QuatElem combination(const std::vector<Int>& c) const;
  /// B(x, y) = trd(x conj y) on the basis.
  GramMatrix gram() const;
  Rat discriminant() const { return gram().determinant(); }
  std::string to_string() const { return splitcm::to_string(basis_); }

  friend bool operator==(const QuatLattice& x, const QuatLattice& y) {
    return x.alg_ == y.alg_ && x.basis_ == y.basis_;
  }

 private:
  QuatAlgebra alg_;
  RatMatrix basis_;
  RatMatrix inverse_;
};

class Order {
 public:
  /// Throws InputError unless the lattice contains 1 and is closed under products.
  static Order from_lattice(const QuatLattice& L);
  const QuatLattice& lattice() const { return lattice_; }
  const QuatAlgebra& algebra() const { return lattice_.algebra(); }
  friend bool operator==(const Order& x, const Order& y) { return x.lattice_ == y.lattice_; }

 private:
  QuatLattice lattice_;
};

/// Z<1, u, v, uv>
Order standard_order(const QuatAlgebra& alg);

/// x1, x2, y1, y2 spanning I_z for the form Q at the context's Heegner point.
std::array<QuatElem, 4> iz_generators(const HeckeContext& ctx, const QuadForm& Q);
QuatLattice build_Iz(const HeckeContext& ctx, const QuadForm& Q);

Order right_order(const QuatLattice& I);
Order left_order(const QuatLattice& I);

/// det(trd(e_i conj e_j)); equals D^2 exactly for maximal orders here.
Int order_discriminant(const Order& O);
/// N(I) with disc(I) = D^2 N(I)^4.
Rat ideal_norm(const QuatLattice& I, std::int64_t D);
/// E(x, y) = trd(u^-1 x conj y) / N(I) on x1, x2, y1, y2.
RatMatrix symplectic_matrix(const HeckeContext& ctx, const QuadForm& Q);

std::vector<QuatElem> units(const Order& O);
std::int64_t unit_count(const Order& O);

struct GrossLattice {
  std::vector<QuatElem> basis;  // trace-zero part of Z + 2O
  GramMatrix gram;              // B(x, y) = trd(x conj y), norm = nrd
};
GrossLattice gross_lattice(const Order& O);
/// Vector counts of the Gross lattice for norms 0..nmax.
std::vector<std::int64_t> gross_theta(const Order& O, std::int64_t nmax);

struct EmbeddingCount {
  std::int64_t gross;   // vectors of norm N in S^0 divided by omega_R
  std::int64_t direct;  // roots of w^2 - w + (N+1)/4 modulo unit conjugation
};
/// Throws InternalError when the two counts disagree.
EmbeddingCount embedding_count(const Order& O, std::int64_t N);

Order conjugate_order(const Order& O, const QuatElem& x);
bool orders_isometric(const Order& O1, const Order& O2);

}  // namespace splitcm
