#include "splitcm/lattice.hpp"

#include "splitcm/errors.hpp"

#include <cmath>
#include <functional>

namespace splitcm {

Rat GramMatrix::inner(const std::vector<Int>& x, const std::vector<Int>& y) const {
  Rat s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j)
      if (y[j] != 0) s += B(i, j) * Rat(x[i] * y[j]);
  }
  return s;
}

Rat GramMatrix::norm(const std::vector<Int>& x) const { return inner(x, x) / 2; }

GramMatrix GramMatrix::from_norm_form(const RatMatrix& symmetricNorm) {
  RatMatrix b = symmetricNorm;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= 2;
  return {b};
}

namespace {

struct GSO {
  std::vector<std::vector<Rat>> mu;
  std::vector<Rat> r;  // squared lengths of the orthogonalized vectors
};

GSO gram_schmidt(const RatMatrix& G) {
  const std::size_t n = G.rows();
  GSO g{std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))), std::vector<Rat>(n, Rat(0))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rat s = G(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= g.mu[j][k] * g.mu[i][k] * g.r[k];
      g.mu[i][j] = s / g.r[j];
    }
    Rat s = G(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= g.mu[i][k] * g.mu[i][k] * g.r[k];
    if (s <= 0) throw InputError("Gram matrix is not positive definite");
    g.r[i] = s;
  }
  return g;
}

Int round_rat(const Rat& x) {
  // nearest integer, halves rounded down
  const Rat shifted = x + Rat(1, 2);
  Int q = numerator(shifted) / denominator(shifted);
  if (numerator(shifted) < 0 && numerator(shifted) % denominator(shifted) != 0) q -= 1;
  return q;
}

// b_k <- b_k - f b_l on both the Gram matrix and the transform
void reduce_vector(RatMatrix& G, IntMatrix& U, std::size_t k, std::size_t l, const Int& f) {
  const std::size_t n = G.rows();
  const Rat fr(f);
  for (std::size_t j = 0; j < U.cols(); ++j) U(k, j) -= f * U(l, j);
  const Rat gkl = G(k, l), gll = G(l, l);
  G(k, k) = G(k, k) - 2 * fr * gkl + fr * fr * gll;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) continue;
    G(k, j) -= fr * G(l, j);
    G(j, k) = G(k, j);
  }
}

void swap_vectors(RatMatrix& G, IntMatrix& U, std::size_t a, std::size_t b) {
  U.swap_rows(a, b);
  G.swap_rows(a, b);
  for (std::size_t i = 0; i < G.rows(); ++i) std::swap(G(i, a), G(i, b));
}

}  // namespace

LLLResult lll(const GramMatrix& G0) {
  RatMatrix G = G0.B;
  const std::size_t n = G.rows();
  IntMatrix U = IntMatrix::identity(n);
  const Rat delta(99, 100);
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 100000) throw ResourceError("LLL did not terminate");
    for (std::size_t l = k; l-- > 0;) {
      const GSO g = gram_schmidt(G);
      const Rat& m = g.mu[k][l];
      if (abs(m) > Rat(1, 2)) reduce_vector(G, U, k, l, round_rat(m));
    }
    const GSO g = gram_schmidt(G);
    if (g.r[k] < (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.r[k - 1]) {
      swap_vectors(G, U, k, k - 1);
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
  return {{G}, U};
}

std::vector<LatticeVector> short_vectors(const GramMatrix& G0, const Rat& maxNorm, std::size_t budget) {
  const std::size_t n = G0.rank();
  std::vector<LatticeVector> out;
  if (maxNorm <= 0 || n == 0) return out;
  const LLLResult red = lll(G0);
  // norm(x) = sum_i q_i (x_i + sum_{j>i} m_ij x_j)^2 with the quadratic form B/2
  const GSO g = gram_schmidt(red.gram.B);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = static_cast<double>(g.r[i]) / 2.0;
    for (std::size_t j = 0; j < i; ++j) m[j][i] = static_cast<double>(g.mu[i][j]);
  }
  const double C = static_cast<double>(maxNorm) * (1.0 + 1e-9) + 1e-9;
  std::vector<std::int64_t> x(n, 0);
  std::size_t visited = 0;

  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double remaining) {
    double centre = 0;
    for (std::size_t j = i + 1; j < n; ++j) centre -= m[i][j] * static_cast<double>(x[j]);
    const double span = std::sqrt(std::max(remaining, 0.0) / q[i]);
    const auto lo = static_cast<std::int64_t>(std::ceil(centre - span - 1e-9));
    const auto hi = static_cast<std::int64_t>(std::floor(centre + span + 1e-9));
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (++visited > budget) throw ResourceError("short vector enumeration exceeded its budget");
      x[i] = v;
      const double d = static_cast<double>(v) - centre;
      const double rest = remaining - q[i] * d * d;
      if (rest < -1e-9 * (1.0 + C)) continue;
      if (i == 0) {
        bool zero = true;
        for (auto e : x) zero = zero && e == 0;
        if (zero) continue;
        std::vector<Int> orig(n, Int(0));
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) orig[b] += Int(x[a]) * red.U(a, b);
        Rat nr = G0.norm(orig);
        if (nr <= maxNorm) out.push_back({std::move(orig), std::move(nr)});
      } else {
        rec(i - 1, rest);
      }
    }
    x[i] = 0;
  };
  rec(n - 1, C);
  return out;
}

std::vector<std::vector<Int>> vectors_of_norm(const GramMatrix& G, const Rat& n) {
  std::vector<std::vector<Int>> out;
  if (n == 0) {
    out.emplace_back(G.rank(), Int(0));
    return out;
  }
  for (auto& v : short_vectors(G, n))
    if (v.norm == n) out.push_back(std::move(v.coords));
  return out;
}

std::int64_t count_lattice_norm(const GramMatrix& G, const Rat& n) {
  if (n < 0) return 0;
  return static_cast<std::int64_t>(vectors_of_norm(G, n).size());
}

std::optional<IntMatrix> find_isometry(const GramMatrix& G1, const GramMatrix& G2) {
  const std::size_t n = G1.rank();
  if (G2.rank() != n) return std::nullopt;
  if (G1.determinant() != G2.determinant()) return std::nullopt;
  const LLLResult red = lll(G1);
  const RatMatrix& B = red.gram.B;
  Rat maxNorm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rat ni = B(i, i) / 2;
    if (ni > maxNorm) maxNorm = ni;
  }
  const auto pool = short_vectors(G2, maxNorm);
  std::vector<std::vector<const LatticeVector*>> cand(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& v : pool)
      if (v.norm == B(i, i) / 2) cand[i].push_back(&v);

  std::vector<const LatticeVector*> chosen(n, nullptr);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return true;
    for (const LatticeVector* v : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = G2.inner(v->coords, chosen[j]->coords) == B(i, j);
      if (!ok) continue;
      chosen[i] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  // images of the reduced basis; pull back to the original basis of G1
  IntMatrix Y(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Y(i, j) = chosen[i]->coords[j];
  const RatMatrix M = inverse(to_rat(red.U)) * to_rat(Y);
  return to_int(M);
}

}  // namespace splitcm
