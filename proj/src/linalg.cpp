#include "splitcm/linalg.hpp"

#include "splitcm/errors.hpp"

#include <sstream>

namespace splitcm {

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_int(m(i, j));
  return r;
}

Int common_denominator(const RatMatrix& m) {
  Int d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = boost::multiprecision::lcm(d, denominator(m(i, j)));
  return d;
}

namespace {

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= f * m(src, j);
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

// floor(a / b) for b > 0
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && a < 0) q -= 1;
  return q;
}

}  // namespace

HermiteForm hermite_form(const IntMatrix& A) {
  IntMatrix H = A;
  IntMatrix U = IntMatrix::identity(A.rows());
  std::size_t p = 0;
  for (std::size_t j = 0; j < H.cols() && p < H.rows(); ++j) {
    for (;;) {
      // smallest nonzero entry of column j at or below row p becomes the pivot
      std::size_t best = H.rows();
      for (std::size_t i = p; i < H.rows(); ++i)
        if (H(i, j) != 0 && (best == H.rows() || abs(H(i, j)) < abs(H(best, j)))) best = i;
      if (best == H.rows()) break;
      H.swap_rows(p, best);
      U.swap_rows(p, best);
      bool done = true;
      for (std::size_t i = p + 1; i < H.rows(); ++i) {
        if (H(i, j) == 0) continue;
        const Int f = H(i, j) / H(p, j);
        add_row_multiple(H, i, p, f);
        add_row_multiple(U, i, p, f);
        if (H(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (H(p, j) == 0) continue;
    if (H(p, j) < 0) {
      negate_row(H, p);
      negate_row(U, p);
    }
    for (std::size_t i = 0; i < p; ++i) {
      const Int f = floor_div(H(i, j), H(p, j));
      add_row_multiple(H, i, p, f);
      add_row_multiple(U, i, p, f);
    }
    ++p;
  }
  return {std::move(H), std::move(U), p};
}

IntMatrix hnf(const IntMatrix& A) {
  const HermiteForm hf = hermite_form(A);
  IntMatrix r(hf.rank, A.cols());
  for (std::size_t i = 0; i < hf.rank; ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) r(i, j) = hf.H(i, j);
  return r;
}

IntMatrix left_kernel(const IntMatrix& A) {
  const HermiteForm hf = hermite_form(A);
  IntMatrix k(A.rows() - hf.rank, A.rows());
  for (std::size_t i = hf.rank; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.rows(); ++j) k(i - hf.rank, j) = hf.U(i, j);
  return hnf(k);
}

RatMatrix lattice_hnf(const RatMatrix& rows) {
  const Int d = common_denominator(rows);
  IntMatrix scaled(rows.rows(), rows.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) scaled(i, j) = to_int(rows(i, j) * Rat(d));
  const IntMatrix h = hnf(scaled);
  if (h.rows() != rows.cols()) throw InputError("lattice generators do not span a full-rank lattice");
  RatMatrix r = to_rat(h);
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) /= Rat(d);
  return r;
}

Rat determinant(RatMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("determinant of a non-square matrix");
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      const Rat f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("inverse of a non-square matrix");
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw InputError("matrix is singular");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    const Rat piv = a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) /= piv;
      inv(c, k) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rat f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

std::string to_string(const RatMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace splitcm
