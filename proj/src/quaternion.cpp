#include "splitcm/quaternion.hpp"

#include "splitcm/errors.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace splitcm {

QuatAlgebra QuatAlgebra::for_level(std::int64_t D, std::int64_t N) { return {D, -N}; }

QuatElem& QuatElem::operator+=(const QuatElem& o) {
  if (!(alg_ == o.alg_)) throw InputError("quaternions from different algebras");
  for (int i = 0; i < 4; ++i) x_[i] += o.x_[i];
  return *this;
}

QuatElem& QuatElem::operator-=(const QuatElem& o) {
  if (!(alg_ == o.alg_)) throw InputError("quaternions from different algebras");
  for (int i = 0; i < 4; ++i) x_[i] -= o.x_[i];
  return *this;
}

QuatElem& QuatElem::operator*=(const Rat& r) {
  for (auto& c : x_) c *= r;
  return *this;
}

QuatElem operator*(const QuatElem& x, const QuatElem& y) {
  if (!(x.alg_ == y.alg_)) throw InputError("quaternions from different algebras");
  const Rat a(x.alg_.a), b(x.alg_.b);
  const auto& p = x.x_;
  const auto& q = y.x_;
  return {x.alg_,
          {p[0] * q[0] + a * p[1] * q[1] + b * p[2] * q[2] - a * b * p[3] * q[3],
           p[0] * q[1] + p[1] * q[0] - b * p[2] * q[3] + b * p[3] * q[2],
           p[0] * q[2] + p[2] * q[0] + a * p[1] * q[3] - a * p[3] * q[1],
           p[0] * q[3] + p[3] * q[0] + p[1] * q[2] - p[2] * q[1]}};
}

QuatElem QuatElem::operator-() const { return {alg_, {-x_[0], -x_[1], -x_[2], -x_[3]}}; }

QuatElem QuatElem::conj() const { return {alg_, {x_[0], -x_[1], -x_[2], -x_[3]}}; }

Rat QuatElem::nrd() const {
  const Rat a(alg_.a), b(alg_.b);
  return x_[0] * x_[0] - a * x_[1] * x_[1] - b * x_[2] * x_[2] + a * b * x_[3] * x_[3];
}

QuatElem QuatElem::inverse() const {
  const Rat n = nrd();
  if (n == 0) throw InputError("zero quaternion has no inverse");
  return conj() * (Rat(1) / n);
}

bool QuatElem::is_zero() const {
  for (const auto& c : x_)
    if (c != 0) return false;
  return true;
}

std::string QuatElem::to_string() const {
  std::ostringstream os;
  os << '(' << splitcm::to_string(x_[0]) << ", " << splitcm::to_string(x_[1]) << ", "
     << splitcm::to_string(x_[2]) << ", " << splitcm::to_string(x_[3]) << ')';
  return os.str();
}

QuatLattice QuatLattice::from_generators(const QuatAlgebra& alg, const std::vector<QuatElem>& gens) {
  RatMatrix rows(gens.size(), 4);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < 4; ++j) rows(i, j) = gens[i][j];
  QuatLattice L;
  L.alg_ = alg;
  L.basis_ = lattice_hnf(rows);
  L.inverse_ = splitcm::inverse(L.basis_);
  return L;
}

QuatElem QuatLattice::element(std::size_t i) const {
  return {alg_, {basis_(i, 0), basis_(i, 1), basis_(i, 2), basis_(i, 3)}};
}

std::vector<QuatElem> QuatLattice::elements() const {
  std::vector<QuatElem> out;
  for (std::size_t i = 0; i < 4; ++i) out.push_back(element(i));
  return out;
}

std::vector<Rat> QuatLattice::coordinates(const QuatElem& x) const {
  std::vector<Rat> c(4, Rat(0));
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) c[j] += x[k] * inverse_(k, j);
  return c;
}

bool QuatLattice::contains(const QuatElem& x) const {
  for (const auto& c : coordinates(x))
    if (denominator(c) != 1) return false;
  return true;
}

QuatElem QuatLattice::combination(const std::vector<Int>& c) const {
  std::array<Rat, 4> x{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) x[j] += Rat(c[i]) * basis_(i, j);
  return {alg_, x};
}

GramMatrix QuatLattice::gram() const {
  const auto e = elements();
  RatMatrix B(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) B(i, j) = (e[i] * e[j].conj()).trd();
  return {B};
}

Order Order::from_lattice(const QuatLattice& L) {
  const QuatAlgebra& alg = L.algebra();
  if (!L.contains(QuatElem::scalar(alg, 1))) throw InputError("lattice does not contain 1");
  const auto e = L.elements();
  for (const auto& x : e)
    for (const auto& y : e)
      if (!L.contains(x * y)) throw InputError("lattice is not closed under multiplication");
  Order O;
  O.lattice_ = L;
  return O;
}

Order standard_order(const QuatAlgebra& alg) {
  std::vector<QuatElem> gens;
  for (int i = 0; i < 4; ++i) {
    std::array<Rat, 4> x{};
    x[i] = 1;
    gens.emplace_back(alg, x);
  }
  return Order::from_lattice(QuatLattice::from_generators(alg, gens));
}

std::array<QuatElem, 4> iz_generators(const HeckeContext& ctx, const QuadForm& Q) {
  if (Q.discriminant() != -ctx.N)
    throw InputError("form " + Q.to_string() + " does not have discriminant -" + std::to_string(ctx.N));
  const HeegnerPoint P = heegner_point(ctx, ctx.classRep);
  const QuatAlgebra alg = QuatAlgebra::for_level(ctx.D, ctx.N);
  const Rat den(2 * P.a1 * ctx.N);
  const QuatElem g(alg, {Rat(P.b1) / den, Rat(-1) / den, 0, 0});
  const QuatElem v = QuatElem::v(alg);
  const QuatElem x1 = g * (v * Rat(Q.a));
  const QuatElem x2 = g * (QuatElem::scalar(alg, Rat(ctx.N, 2)) + v * Rat(Q.b, 2));
  const QuatElem y1 = (QuatElem::scalar(alg, Rat(Q.b)) - v) * Rat(1, 2);
  const QuatElem y2 = QuatElem::scalar(alg, Rat(-Q.a));
  return {x1, x2, y1, y2};
}

QuatLattice build_Iz(const HeckeContext& ctx, const QuadForm& Q) {
  const auto g = iz_generators(ctx, Q);
  return QuatLattice::from_generators(QuatAlgebra::for_level(ctx.D, ctx.N), {g.begin(), g.end()});
}

namespace {

QuatElem standard(const QuatAlgebra& alg, std::size_t k) {
  std::array<Rat, 4> x{};
  x[k] = 1;
  return {alg, x};
}

// {x : e_i x in I for all i} (right) or {x : x e_i in I} (left)
Order multiplier_order(const QuatLattice& I, bool right) {
  const QuatAlgebra& alg = I.algebra();
  const auto e = I.elements();
  const RatMatrix Minv = inverse(I.basis());
  RatMatrix rows(16, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    // A(:, k) = coords of e_i * std_k (or std_k * e_i)
    RatMatrix A(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
      const QuatElem p = right ? e[i] * standard(alg, k) : standard(alg, k) * e[i];
      for (std::size_t r = 0; r < 4; ++r) A(r, k) = p[r];
    }
    const RatMatrix C = Minv.transpose() * A;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t k = 0; k < 4; ++k) rows(4 * i + r, k) = C(r, k);
  }
  const RatMatrix H = lattice_hnf(rows);
  const RatMatrix dual = inverse(H).transpose();
  std::vector<QuatElem> gens;
  for (std::size_t r = 0; r < 4; ++r) gens.emplace_back(alg, std::array<Rat, 4>{dual(r, 0), dual(r, 1), dual(r, 2), dual(r, 3)});
  return Order::from_lattice(QuatLattice::from_generators(alg, gens));
}

Rat fourth_root(const Rat& r) {
  auto root4 = [](const Int& n) {
    Int s = boost::multiprecision::sqrt(boost::multiprecision::sqrt(n));
    if (s * s * s * s != n) throw InternalError("discriminant ratio is not a fourth power");
    return s;
  };
  if (r <= 0) throw InternalError("non-positive lattice discriminant");
  return Rat(root4(numerator(r)), root4(denominator(r)));
}

}  // namespace

Order right_order(const QuatLattice& I) { return multiplier_order(I, true); }
Order left_order(const QuatLattice& I) { return multiplier_order(I, false); }

Int order_discriminant(const Order& O) { return to_int(O.lattice().discriminant()); }

Rat ideal_norm(const QuatLattice& I, std::int64_t D) { return fourth_root(I.discriminant() / Rat(D * D)); }

RatMatrix symplectic_matrix(const HeckeContext& ctx, const QuadForm& Q) {
  const auto g = iz_generators(ctx, Q);
  const QuatAlgebra alg = QuatAlgebra::for_level(ctx.D, ctx.N);
  const Rat nI = ideal_norm(build_Iz(ctx, Q), ctx.D);
  const QuatElem uinv = QuatElem::u(alg) * (Rat(1) / Rat(ctx.D));
  RatMatrix E(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) E(i, j) = (uinv * g[i] * g[j].conj()).trd() / nI;
  return E;
}

std::vector<QuatElem> units(const Order& O) {
  std::vector<QuatElem> out;
  for (const auto& c : vectors_of_norm(O.lattice().gram(), Rat(1))) out.push_back(O.lattice().combination(c));
  return out;
}

std::int64_t unit_count(const Order& O) { return static_cast<std::int64_t>(units(O).size()) / 2; }

GrossLattice gross_lattice(const Order& O) {
  const QuatAlgebra& alg = O.algebra();
  std::vector<QuatElem> gens{QuatElem::scalar(alg, 1)};
  for (const auto& e : O.lattice().elements()) gens.push_back(e * Rat(2));
  const QuatLattice S = QuatLattice::from_generators(alg, gens);
  const auto s = S.elements();
  IntMatrix t(4, 1);
  for (std::size_t i = 0; i < 4; ++i) t(i, 0) = to_int(s[i].trd());
  const IntMatrix K = left_kernel(t);
  if (K.rows() != 3) throw InternalError("trace-zero part of Z + 2O is not of rank 3");
  GrossLattice G;
  for (std::size_t r = 0; r < 3; ++r) {
    QuatElem x = QuatElem::scalar(alg, 0);
    for (std::size_t i = 0; i < 4; ++i) x += s[i] * Rat(K(r, i));
    G.basis.push_back(x);
  }
  RatMatrix B(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) B(i, j) = (G.basis[i] * G.basis[j].conj()).trd();
  G.gram = {B};
  return G;
}

std::vector<std::int64_t> gross_theta(const Order& O, std::int64_t nmax) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(nmax) + 1, 0);
  counts[0] = 1;
  for (const auto& v : short_vectors(gross_lattice(O).gram, Rat(nmax))) {
    const Int n = to_int(v.norm);
    ++counts[static_cast<std::size_t>(to_i64(n))];
  }
  return counts;
}

namespace {

std::string key_of(const QuatElem& x) { return x.to_string(); }

}  // namespace

EmbeddingCount embedding_count(const Order& O, std::int64_t N) {
  if (mod(N, 4) != 3) throw InputError("embedding_count needs N = 3 mod 4");
  const std::int64_t omega = unit_count(O);
  const std::int64_t vecs = count_lattice_norm(gross_lattice(O).gram, Rat(N));
  if (vecs % omega != 0) throw InternalError("Gross lattice count is not divisible by the unit count");
  EmbeddingCount r{vecs / omega, 0};

  // roots w of w^2 - w + (N+1)/4, i.e. trd = 1 and nrd = (N+1)/4
  std::vector<QuatElem> roots;
  for (const auto& c : vectors_of_norm(O.lattice().gram(), Rat((N + 1) / 4))) {
    QuatElem w = O.lattice().combination(c);
    if (w.trd() == 1) roots.push_back(std::move(w));
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < roots.size(); ++i) index[key_of(roots[i])] = i;
  std::vector<std::size_t> parent(roots.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  const auto us = units(O);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (const auto& e : us) {
      const QuatElem c = e.inverse() * roots[i] * e;
      const auto it = index.find(key_of(c));
      if (it == index.end()) throw InternalError("unit conjugate of an embedding left the order");
      parent[find(i)] = find(it->second);
    }
  std::int64_t orbits = 0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (find(i) == i) ++orbits;
  r.direct = orbits;
  if (r.direct != r.gross)
    throw InternalError("embedding counts disagree: Gross lattice gives " + std::to_string(r.gross) +
                        ", root orbits give " + std::to_string(r.direct));
  return r;
}

Order conjugate_order(const Order& O, const QuatElem& x) {
  const QuatElem xi = x.inverse();
  std::vector<QuatElem> gens;
  for (const auto& e : O.lattice().elements()) gens.push_back(xi * e * x);
  return Order::from_lattice(QuatLattice::from_generators(O.algebra(), gens));
}

bool orders_isometric(const Order& O1, const Order& O2) {
  if (O1.lattice() == O2.lattice()) return true;
  if (unit_count(O1) != unit_count(O2)) return false;
  if (gross_theta(O1, 20) != gross_theta(O2, 20)) return false;
  return find_isometry(O1.lattice().gram(), O2.lattice().gram()).has_value();
}

}  // namespace splitcm
