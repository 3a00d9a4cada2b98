#include "splitcm/central.hpp"

#include "splitcm/errors.hpp"
#include "splitcm/theta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace splitcm {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex errorMutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(errorMutex);
          if (!error) error = std::current_exception();
          next = n;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

ClassRepository::ClassRepository(std::int64_t D) : D_(D) {
  validate_discriminant(D);
  if (mod(D, 4) != 1 || !is_prime(-D)) throw InputError("D must be minus a prime, D = 1 mod 4");
}

std::size_t ClassRepository::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

Order ClassRepository::order(int id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.at(static_cast<std::size_t>(id)).order;
}

std::int64_t ClassRepository::omega(int id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.at(static_cast<std::size_t>(id)).omega;
}

Rat ClassRepository::mass() const {
  std::lock_guard<std::mutex> lock(mutex_);
  Rat m = 0;
  for (const auto& e : entries_) m += Rat(1) / Rat(2 * e.omega);
  return m;
}

Rat ClassRepository::target_mass() const { return Rat(-D_ - 1) / Rat(24); }

bool ClassRepository::complete() const { return mass() == target_mass(); }

std::optional<int> ClassRepository::find(const Order& O) const {
  std::vector<Entry> snapshot;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    snapshot = entries_;
  }
  for (std::size_t i = 0; i < snapshot.size(); ++i)
    if (orders_isometric(snapshot[i].order, O)) return static_cast<int>(i);
  return std::nullopt;
}

int ClassRepository::find_or_add(const Order& O) {
  if (order_discriminant(O) != Int(D_ * D_)) throw InputError("order is not maximal");
  std::lock_guard<std::mutex> lock(mutex_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (orders_isometric(entries_[i].order, O)) return static_cast<int>(i);
  entries_.push_back({O, unit_count(O)});
  Rat m = 0;
  for (const auto& e : entries_) m += Rat(1) / Rat(2 * e.omega);
  if (m > target_mass()) throw InternalError("class mass exceeds the Eichler mass; isometry test is wrong");
  return static_cast<int>(entries_.size() - 1);
}

void ClassRepository::discover(const std::vector<std::int64_t>& levels) {
  if (levels.empty()) throw InputError("discover needs at least one level");
  for (auto N : levels) {
    if (complete()) return;
    const HeckeContext ctx = HeckeContext::make(D_, N, 30);
    for (const auto& Q : reduced_forms(-N)) {
      find_or_add(right_order(build_Iz(ctx, Q)));
      if (complete()) return;
    }
  }
  if (!complete())
    throw IncompleteClassListError("class list incomplete for D = " + std::to_string(D_) + ": mass " +
                                   to_string(mass()) + " of " + to_string(target_mass()) + " found");
}

void ClassRepository::ensure_complete(std::int64_t maxLevel) {
  if (complete()) return;
  discover(admissible_levels(D_, maxLevel));
}

std::vector<Order> discover_classes(std::int64_t D, const std::vector<std::int64_t>& levels) {
  ClassRepository repo(D);
  repo.discover(levels);
  std::vector<Order> out;
  for (std::size_t i = 0; i < repo.size(); ++i) out.push_back(repo.order(static_cast<int>(i)));
  return out;
}

namespace {

std::int64_t snap(const BigComplex& z, int digits, const QuadForm& Q) {
  const Real re = z.re();
  const std::int64_t k = re.round_to_i64();
  const BigComplex diff = z - BigComplex(static_cast<long>(k), z.digits());
  if (!(diff.abs().log10_abs() < -digits / 2.0))
    throw ConventionError("normalized theta value for " + Q.to_string() + " is not an integer: " +
                          z.rounded(20).to_string());
  return k;
}

}  // namespace

Classification classify(const HeckeContext& ctx, ClassRepository& repo, unsigned threads) {
  if (repo.D() != ctx.D) throw InputError("repository belongs to another discriminant");
  repo.ensure_complete();
  const auto forms = reduced_forms(-ctx.N);
  const BigComplex etaFactor = eta_norm_factor(ctx);
  BigComplex psiBar(1L, ctx.digits);
  if (!ctx.classRep.is_unit_ideal()) psiBar = psi_ideal(ctx, conjugate(ctx.classRep));

  Classification out{ctx, std::vector<ThetaRecord>(forms.size()), {}};
  parallel_for(forms.size(), threads, [&](std::size_t i) {
    ThetaRecord& r = out.records[i];
    r.form = forms[i];
    r.theta = theta_at_point(ctx, forms[i]);
    r.thetaHat = (r.theta / (etaFactor * psiBar)).with_digits(ctx.digits);
    const auto id = repo.find(right_order(build_Iz(ctx, forms[i])));
    if (!id) throw InternalError("right order of " + forms[i].to_string() + " is in no known class");
    r.classId = *id;
  });
  for (auto& r : out.records) {
    r.snapped = snap(r.thetaHat, ctx.digits, r.form);
    r.eps = r.snapped < 0 ? -1 : 1;
  }

  const std::size_t t = repo.size();
  out.rows.resize(t);
  parallel_for(t, threads, [&](std::size_t c) {
    ClassRow& row = out.rows[c];
    row.N = ctx.N;
    row.classId = static_cast<int>(c);
    row.omega = repo.omega(static_cast<int>(c));
    const EmbeddingCount ec = embedding_count(repo.order(static_cast<int>(c)), ctx.N);
    row.hR = ec.gross;
    row.hRDirect = ec.direct;
  });
  for (const auto& r : out.records) {
    ClassRow& row = out.rows[static_cast<std::size_t>(r.classId)];
    const std::int64_t a = std::llabs(r.snapped);
    if (row.count > 0 && row.absTheta != a)
      throw ConventionError("theta values in order class " + std::to_string(r.classId) + " at N = " +
                            std::to_string(ctx.N) + " differ by more than a sign: " + std::to_string(row.absTheta) +
                            " vs " + std::to_string(a) + " (" + r.form.to_string() + ")");
    row.absTheta = a;
    ++row.count;
    row.hEps += r.eps;
  }
  std::stable_sort(out.rows.begin(), out.rows.end(), [](const ClassRow& x, const ClassRow& y) {
    return std::tie(x.absTheta, x.classId) < std::tie(y.absTheta, y.classId);
  });
  return out;
}

Classification classify(const HeckeContext& ctx, unsigned threads) {
  ClassRepository repo(ctx.D);
  return classify(ctx, repo, threads);
}

LValue l_value_from(const Classification& c) {
  const HeckeContext& ctx = c.ctx;
  const BigComplex& anyTheta = c.records.front().theta;
  const auto bits = anyTheta.precision();
  const Real pi = Real::pi(bits);
  const Real sqrtN = sqrt(Real(static_cast<long>(ctx.N), bits));
  const long omegaN = 2;

  BigComplex psiBar(1L, ctx.digits);
  if (!ctx.classRep.is_unit_ideal()) psiBar = psi_ideal(ctx, conjugate(ctx.classRep));

  BigComplex sum{Real(bits), Real(bits), ctx.digits};
  for (const auto& r : c.records) sum += r.theta / psiBar;
  BigComplex direct = sum * (pi * 2L / (sqrtN * omegaN));

  // h^eps in the grouped formula counts embeddings, two per split-CM orbit
  std::int64_t weighted = 0;
  for (const auto& row : c.rows) weighted += row.absTheta * 2 * row.hEps;
  const BigComplex etaFactor = eta_norm_factor(ctx);
  BigComplex grouped = etaFactor * (pi / (sqrtN * omegaN));
  grouped *= static_cast<long>(weighted);

  Real diff = (direct - grouped).abs();
  if (!diff.is_zero() && diff.log10_abs() > -(ctx.digits - 5))
    throw InternalError("central value formulas disagree by " + diff.to_string(5));
  return {grouped.with_digits(ctx.digits), direct.with_digits(ctx.digits), grouped.with_digits(ctx.digits),
          etaFactor, diff};
}

LValue l_value(const HeckeContext& ctx, ClassRepository& repo, unsigned threads) {
  return l_value_from(classify(ctx, repo, threads));
}

LValue l_value(const HeckeContext& ctx, unsigned threads) {
  ClassRepository repo(ctx.D);
  return l_value(ctx, repo, threads);
}

std::complex<double> oracle_l_value(const HeckeContext& ctx, double X) {
  if (class_number(ctx.D) != 1) throw UnsupportedError("the oracle needs h(D) = 1");
  if (!(X >= 1)) throw InputError("oracle cutoff must be at least 1");
  const auto maxNorm = static_cast<std::int64_t>(40 * X);
  std::complex<double> sum = 0, carry = 0;
  for_each_ideal(ctx.D, maxNorm, [&](std::int64_t m, const QuadIdeal& I) {
    const std::int64_t n = m * m * I.norm();
    const std::complex<double> p = psi_ideal_double(ctx, m, I);
    if (p == 0.0) return;
    // Kahan summation
    const std::complex<double> y = p * (std::exp(-static_cast<double>(n) / X) / static_cast<double>(n)) - carry;
    const std::complex<double> t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  });
  return sum;
}

std::vector<ClassRow> Table::rows() const {
  std::vector<ClassRow> out;
  for (const auto& l : levels) out.insert(out.end(), l.rows.begin(), l.rows.end());
  return out;
}

Table make_table(std::int64_t D, std::int64_t nmax, const TableOptions& opts) {
  if (nmax < 11) throw InputError("nmax must be at least 11");
  ClassRepository repo(D);
  repo.ensure_complete();
  const auto levels = admissible_levels(D, nmax);
  std::vector<std::optional<Classification>> results(levels.size());
  std::vector<std::optional<TableError>> errors(levels.size());
  parallel_for(levels.size(), opts.threads, [&](std::size_t i) {
    try {
      HeckeContext ctx = HeckeContext::make(D, levels[i], opts.digits);
      ctx.eta = opts.eta;
      ctx.point = opts.point;
      if (opts.load) results[i] = opts.load(ctx);
      if (!results[i]) {
        results[i] = classify(ctx, repo, 1);
        if (opts.save) opts.save(*results[i]);
      }
    } catch (const Error& e) {
      errors[i] = TableError{levels[i], e.kind(), e.what(), e.code()};
    }
  });
  Table t;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (results[i]) t.levels.push_back(std::move(*results[i]));
    if (errors[i]) t.errors.push_back(*errors[i]);
  }
  return t;
}

}  // namespace splitcm
