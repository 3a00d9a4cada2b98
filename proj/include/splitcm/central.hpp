#pragma once

#include "splitcm/bigcomplex.hpp"
#include "splitcm/hecke.hpp"
#include "splitcm/quadratic.hpp"
#include "splitcm/quaternion.hpp"

#include <complex>
#include <functional>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace splitcm {

struct ThetaRecord {
  QuadForm form;
  BigComplex theta;     // theta(Q tau), unnormalized
  BigComplex thetaHat;  // normalized value
  std::int64_t snapped = 0;
  int classId = -1;
  int eps = 1;
};

struct ClassRow {
  std::int64_t N = 0;
  std::int64_t absTheta = 0;
  std::int64_t count = 0;
  std::int64_t hEps = 0;
  std::int64_t hR = 0;        // optimal embeddings, Gross lattice count
  std::int64_t hRDirect = 0;  // same, by root orbits
  int classId = -1;
  std::int64_t omega = 0;

  friend bool operator==(const ClassRow&, const ClassRow&) = default;
};

/// Conjugacy classes of maximal orders of the quaternion algebra ramified at
/// |D| and infinity. Append-only; safe to share between threads.
class ClassRepository {
 public:
  explicit ClassRepository(std::int64_t D);

  std::int64_t D() const { return D_; }
  std::size_t size() const;
  Order order(int id) const;
  std::int64_t omega(int id) const;
  Rat mass() const;
  Rat target_mass() const;
  bool complete() const;

  std::optional<int> find(const Order& O) const;
  int find_or_add(const Order& O);

  /// Adds the right orders of every split-CM point at the given levels,
  /// stopping once the mass is met. Throws IncompleteClassListError otherwise.
  void discover(const std::vector<std::int64_t>& levels);
  /// Scans admissible levels upward until the mass is met.
  void ensure_complete(std::int64_t maxLevel = 5000);

 private:
  struct Entry {
    Order order;
    std::int64_t omega;
  };
  std::int64_t D_;
  mutable std::mutex mutex_;
  std::vector<Entry> entries_;
};

std::vector<Order> discover_classes(std::int64_t D, const std::vector<std::int64_t>& levels);

struct Classification {
  HeckeContext ctx;
  std::vector<ThetaRecord> records;
  std::vector<ClassRow> rows;
};

/// Parallel over forms; the repository is completed first if needed.
Classification classify(const HeckeContext& ctx, ClassRepository& repo, unsigned threads = 0);
Classification classify(const HeckeContext& ctx, unsigned threads = 0);

struct LValue {
  BigComplex value;     // grouped by order classes
  BigComplex direct;    // sum over all forms
  BigComplex grouped;
  BigComplex etaFactor;
  Real diff;
};
LValue l_value(const HeckeContext& ctx, ClassRepository& repo, unsigned threads = 0);
LValue l_value(const HeckeContext& ctx, unsigned threads = 0);
LValue l_value_from(const Classification& c);

/// Smoothed Dirichlet series sum psi(a) exp(-N(a)/X) / N(a) over N(a) <= 40 X.
std::complex<double> oracle_l_value(const HeckeContext& ctx, double X);

struct TableError {
  std::int64_t N;
  std::string kind;
  std::string message;
  int code = 1;
};

struct TableOptions {
  int digits = 80;
  EtaConvention eta = EtaConvention::Ideal;
  PointConvention point = PointConvention::Direct;
  unsigned threads = 0;
  /// Optional per-level result store consulted before computing.
  std::function<std::optional<Classification>(const HeckeContext&)> load;
  std::function<void(const Classification&)> save;
};

struct Table {
  std::vector<Classification> levels;
  std::vector<TableError> errors;
  std::vector<ClassRow> rows() const;
};

Table make_table(std::int64_t D, std::int64_t nmax, const TableOptions& opts = {});

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0: hardware concurrency).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace splitcm
