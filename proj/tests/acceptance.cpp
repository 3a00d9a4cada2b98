#include "splitcm/central.hpp"
#include "splitcm/errors.hpp"
#include "splitcm/quaternion.hpp"
#include "splitcm/theta.hpp"

#include "properties.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace splitcm;

namespace {

constexpr int kDigits = 80;

struct Expected {
  std::int64_t absTheta, count, hEps;
};

// Reference class tables: D = -7 (N <= 200) and D = -11 (N <= 250).
const std::map<std::int64_t, std::vector<Expected>> kTable7 = {
    {11, {{1, 1, -1}}},  {23, {{1, 3, -1}}},  {43, {{1, 1, 1}}},   {67, {{1, 1, -1}}},
    {71, {{1, 7, -3}}},  {79, {{1, 5, -1}}},  {107, {{1, 3, -3}}}, {127, {{1, 5, 1}}},
    {151, {{1, 7, -1}}}, {163, {{1, 1, 1}}},  {179, {{1, 5, -3}}}, {191, {{1, 13, -5}}},
};

const std::map<std::int64_t, std::vector<Expected>> kTable11 = {
    {23, {{0, 2, 2}, {2, 1, 1}}},   {31, {{0, 2, 2}, {2, 1, -1}}},  {47, {{0, 3, 3}, {2, 2, 2}}},
    {59, {{0, 2, 2}, {2, 1, -1}}},  {67, {{0, 0, 0}, {2, 1, -1}}},  {71, {{0, 4, 4}, {2, 3, -3}}},
    {103, {{0, 3, 3}, {2, 2, 2}}},  {163, {{0, 1, 1}, {2, 0, 0}}},  {179, {{0, 2, 2}, {2, 3, 1}}},
    {191, {{0, 8, 8}, {2, 5, 1}}},  {199, {{0, 5, 5}, {2, 4, 4}}},  {223, {{0, 4, 4}, {2, 3, 3}}},
};

struct Report {
  int passed = 0;
  int failed = 0;
  void line(int id, bool ok, const std::string& title, const std::string& detail) {
    (ok ? passed : failed)++;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title;
    if (!detail.empty()) std::cout << " | " << detail;
    std::cout << std::endl;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int precision = 3) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

struct TableRun {
  Table table;
  double seconds;
};

TableRun run_table(std::int64_t D, std::int64_t nmax) {
  const auto t0 = std::chrono::steady_clock::now();
  TableOptions opts;
  opts.digits = kDigits;
  Table t = make_table(D, nmax, opts);
  return {std::move(t), seconds_since(t0)};
}

// Compares one computed table with the reference one.
bool compare_table(const TableRun& run, const std::map<std::int64_t, std::vector<Expected>>& expected,
                   std::string& detail) {
  std::ostringstream out;
  bool ok = run.table.errors.empty();
  for (const auto& e : run.table.errors) out << "N=" << e.N << " " << e.kind << ": " << e.message << "; ";
  std::map<std::int64_t, const Classification*> byN;
  for (const auto& l : run.table.levels) byN[l.ctx.N] = &l;
  if (byN.size() != expected.size()) {
    ok = false;
    out << "levels " << byN.size() << " vs " << expected.size() << "; ";
  }
  std::vector<std::int64_t> signFlips;
  for (const auto& [N, rows] : expected) {
    const auto it = byN.find(N);
    if (it == byN.end()) {
      ok = false;
      out << "N=" << N << " missing; ";
      continue;
    }
    const auto& got = it->second->rows;
    if (got.size() != rows.size()) {
      ok = false;
      out << "N=" << N << " has " << got.size() << " rows; ";
      continue;
    }
    int sign = 0;
    bool consistent = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& g = got[i];
      const auto& e = rows[i];
      if (g.absTheta != e.absTheta || g.count != e.count || std::abs(g.hEps) != std::abs(e.hEps)) {
        ok = false;
        out << "N=" << N << " row " << i << " got (" << g.absTheta << "," << g.count << "," << g.hEps
            << ") expected (" << e.absTheta << "," << e.count << "," << e.hEps << "); ";
        continue;
      }
      if (e.absTheta == 0) {
        if (g.hEps != e.hEps) {
          ok = false;
          out << "N=" << N << " row " << i << " zero-theta h_eps " << g.hEps << " vs " << e.hEps << "; ";
        }
        continue;
      }
      if (e.hEps == 0) continue;
      const int s = g.hEps == e.hEps ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) consistent = false;
    }
    if (!consistent) {
      ok = false;
      out << "N=" << N << " signs differ row by row; ";
    }
    if (sign == -1) signFlips.push_back(N);
  }
  out << "global sign flips at N in {";
  for (std::size_t i = 0; i < signFlips.size(); ++i) out << (i ? "," : "") << signFlips[i];
  out << "}; " << fmt(run.seconds) << " s";
  detail = out.str();
  return ok;
}

struct Case {
  std::int64_t D;
  const Classification* c;
};

}  // namespace

int main() {
  std::cout << std::unitbuf;
  Report report;

  TableRun t7 = run_table(-7, 200);
  TableRun t11 = run_table(-11, 250);
  std::vector<Case> cases;
  for (const auto& l : t7.table.levels) cases.push_back({-7, &l});
  for (const auto& l : t11.table.levels) cases.push_back({-11, &l});

  {
    std::string detail;
    const bool ok = compare_table(t7, kTable7, detail) && t7.seconds < 300;
    report.line(1, ok, "Table for D=-7, N<=200", detail);
  }
  {
    std::string detail;
    const bool ok = compare_table(t11, kTable11, detail) && t11.seconds < 300;
    report.line(2, ok, "Table for D=-11, N<=250", detail);
  }

  {
    double worst = -1e9;
    int n = 0;
    bool ok = true;
    for (const auto& [D, c] : cases) {
      for (const QuadForm& Q : reduced_forms(-c->ctx.N)) {
        const HeegnerPoint P = heegner_point(c->ctx, c->ctx.classRep);
        const BigComplex form = theta_form(Q, P, kDigits);
        const BigComplex sym = theta_at_point(c->ctx, Q);
        const double e = (form - sym).abs().log10_abs();
        worst = std::max(worst, e);
        ok = ok && e < -70;
        ++n;
      }
    }
    report.line(3, ok, "symplectic theta equals form theta", std::to_string(n) + " points, max log10 error " + fmt(worst));
  }

  {
    bool ok = true;
    int n = 0;
    std::string bad;
    for (const auto& [D, c] : cases) {
      for (const QuadForm& Q : reduced_forms(-c->ctx.N)) {
        const Order R = right_order(build_Iz(c->ctx, Q));
        const bool disc = order_discriminant(R) == Int(D * D);
        RatMatrix J(4, 4);
        J(0, 2) = 1;
        J(1, 3) = 1;
        J(2, 0) = -1;
        J(3, 1) = -1;
        const bool symp = symplectic_matrix(c->ctx, Q) == J;
        if (!disc || !symp) {
          ok = false;
          bad += " D=" + std::to_string(D) + ",N=" + std::to_string(c->ctx.N) + ",Q=" + Q.to_string();
        }
        ++n;
      }
    }
    report.line(4, ok, "right orders are maximal and E is standard symplectic",
                std::to_string(n) + " (D,N,Q) checked" + (bad.empty() ? "" : "; failures:" + bad));
  }

  {
    bool ok = true;
    std::ostringstream detail;
    for (std::int64_t D : {-7, -11}) {
      ClassRepository repo(D);
      repo.ensure_complete();
      Rat mass = 0;
      for (std::size_t i = 0; i < repo.size(); ++i) mass += Rat(1) / (2 * repo.omega(static_cast<int>(i)));
      const bool m = mass == Rat(-D - 1, 24);
      ok = ok && m;
      detail << "D=" << D << " classes " << repo.size() << " mass " << to_string(mass) << (m ? "" : " (wrong)") << "; ";
    }
    int levels = 0;
    for (const auto& [D, c] : cases) {
      std::int64_t sum = 0;
      for (const auto& r : c->rows) {
        sum += r.hR;
        if (2 * r.count != r.hR) {
          ok = false;
          detail << "D=" << D << ",N=" << c->ctx.N << " count " << r.count << " vs h_R " << r.hR << "; ";
        }
      }
      if (sum != 2 * class_number(-c->ctx.N)) {
        ok = false;
        detail << "D=" << D << ",N=" << c->ctx.N << " sum h_R " << sum << "; ";
      }
      ++levels;
    }
    detail << levels << " levels with sum h_R = 2h(-N)";
    report.line(5, ok, "mass identities", detail.str());
  }

  {
    bool ok = true;
    int n = 0;
    std::string bad;
    std::map<std::int64_t, ClassRepository> repos;
    for (std::int64_t D : {-7, -11}) repos.try_emplace(D, D).first->second.ensure_complete();
    for (const auto& [D, c] : cases) {
      const ClassRepository& repo = repos.at(D);
      for (std::size_t i = 0; i < repo.size(); ++i) {
        try {
          const EmbeddingCount e = embedding_count(repo.order(static_cast<int>(i)), c->ctx.N);
          if (e.gross != e.direct) ok = false;
        } catch (const InternalError& e) {
          ok = false;
          bad += std::string(" ") + e.what();
        }
        ++n;
      }
    }
    report.line(6, ok, "Gross lattice and root-orbit embedding counts agree",
                std::to_string(n) + " (D,N,[R]) checked" + bad);
  }

  {
    bool consistent = true, real = true;
    double worstDiff = -1e9, worstIm = -1e9;
    std::int64_t worstImD = 0, worstImN = 0;
    for (const auto& [D, c] : cases) {
      try {
        const LValue L = l_value_from(*c);
        const double d = L.diff.is_zero() ? -1e9 : L.diff.log10_abs();
        worstDiff = std::max(worstDiff, d);
        if (d >= -70) consistent = false;
        const double im = L.value.im().log10_abs();
        if (im > worstIm) {
          worstIm = im;
          worstImD = D;
          worstImN = c->ctx.N;
        }
        if (im >= -40) real = false;
      } catch (const Error&) {
        consistent = false;
      }
    }
    std::ostringstream detail;
    detail << "max log10 |direct - grouped| " << fmt(worstDiff) << (consistent ? " (ok)" : " (too large)")
           << "; max log10 |Im L| " << fmt(worstIm) << " at D=" << worstImD << ",N=" << worstImN
           << (real ? " (ok)" : " (L is not real)");
    report.line(7, consistent && real, "L-value consistency and reality", detail.str());
  }

  {
    bool ok = true;
    std::ostringstream detail;
    for (const auto& [D, N] : std::vector<std::pair<std::int64_t, std::int64_t>>{{-7, 11}, {-7, 23}, {-11, 23}}) {
      const HeckeContext ctx = HeckeContext::make(D, N, kDigits);
      const std::complex<double> L = l_value(ctx).value.to_complex();
      const auto t0 = std::chrono::steady_clock::now();
      const std::complex<double> o = oracle_l_value(ctx, 1e5);
      const double secs = seconds_since(t0);
      const double rel = std::abs(o - L) / std::abs(L);
      const bool good = rel < 1e-2 && secs < 60;
      ok = ok && good;
      detail << "(" << D << "," << N << ") rel " << fmt(rel) << " in " << fmt(secs) << " s; ";
    }
    report.line(8, ok, "Dirichlet series oracle agrees", detail.str());
  }

  {
    bool ok = true;
    std::ostringstream detail;
    for (const auto& o : props::all()) {
      ok = ok && o.ok;
      detail << o.name << (o.ok ? " ok" : " FAILED (" + o.detail + ")") << "; ";
    }
    report.line(9, ok, "property suites", detail.str());
  }

  std::cout << report.passed << " passed, " << report.failed << " failed" << std::endl;
  return report.failed == 0 ? 0 : 1;
}
