#include "splitcm/cli.hpp"

#include "splitcm/cache.hpp"
#include "splitcm/central.hpp"
#include "splitcm/errors.hpp"
#include "splitcm/hecke.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <optional>

namespace splitcm::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::int64_t disc = 0;
  std::optional<std::int64_t> level;
  std::optional<std::int64_t> nmax;
  int prec = 80;
  std::string outFormat = "csv";
  std::string cachePath;
  bool noCache = false;
  std::string etaConvention = "ideal";
  std::optional<std::int64_t> b1;
  bool conjugatePoint = false;
  unsigned threads = 0;
  double cutoff = 1e5;
};

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_error(std::ostream& err, const std::string& kind, int code, const std::string& message) {
  err << json{{"error", kind}, {"code", code}, {"message", message}}.dump() << '\n';
}

std::unique_ptr<ResultCache> open_cache(const RunConfig& cfg, std::ostream& err) {
  if (cfg.noCache) return nullptr;
  std::string path = cfg.cachePath;
  if (path.empty()) {
    if (const char* env = std::getenv("SPLITCM_CACHE"); env != nullptr) path = env;
  }
  if (path.empty()) return nullptr;
  return std::make_unique<ResultCache>(path, &err);
}

std::optional<Classification> cache_load(ResultCache* cache, const HeckeContext& ctx, std::ostream& err) {
  if (cache == nullptr) return std::nullopt;
  const auto entry = cache->get(ctx.key());
  if (!entry) return std::nullopt;
  try {
    return classification_from_json(*entry, ctx);
  } catch (const std::exception& e) {
    err << "warning: unreadable cache entry for " << ctx.key() << " (" << e.what() << "); recomputing\n";
    return std::nullopt;
  }
}

HeckeContext make_context(const RunConfig& cfg) {
  if (!cfg.level) throw InputError("--level is required for " + cfg.command);
  HeckeContext ctx = HeckeContext::make(cfg.disc, *cfg.level, cfg.prec, cfg.b1);
  ctx.eta = parse_eta_convention(cfg.etaConvention);
  ctx.point = cfg.conjugatePoint ? PointConvention::Conjugate : PointConvention::Direct;
  return ctx;
}

json conventions_json(const RunConfig& cfg) {
  return {{"eta", cfg.etaConvention}, {"point", cfg.conjugatePoint ? "conjugate" : "direct"}};
}

void write_rows_csv(std::ostream& out, const std::vector<ClassRow>& rows) {
  out << "N,abs_theta,count,h_eps,h_R\n";
  for (const auto& r : rows)
    out << r.N << ',' << r.absTheta << ',' << r.count << ',' << r.hEps << ',' << r.hR << '\n';
}

json class_json(const ClassRow& r) {
  return {{"class_id", r.classId}, {"abs_theta", r.absTheta}, {"count", r.count},
          {"h_eps", r.hEps},       {"h_R", r.hR},             {"omega", r.omega}};
}

Classification classify_cached(const HeckeContext& ctx, const RunConfig& cfg, std::ostream& err) {
  auto cache = open_cache(cfg, err);
  if (auto hit = cache_load(cache.get(), ctx, err)) return std::move(*hit);
  Classification c = classify(ctx, cfg.threads);
  if (cache) cache->put(ctx.key(), to_json(c));
  return c;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.nmax) throw InputError("--nmax is required for table");
  TableOptions opts;
  opts.digits = cfg.prec;
  opts.eta = parse_eta_convention(cfg.etaConvention);
  opts.point = cfg.conjugatePoint ? PointConvention::Conjugate : PointConvention::Direct;
  opts.threads = cfg.threads;
  auto cache = open_cache(cfg, err);
  std::mutex warnMutex;
  if (cache) {
    opts.load = [&](const HeckeContext& ctx) {
      std::lock_guard<std::mutex> lock(warnMutex);
      return cache_load(cache.get(), ctx, err);
    };
    opts.save = [&](const Classification& c) { cache->put(c.ctx.key(), to_json(c)); };
  }
  if (cfg.b1) throw InputError("--b1 applies to a single level only");
  const Table t = make_table(cfg.disc, *cfg.nmax, opts);
  const auto rows = t.rows();
  if (cfg.outFormat == "json") {
    json levels = json::array();
    for (const auto& l : t.levels) {
      json classes = json::array();
      for (const auto& r : l.rows) classes.push_back(class_json(r));
      levels.push_back({{"N", l.ctx.N}, {"b1", l.ctx.b1}, {"classes", classes}});
    }
    json errors = json::array();
    for (const auto& e : t.errors)
      errors.push_back({{"N", e.N}, {"error", e.kind}, {"code", e.code}, {"message", e.message}});
    out << json{{"schema", ResultCache::kSchema}, {"command", "table"}, {"D", cfg.disc}, {"nmax", *cfg.nmax},
                {"precision", cfg.prec}, {"conventions", conventions_json(cfg)}, {"levels", levels},
                {"errors", errors}}
               .dump(2)
        << '\n';
  } else {
    write_rows_csv(out, rows);
  }
  for (const auto& e : t.errors)
    err << json{{"N", e.N}, {"error", e.kind}, {"code", e.code}, {"message", e.message}}.dump() << '\n';
  return t.errors.empty() ? 0 : t.errors.front().code;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const HeckeContext ctx = make_context(cfg);
  const Classification c = classify_cached(ctx, cfg, err);
  if (cfg.outFormat == "json") {
    json classes = json::array();
    for (const auto& r : c.rows) classes.push_back(class_json(r));
    json points = json::array();
    for (const auto& r : c.records)
      points.push_back({{"form", {r.form.a, r.form.b, r.form.c}},
                        {"theta_hat", complex_to_json(r.thetaHat, ctx.digits)},
                        {"value", r.snapped},
                        {"class_id", r.classId}});
    out << json{{"schema", ResultCache::kSchema}, {"command", "classify"}, {"D", ctx.D}, {"N", ctx.N},
                {"b1", ctx.b1}, {"precision", ctx.digits}, {"conventions", conventions_json(cfg)},
                {"classes", classes}, {"points", points}}
               .dump(2)
        << '\n';
  } else {
    write_rows_csv(out, c.rows);
  }
  return 0;
}

int cmd_lvalue(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const HeckeContext ctx = make_context(cfg);
  const LValue L = l_value_from(classify_cached(ctx, cfg, err));
  const int d = ctx.digits;
  if (cfg.outFormat == "json") {
    out << json{{"schema", ResultCache::kSchema}, {"command", "lvalue"}, {"D", ctx.D}, {"N", ctx.N},
                {"b1", ctx.b1}, {"precision", d}, {"conventions", conventions_json(cfg)},
                {"value", complex_to_json(L.value, d)}, {"direct", complex_to_json(L.direct, d)},
                {"eta_factor", complex_to_json(L.etaFactor, d)}, {"consistency", L.diff.to_string(5)}}
               .dump(2)
        << '\n';
  } else {
    out << "D,N,re,im,consistency\n"
        << ctx.D << ',' << ctx.N << ',' << L.value.re().to_string(d) << ',' << L.value.im().to_string(d) << ','
        << L.diff.to_string(5) << '\n';
  }
  return 0;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const HeckeContext ctx = make_context(cfg);
  if (!(cfg.cutoff >= 1.0)) throw InputError("--cutoff must be at least 1");
  const std::complex<double> v = oracle_l_value(ctx, cfg.cutoff);
  if (cfg.outFormat == "json") {
    out << json{{"schema", ResultCache::kSchema}, {"command", "oracle"}, {"D", ctx.D}, {"N", ctx.N},
                {"b1", ctx.b1}, {"cutoff", cfg.cutoff}, {"conventions", conventions_json(cfg)},
                {"value", {{"re", format_double(v.real())}, {"im", format_double(v.imag())}}}}
               .dump(2)
        << '\n';
  } else {
    out << "D,N,cutoff,re,im\n"
        << ctx.D << ',' << ctx.N << ',' << format_double(cfg.cutoff) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << '\n';
  }
  return 0;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needsLevel) {
  sub->add_option("--disc,-D", cfg.disc, "Fundamental discriminant D = -p, p = 3 mod 4 prime")->required();
  if (needsLevel) {
    sub->add_option("--level,-N", cfg.level, "Prime level N = 3 mod 4, split in K")->required();
    sub->add_option("--b1", cfg.b1, "Override the square root b1 of D mod 4N");
  }
  sub->add_option("--prec", cfg.prec, "Working precision in decimal digits")->capture_default_str();
  sub->add_option("--out", cfg.outFormat, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--cache", cfg.cachePath, "Cache file (default: $SPLITCM_CACHE)");
  sub->add_flag("--no-cache", cfg.noCache, "Ignore the cache");
  sub->add_option("--eta-convention", cfg.etaConvention, "Eta normalization")
      ->check(CLI::IsMember({"ideal", "squared"}))
      ->capture_default_str();
  sub->add_flag("--conjugate-point", cfg.conjugatePoint, "Use the Heegner point of the conjugate prime");
  sub->add_option("--threads", cfg.threads, "Worker threads (0: all cores)")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Central values of twisted Hecke L-series via theta series at split-CM points", "splitcm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "splitcm 0.1.0");

  auto* table = app.add_subcommand("table", "Class table for all admissible N <= nmax");
  add_common(table, cfg, false);
  table->add_option("--nmax", cfg.nmax, "Largest level")->required();

  auto* lvalue = app.add_subcommand("lvalue", "Central value L(psi_N, 1)");
  add_common(lvalue, cfg, true);

  auto* classify = app.add_subcommand("classify", "Theta values and order classes at one level");
  add_common(classify, cfg, true);

  auto* oracle = app.add_subcommand("oracle", "Smoothed Dirichlet series estimate of L(psi_N, 1)");
  add_common(oracle, cfg, true);
  oracle->add_option("--cutoff", cfg.cutoff, "Smoothing parameter X")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", 2, e.what());
    return 2;
  }

  for (auto* sub : {table, lvalue, classify, oracle})
    if (sub->parsed()) cfg.command = sub->get_name();

  try {
    if (cfg.command == "table") return cmd_table(cfg, out, err);
    if (cfg.command == "lvalue") return cmd_lvalue(cfg, out, err);
    if (cfg.command == "classify") return cmd_classify(cfg, out, err);
    return cmd_oracle(cfg, out, err);
  } catch (const Error& e) {
    write_error(err, e.kind(), e.code(), e.what());
    return e.code();
  } catch (const std::bad_alloc&) {
    write_error(err, "ResourceError", 3, "out of memory");
    return 3;
  } catch (const std::exception& e) {
    write_error(err, "InternalError", 4, e.what());
    return 4;
  }
}

}  // namespace splitcm::cli
