#include "splitcm/cache.hpp"

#include "splitcm/errors.hpp"
#include "splitcm/theta.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

namespace splitcm {

namespace {

class FileLock {
 public:
  FileLock(const std::filesystem::path& p, bool exclusive) {
    fd_ = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw ResourceError("cannot open lock file " + p.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      throw ResourceError("cannot lock " + p.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

std::filesystem::path lock_path(const std::filesystem::path& p) { return p.string() + ".lock"; }

}  // namespace

ResultCache::ResultCache(std::filesystem::path path, std::ostream* warnings)
    : path_(std::move(path)), warnings_(warnings) {}

nlohmann::json ResultCache::load_locked() const {
  nlohmann::json empty = {{"schema", kSchema}, {"entries", nlohmann::json::object()}};
  std::ifstream in(path_);
  if (!in) return empty;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_object() || !j.contains("schema") || !j.contains("entries") || !j["entries"].is_object()) {
      if (warnings_) *warnings_ << "warning: cache file " << path_ << " is malformed; ignoring it\n";
      return empty;
    }
    if (j["schema"] != kSchema) return empty;
    return j;
  } catch (const nlohmann::json::exception&) {
    if (warnings_) *warnings_ << "warning: cache file " << path_ << " is corrupt; ignoring it\n";
    return empty;
  }
}

std::optional<nlohmann::json> ResultCache::get(const std::string& key) const {
  if (path_.has_parent_path() && !std::filesystem::exists(path_.parent_path())) return std::nullopt;
  FileLock lock(lock_path(path_), false);
  const nlohmann::json j = load_locked();
  const auto it = j["entries"].find(key);
  if (it == j["entries"].end()) return std::nullopt;
  return *it;
}

void ResultCache::put(const std::string& key, const nlohmann::json& payload) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  FileLock lock(lock_path(path_), true);
  nlohmann::json j = load_locked();
  j["entries"][key] = payload;
  const std::filesystem::path tmp = path_.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
    out << j.dump(1) << '\n';
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path_);
}

nlohmann::json complex_to_json(const BigComplex& z, int digits) {
  return {{"re", z.re().to_string(digits)}, {"im", z.im().to_string(digits)}};
}

nlohmann::json row_to_json(const ClassRow& r) {
  return {{"N", r.N},           {"class_id", r.classId}, {"abs_theta", r.absTheta}, {"count", r.count},
          {"h_eps", r.hEps},    {"h_R", r.hR},           {"h_R_direct", r.hRDirect}, {"omega", r.omega}};
}

nlohmann::json to_json(const Classification& c, double seconds) {
  const int stored = c.ctx.digits + 20;
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : c.records) {
    records.push_back({{"form", {r.form.a, r.form.b, r.form.c}},
                       {"theta", complex_to_json(r.theta, stored)},
                       {"theta_hat", complex_to_json(r.thetaHat, stored)},
                       {"snapped", r.snapped},
                       {"class_id", r.classId},
                       {"eps", r.eps}});
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : c.rows) rows.push_back(row_to_json(r));
  return {{"key", c.ctx.key()}, {"records", records}, {"rows", rows}, {"seconds", seconds}};
}

Classification classification_from_json(const nlohmann::json& j, const HeckeContext& ctx) {
  if (j.at("key").get<std::string>() != ctx.key()) throw InputError("cache entry belongs to another context");
  const int stored = ctx.digits + 20;
  auto cx = [&](const nlohmann::json& v) {
    return BigComplex::from_string(v.at("re").get<std::string>(), v.at("im").get<std::string>(), stored)
        .with_digits(ctx.digits);
  };
  Classification c{ctx, {}, {}};
  for (const auto& r : j.at("records")) {
    ThetaRecord t;
    const auto f = r.at("form");
    t.form = {f.at(0).get<std::int64_t>(), f.at(1).get<std::int64_t>(), f.at(2).get<std::int64_t>()};
    t.theta = cx(r.at("theta"));
    t.thetaHat = cx(r.at("theta_hat"));
    t.snapped = r.at("snapped").get<std::int64_t>();
    t.classId = r.at("class_id").get<int>();
    t.eps = r.at("eps").get<int>();
    c.records.push_back(std::move(t));
  }
  for (const auto& r : j.at("rows")) {
    ClassRow row;
    row.N = r.at("N").get<std::int64_t>();
    row.classId = r.at("class_id").get<int>();
    row.absTheta = r.at("abs_theta").get<std::int64_t>();
    row.count = r.at("count").get<std::int64_t>();
    row.hEps = r.at("h_eps").get<std::int64_t>();
    row.hR = r.at("h_R").get<std::int64_t>();
    row.hRDirect = r.at("h_R_direct").get<std::int64_t>();
    row.omega = r.at("omega").get<std::int64_t>();
    c.rows.push_back(row);
  }
  return c;
}

}  // namespace splitcm
