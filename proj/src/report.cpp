#include "salv/report.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "salv/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace salv {
namespace {

// FNV-1a, 64 bit; stable across platforms and good enough for addressing.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
  return out;
}

std::string family_tag(Family f) {
  switch (f) {
    case Family::A:
      return "A";
    case Family::B:
      return "B";
    case Family::D:
      return "D";
  }
  throw InternalError("unknown family tag");
}

Family family_from_tag(const std::string& s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "D") return Family::D;
  throw ParseError("unknown family '" + s + "'");
}

Verdict verdict_from_tag(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "info") return Verdict::Info;
  if (s == "skipped") return Verdict::Skipped;
  throw ParseError("unknown verdict '" + s + "'");
}

json degrees_to_json(const std::vector<DegreeHomology>& degrees) {
  json arr = json::array();
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    json d;
    d["k"] = k;
    d["free_rank"] = degrees[k].free_rank;
    json tor = json::array();
    for (const TorsionEntry& t : degrees[k].torsion)
      tor.push_back({{"d", t.d}, {"mult", t.mult}});
    d["torsion"] = tor;
    arr.push_back(d);
  }
  return arr;
}

}  // namespace

ReportFile make_report(const CoxeterSystem& sys, const ComplexSpec& spec,
                       const HomologyReport& hom, long timing_ms) {
  ReportFile r;
  r.family = sys.family();
  r.rank = sys.rank();
  r.complex = spec;
  r.hyperplanes = sys.reflection_count();
  r.method = hom.method;
  r.degrees = hom.degrees;
  r.primes = hom.primes;
  r.timing_ms = timing_ms;
  return r;
}

std::string serialize_report(const ReportFile& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["family"] = family_tag(r.family);
  j["rank"] = r.rank;
  j["complex"] = r.complex.to_string();
  j["hyperplanes"] = r.hyperplanes;
  j["method"] = r.method;
  j["degrees"] = degrees_to_json(r.degrees);
  if (!r.primes.empty()) j["primes"] = r.primes;
  if (r.betti) j["betti"] = *r.betti;
  if (r.checks) {
    json arr = json::array();
    for (const CheckResult& c : *r.checks)
      arr.push_back({{"name", c.name},
                     {"params", c.params},
                     {"verdict", to_string(c.verdict)},
                     {"witness", c.witness}});
    j["checks"] = arr;
  }
  j["timing_ms"] = r.timing_ms;
  // json objects are key sorted; dump is the byte-stable form
  return j.dump(2) + "\n";
}

ReportFile parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    ReportFile r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion)
      throw ParseError("unsupported schema version " +
                       std::to_string(r.schema_version));
    r.family = family_from_tag(j.at("family").get<std::string>());
    r.rank = j.at("rank").get<int>();
    r.complex = ComplexSpec::parse(j.at("complex").get<std::string>());
    r.hyperplanes = j.at("hyperplanes").get<long>();
    r.method = j.at("method").get<std::string>();
    for (const json& d : j.at("degrees")) {
      DegreeHomology h;
      h.free_rank = d.at("free_rank").get<long>();
      for (const json& t : d.at("torsion"))
        h.torsion.push_back(
            {t.at("d").get<int>(), t.at("mult").get<long>()});
      std::size_t k = d.at("k").get<std::size_t>();
      if (k != r.degrees.size())
        throw ParseError("degrees are not sorted contiguously");
      r.degrees.push_back(std::move(h));
    }
    if (j.contains("primes"))
      r.primes = j.at("primes").get<std::vector<std::uint64_t>>();
    if (j.contains("betti"))
      r.betti = j.at("betti").get<std::vector<long>>();
    if (j.contains("checks")) {
      std::vector<CheckResult> cs;
      for (const json& c : j.at("checks")) {
        CheckResult cr;
        cr.name = c.at("name").get<std::string>();
        cr.params = c.at("params").get<std::string>();
        cr.verdict = verdict_from_tag(c.at("verdict").get<std::string>());
        cr.witness = c.at("witness").get<std::string>();
        cs.push_back(std::move(cr));
      }
      r.checks = std::move(cs);
    }
    r.timing_ms = j.at("timing_ms").get<long>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report misses required fields: ") +
                     e.what());
  }
}

bool reports_equivalent(const ReportFile& a, const ReportFile& b) {
  ReportFile a0 = a, b0 = b;
  a0.timing_ms = 0;
  b0.timing_ms = 0;
  return serialize_report(a0) == serialize_report(b0);
}

std::string cache_key(Family f, int rank, const ComplexSpec& spec,
                      const std::string& method) {
  std::string id = family_tag(f) + "|" + std::to_string(rank) + "|" +
                   spec.to_string() + "|" + method + "|" +
                   std::to_string(kSchemaVersion);
  return hex64(fnv1a(id));
}

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {}

std::string ResultCache::entry_path(const std::string& key) const {
  return (fs::path(dir_) / (key + ".json")).string();
}

std::optional<ReportFile> ResultCache::load(Family f, int rank,
                                            const ComplexSpec& spec,
                                            const std::string& method) const {
  std::string path = entry_path(cache_key(f, rank, spec, method));
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  json wrapper;
  try {
    wrapper = json::parse(buf.str());
  } catch (const json::exception&) {
    throw CacheCorruptionError("cache entry " + path + " is not valid JSON");
  }
  std::string payload, checksum;
  try {
    payload = wrapper.at("report").get<std::string>();
    checksum = wrapper.at("checksum").get<std::string>();
  } catch (const json::exception&) {
    throw CacheCorruptionError("cache entry " + path + " lacks envelope fields");
  }
  if (hex64(fnv1a(payload)) != checksum)
    throw CacheCorruptionError("cache entry " + path + " fails its checksum");
  try {
    return parse_report(payload);
  } catch (const ParseError& e) {
    throw CacheCorruptionError("cache entry " + path +
                               " holds an unreadable report: " + e.what());
  }
}

void ResultCache::store(const ReportFile& r) const {
  fs::create_directories(dir_);
  std::string payload = serialize_report(r);
  json wrapper;
  wrapper["checksum"] = hex64(fnv1a(payload));
  wrapper["report"] = payload;
  std::string final_path =
      entry_path(cache_key(r.family, r.rank, r.complex, r.method));

  static std::mt19937_64 rng(std::random_device{}());
  std::string tmp =
      (fs::path(dir_) / ("tmp-" + hex64(rng()) + ".part")).string();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << wrapper.dump(2) << "\n";
    if (!out) throw ResourceLimitError("cannot write cache entry " + tmp);
  }
  fs::rename(tmp, final_path);
}

long ResultCache::clear() const {
  if (!fs::exists(dir_)) return 0;
  long removed = 0;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (e.path().extension() == ".json" && fs::is_regular_file(e.path())) {
      fs::remove(e.path());
      ++removed;
    }
  }
  return removed;
}

CacheStats ResultCache::stat() const {
  CacheStats s;
  if (!fs::exists(dir_)) return s;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (e.path().extension() == ".json" && fs::is_regular_file(e.path())) {
      ++s.entries;
      s.bytes += static_cast<long>(fs::file_size(e.path()));
    }
  }
  return s;
}

}  // namespace salv
