#include "salv/cli.hpp"

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "salv/errors.hpp"

namespace salv {
namespace {

using clock_type = std::chrono::steady_clock;

long ms_since(clock_type::time_point t0) {
  return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                               clock_type::now() - t0)
                               .count());
}

void write_document(const std::string& doc, const std::string& out_path,
                    std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    out << doc;
    return;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  f << doc;
  if (!f) throw ResourceLimitError("cannot write " + out_path);
  err << "report written to " << out_path << "\n";
}

// Shared tail of the verify commands: report with the check list, one line
// per check on err, exit 1 on any Fail.
int emit_checks(const RunConfig& cfg, const std::vector<CheckResult>& checks,
                const std::string& method, long timing_ms, std::ostream& out,
                std::ostream& err) {
  bool all_ok = true;
  for (const CheckResult& c : checks) {
    err << c.name << " " << c.params << ": " << to_string(c.verdict);
    if (!c.witness.empty()) err << "  [" << c.witness << "]";
    err << "\n";
    if (!c.ok()) all_ok = false;
  }
  ReportFile r;
  r.family = cfg.family;
  r.rank = cfg.rank;
  r.complex = cfg.complex;
  r.hyperplanes = CoxeterSystem(cfg.family, cfg.rank).reflection_count();
  r.method = method;
  r.checks = checks;
  r.timing_ms = timing_ms;
  write_document(serialize_report(r), cfg.out_path, out, err);
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

void apply_env(RunConfig& cfg) {
  if (const char* v = std::getenv("SALV_CACHE_DIR"); v && *v)
    cfg.cache_dir = v;
  if (const char* v = std::getenv("SALV_THREADS"); v && *v) {
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (!end || *end || n < 1)
      throw UsageError("SALV_THREADS must be a positive integer");
    cfg.threads = static_cast<int>(n);
  }
  if (const char* v = std::getenv("SALV_CELL_LIMIT"); v && *v) {
    char* end = nullptr;
    long long n = std::strtoll(v, &end, 10);
    if (!end || *end || n < 1)
      throw UsageError("SALV_CELL_LIMIT must be a positive integer");
    cfg.cell_limit = static_cast<std::uint64_t>(n);
  }
}

void apply_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
}

std::string resolve_method(const std::string& requested, std::uint64_t cells) {
  if (requested == "auto") return cells < 50'000 ? "snf" : "field";
  if (requested == "snf" || requested == "field" || requested == "modular")
    return requested;
  throw UsageError("unknown method '" + requested + "'");
}

Family parse_family(const std::string& s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "D") return Family::D;
  throw ParseError("family must be A, B or D, got '" + s + "'");
}

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CoxeterSystem sys(cfg.family, cfg.rank);
  cfg.complex.validate(cfg.rank);

  BuildOptions bopt;
  bopt.cell_limit = cfg.cell_limit;
  ChainComplex cx = build_complex(sys, cfg.complex, bopt);
  std::string method = resolve_method(cfg.method, cx.total_cells());

  ResultCache cache(cfg.cache_dir);
  if (cfg.use_cache) {
    if (auto hit = cache.load(cfg.family, cfg.rank, cfg.complex, method)) {
      err << "cache hit (" << method << ")\n";
      write_document(serialize_report(*hit), cfg.out_path, out, err);
      return kExitOk;
    }
  }

  auto t0 = clock_type::now();
  HomologyReport hom;
  if (method == "snf") {
    hom = homology_snf(cx, -1, cfg.cell_limit);
  } else {
    FieldRankOptions opt;
    opt.modular = method == "modular";
    hom = homology_fieldrank(cx, opt);
  }
  ReportFile r = make_report(sys, cfg.complex, hom, ms_since(t0));
  if (cfg.use_cache) cache.store(r);
  write_document(serialize_report(r), cfg.out_path, out, err);
  return kExitOk;
}

int cmd_verify_stability(const RunConfig& cfg, int k_max, int n_max,
                         std::ostream& out, std::ostream& err) {
  if (k_max < 0 || n_max < 1) throw UsageError("need k-max >= 0 and n-max >= 1");
  int n_min = cfg.family == Family::D ? 2 : 1;
  std::vector<CheckJob> jobs;
  for (int k = 0; k <= k_max; ++k)
    for (int n = n_min; n <= n_max; ++n)
      jobs.push_back([f = cfg.family, k, n] { return check_stability(f, k, n); });
  auto t0 = clock_type::now();
  std::vector<CheckResult> checks = run_checks(jobs);
  RunConfig hdr = cfg;
  hdr.rank = n_max;
  return emit_checks(hdr, checks, "field", ms_since(t0), out, err);
}

int cmd_verify_rank_formula(const RunConfig& cfg, int k, std::ostream& out,
                            std::ostream& err) {
  auto t0 = clock_type::now();
  CoxeterSystem sys(cfg.family, cfg.rank);
  std::vector<CheckResult> checks{check_rank_formula(sys, k)};
  return emit_checks(cfg, checks, "field", ms_since(t0), out, err);
}

int cmd_verify_suite(const RunConfig& cfg, bool extended, std::ostream& out,
                     std::ostream& err) {
  auto t0 = clock_type::now();
  std::vector<CheckResult> all;
  bool all_ok = true;
  for (const CriterionBlock& block : acceptance_plan(extended)) {
    std::vector<CheckResult> res = run_checks(block.jobs);
    bool ok = true;
    for (const CheckResult& c : res) ok = ok && c.ok();
    err << "criterion " << block.number << " (" << block.title
        << "): " << (ok ? "pass" : "FAIL") << "\n";
    all_ok = all_ok && ok;
    all.insert(all.end(), res.begin(), res.end());
  }
  RunConfig hdr = cfg;
  hdr.family = Family::A;
  hdr.rank = 1;
  hdr.complex = ComplexSpec{};
  int code = emit_checks(hdr, all, extended ? "modular" : "field",
                         ms_since(t0), out, err);
  return all_ok ? code : kExitCheckFailed;
}

int cmd_dump(const RunConfig& cfg, int degree, const std::string& ring,
             std::ostream& out) {
  CoxeterSystem sys(cfg.family, cfg.rank);
  cfg.complex.validate(cfg.rank);
  if (degree < 1 || degree > cfg.rank)
    throw UsageError("degree must be in [1, rank]");
  BuildOptions bopt;
  bopt.max_degree = degree;
  bopt.cell_limit = cfg.cell_limit;
  ChainComplex cx = build_complex(sys, cfg.complex, bopt);

  if (ring == "laurent") {
    dump_matrix(cx, degree, out);
  } else if (ring == "q1") {
    RationalField f(Rat(1));
    SpecComplex<RationalField> sc =
        specialize_complex(cx, f, "q1", /*check_d2=*/false);
    dump_lsm(to_lsm_spec(sc.bnd[degree], f, "q1"), out);
  } else if (ring.rfind("cyc:", 0) == 0) {
    int d = 0;
    try {
      d = std::stoi(ring.substr(4));
    } catch (const std::exception&) {
      throw ParseError("bad ring '" + ring + "'");
    }
    if (d < 1) throw ParseError("cyclotomic index must be >= 1");
    CycField f(d);
    SpecComplex<CycField> sc =
        specialize_complex(cx, f, ring, /*check_d2=*/false);
    dump_lsm(to_lsm_spec(sc.bnd[degree], f, ring), out);
  } else {
    throw ParseError("ring must be laurent, q1 or cyc:<d>, got '" + ring + "'");
  }
  return kExitOk;
}

int cmd_betti(const RunConfig& cfg, int kmax, std::ostream& out) {
  CoxeterSystem sys(cfg.family, cfg.rank);
  BettiVector bv = betti(sys, kmax);
  out << nlohmann::json(bv.b).dump() << "\n";
  return kExitOk;
}

int cmd_cache(const RunConfig& cfg, const std::string& op, std::ostream& out) {
  ResultCache cache(cfg.cache_dir);
  nlohmann::json j;
  if (op == "clear") {
    j["removed"] = cache.clear();
  } else if (op == "stat") {
    CacheStats s = cache.stat();
    j["entries"] = s.entries;
    j["bytes"] = s.bytes;
  } else {
    throw UsageError("cache operation must be clear or stat");
  }
  out << j.dump() << "\n";
  return kExitOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CacheCorruptionError*>(&e)) return kExitCacheCorrupt;
  if (dynamic_cast<const ResourceLimitError*>(&e)) return kExitResource;
  if (dynamic_cast<const UsageError*>(&e)) return kExitUsage;
  if (dynamic_cast<const ParseError*>(&e)) return kExitUsage;
  return kExitInternal;
}

}  // namespace salv
