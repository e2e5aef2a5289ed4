#pragma once
// Implementations behind the salv binary. Flag parsing stays in the binary;
// everything here takes parsed values so behavior is testable in process.
// Commands write their document to `out` and progress lines to `err`, return
// the contract exit code, and let errors escape as exceptions for the binary
// to map through exit_code_for: 2 usage, 3 resource, 4 internal, 5 cache.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "salv/report.hpp"

namespace salv {

struct RunConfig {
  Family family = Family::A;
  int rank = 1;
  ComplexSpec complex;
  std::string method = "auto";  // auto | snf | field | modular
  std::string out_path;         // empty: document goes to `out`
  std::string cache_dir = ".salv-cache";
  int threads = 0;  // 0: leave the OpenMP runtime default
  std::uint64_t cell_limit = 8'000'000;
  bool use_cache = true;
};

// Overlays SALV_CACHE_DIR, SALV_THREADS, SALV_CELL_LIMIT onto the defaults.
void apply_env(RunConfig& cfg);
void apply_threads(const RunConfig& cfg);

// auto picks snf below 50000 cells and field from there on; explicit names
// pass through. Modular is never chosen implicitly.
std::string resolve_method(const std::string& requested, std::uint64_t cells);

Family parse_family(const std::string& s);

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify_stability(const RunConfig& cfg, int k_max, int n_max,
                         std::ostream& out, std::ostream& err);
int cmd_verify_rank_formula(const RunConfig& cfg, int k, std::ostream& out,
                            std::ostream& err);
int cmd_verify_suite(const RunConfig& cfg, bool extended, std::ostream& out,
                     std::ostream& err);
int cmd_dump(const RunConfig& cfg, int degree, const std::string& ring,
             std::ostream& out);
int cmd_betti(const RunConfig& cfg, int kmax, std::ostream& out);
int cmd_cache(const RunConfig& cfg, const std::string& op, std::ostream& out);

int exit_code_for(const std::exception& e);

}  // namespace salv
