#pragma once
// Result documents and the on-disk cache.
//
// A ReportFile is the JSON form of one computation: identity of the complex,
// the engine used, the homology decomposition, optional Betti vector and
// check list. Serialization sorts keys and is byte-stable: two runs with the
// same inputs and method differ at most in timing_ms.
//
// The cache is content addressed by hash(family, rank, variant, method,
// schema_version). Entries wrap the payload with a checksum; a mismatch on
// read throws CacheCorruptionError rather than returning stale data. Writes
// go through a temporary file and an atomic rename so concurrent suite runs
// can share one directory.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "salv/coxeter.hpp"
#include "salv/homology.hpp"
#include "salv/salvetti.hpp"
#include "salv/theorems.hpp"

namespace salv {

inline constexpr int kSchemaVersion = 1;

struct ReportFile {
  int schema_version = kSchemaVersion;
  Family family = Family::A;
  int rank = 1;
  ComplexSpec complex;
  long hyperplanes = 0;  // ambient reflection count
  std::string method;    // "snf" | "field" | "modular"
  std::vector<DegreeHomology> degrees;
  std::vector<std::uint64_t> primes;  // modular runs record the pair used
  std::optional<std::vector<long>> betti;
  std::optional<std::vector<CheckResult>> checks;
  long timing_ms = 0;
};

// Assembles the identity header and decomposition from a finished run.
ReportFile make_report(const CoxeterSystem& sys, const ComplexSpec& spec,
                       const HomologyReport& hom, long timing_ms);

std::string serialize_report(const ReportFile& r);
// Throws ParseError on malformed or wrong-schema input.
ReportFile parse_report(const std::string& text);

// True when the two serialize identically outside timing_ms.
bool reports_equivalent(const ReportFile& a, const ReportFile& b);

std::string cache_key(Family f, int rank, const ComplexSpec& spec,
                      const std::string& method);

struct CacheStats {
  long entries = 0;
  long bytes = 0;
};

class ResultCache {
 public:
  explicit ResultCache(std::string dir);
  const std::string& dir() const { return dir_; }

  // Miss is a nullopt; a present but damaged entry throws
  // CacheCorruptionError.
  std::optional<ReportFile> load(Family f, int rank, const ComplexSpec& spec,
                                 const std::string& method) const;
  void store(const ReportFile& r) const;

  long clear() const;  // removed entry count
  CacheStats stat() const;

 private:
  std::string entry_path(const std::string& key) const;
  std::string dir_;
};

}  // namespace salv
