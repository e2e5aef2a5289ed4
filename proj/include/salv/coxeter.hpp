#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "salv/errors.hpp"

namespace salv {

enum class Family : char { A = 'A', B = 'B', D = 'D' };

Family family_from_char(char c);
std::string system_name(Family f, int rank);

// Subset of generators as a bitmask: bit (i-1) <-> s_i.
using GenMask = std::uint32_t;

// One-line (signed-)permutation. Entries past size stay zero so that pack()
// is a canonical key.
struct Element {
  std::array<std::int8_t, 8> line{};
  std::uint8_t size = 0;

  std::uint64_t pack() const {
    std::uint64_t k = 0;
    for (int i = 0; i < 8; ++i)
      k |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(line[i]))
           << (8 * i);
    return k;
  }
  bool operator==(const Element& o) const {
    return size == o.size && line == o.line;
  }
  bool operator!=(const Element& o) const { return !(*this == o); }
};

std::string to_string(const Element& w);

class CoxeterSystem {
 public:
  CoxeterSystem(Family f, int rank);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  int line_size() const { return line_size_; }
  GenMask full_mask() const { return (GenMask{1} << rank_) - 1; }
  long order() const { return order_; }
  long reflection_count() const;

  Element identity() const;
  Element generator(int i) const;  // s_i, 1-based
  void validate(const Element& w) const;

  Element right_mul_gen(const Element& w, int i) const;  // w * s_i
  Element multiply(const Element& u, const Element& v) const;
  Element inverse(const Element& w) const;
  int length(const Element& w) const;
  GenMask right_descents(const Element& w) const;
  Element longest_element() const;

  // #{i in gamma : i <= sigma}; sigma is a 1-based generator index.
  static int mu(GenMask gamma, int sigma) {
    return __builtin_popcount(gamma & ((GenMask{1} << sigma) - 1));
  }

  // Enumeration, sorted by (length, one-line lexicographic). Memoized.
  const std::vector<Element>& elements() const;
  std::uint32_t element_id(const Element& w) const;
  const std::vector<Element>& parabolic(GenMask gamma) const;
  // W_gamma ∩ W^sub; requires sub ⊆ gamma.
  const std::vector<Element>& minimal_coset_reps(GenMask gamma,
                                                 GenMask sub) const;
  std::pair<Element, Element> coset_decompose(const Element& w,
                                              GenMask gamma) const;

  long parabolic_order(GenMask gamma) const;  // closed formula, no enumeration
  long parabolic_index(GenMask gamma) const { return order_ / parabolic_order(gamma); }
  // Reflections of W_gamma; the subgroup's own count, not the ambient one.
  long parabolic_reflection_count(GenMask gamma) const;

  void set_enumeration_limit(long lim) { enum_limit_ = lim; }
  long enumeration_limit() const { return enum_limit_; }

 private:
  bool gens_adjacent(int i, int j) const;  // edge in the Coxeter graph
  std::vector<GenMask> graph_components(GenMask gamma) const;
  std::vector<Element> enumerate_closure(GenMask gamma) const;

  Family family_;
  int rank_;
  int line_size_;
  long order_;
  long enum_limit_ = 20'000'000;

  mutable std::mutex memo_mu_;
  mutable std::map<GenMask, std::vector<Element>> parabolic_memo_;
  mutable std::map<std::uint64_t, std::vector<Element>> coset_memo_;
  mutable std::once_flag ids_once_;
  mutable std::unordered_map<std::uint64_t, std::uint32_t> ids_;
};

}  // namespace salv
