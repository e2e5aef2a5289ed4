#pragma once

// Smith form over Q[tau, tau^-1]. Ground-truth engine for small complexes.

#include <cstdint>
#include <map>
#include <vector>

#include "salv/laurent.hpp"
#include "salv/salvetti.hpp"

namespace salv {

struct PolyMatrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::map<std::uint32_t, LaurentPoly>> col;
};

PolyMatrix poly_from_mono(const MonoMatrix& m);

// Invariant factors d1 | d2 | ... ; length equals the rank over the fraction
// field, each factor unit-normalized (monic, support starting at exponent 0),
// unit factors reported as the constant 1.
std::vector<LaurentPoly> snf_invariant_factors(PolyMatrix m);

}  // namespace salv
