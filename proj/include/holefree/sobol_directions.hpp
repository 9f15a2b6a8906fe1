// Direction-number initialization for the first ten Sobol' dimensions
// (primitive polynomials and initial odd m-values as in Joe & Kuo's tables).
// The table is only a point source: net quality is never assumed from it, the
// verifier measures the actual t of whatever comes out.
#pragma once

#include <array>
#include <cstdint>

namespace holefree::netgen {

struct SobolDim {
  unsigned degree;                  // degree of the primitive polynomial
  unsigned poly;                    // interior coefficients a_1..a_{g-1}, MSB = a_1
  std::array<std::uint64_t, 5> m;   // initial odd values m_1..m_degree
};

// dimensions 2..10; dimension 1 is the identity matrix (van der Corput)
inline constexpr std::array<SobolDim, 9> kSobolDims = {{
    {1, 0, {1, 0, 0, 0, 0}},   // x + 1
    {2, 1, {1, 3, 0, 0, 0}},   // x^2 + x + 1
    {3, 1, {1, 3, 1, 0, 0}},   // x^3 + x + 1
    {3, 2, {1, 1, 1, 0, 0}},   // x^3 + x^2 + 1
    {4, 1, {1, 1, 3, 3, 0}},   // x^4 + x + 1
    {4, 4, {1, 3, 5, 13, 0}},  // x^4 + x^3 + 1
    {5, 2, {1, 1, 5, 5, 17}},  // x^5 + x^2 + 1
    {5, 4, {1, 1, 5, 5, 5}},   // x^5 + x^3 + 1
    {5, 7, {1, 1, 7, 11, 19}}, // x^5 + x^3 + x^2 + x + 1
}};

inline constexpr unsigned kSobolMaxDim = 10;

}  // namespace holefree::netgen
