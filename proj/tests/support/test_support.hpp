#pragma once

#include <cstdint>
#include <string_view>

#include "unigeo/matcore.hpp"
#include "unigeo/rng.hpp"

namespace unigeo::test {

/// Stream for a named test so each test draws independent data.
inline CounterRng stream(std::string_view name, std::uint64_t salt = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (const char c : name) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return CounterRng(splitmix64(h ^ salt));
}

inline double frob(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm(); }

inline ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix a = ComplexMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (const Complex& z : d) {
    a(i, i) = z;
    ++i;
  }
  return a;
}

inline Complex cis(double t) { return std::polar(1.0, t); }

}  // namespace unigeo::test
