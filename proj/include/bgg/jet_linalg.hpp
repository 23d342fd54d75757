#pragma once

#include <random>
#include <vector>

#include "bgg/jet.hpp"

namespace bgg {

// Dense matrix with Jet entries, row-major.
struct JetMat {
  int rows = 0, cols = 0;
  std::vector<Jet> a;

  JetMat() = default;
  JetMat(int r, int c, const Jet& fill) : rows(r), cols(c), a(std::size_t(r) * c, fill) {}
  static JetMat identity(int n, int dim, int order);
  static JetMat zero(int r, int c, int dim, int order);

  Jet& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
  const Jet& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  JetMat mul(const JetMat& o) const;
  JetMat inverse() const;  // Gauss-Jordan, pivots by constant-term magnitude
  Jet det() const;
  double sup_norm() const;
};

// Deterministic scalar generator used by every randomized fixture.
double uniform01(std::mt19937_64& rng);
double normal01(std::mt19937_64& rng);
Jet random_jet(int dim, int order, std::mt19937_64& rng, double amp);

}  // namespace bgg
