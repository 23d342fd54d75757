#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bgg {

// Enumeration of multi-indices |alpha| <= order in graded-lex order (degree
// first, then lexicographic), fixed once per (dim, order) and shared by every
// jet of that shape. Tables are cached process-wide.
struct MultiIndexTable {
  int dim = 0;
  int order = 0;
  std::vector<std::vector<int>> idx;       // rank -> multi-index
  std::vector<int> degree;                 // rank -> |alpha|
  std::vector<std::vector<int>> shift;     // [i][rank] -> rank of alpha+e_i, or -1
  // Product pairs: for each result rank g, the list of (rank(b), rank(g-b),
  // binomial(g, b)) used by the Leibniz convolution.
  struct Pair {
    int b, c;
    double w;
  };
  std::vector<std::vector<Pair>> pairs;

  std::size_t size() const { return idx.size(); }
  int rank_of(const std::vector<int>& alpha) const;  // -1 if out of range
};

const MultiIndexTable& multi_index_table(int dim, int order);

// Truncated Taylor polynomial at the chart basepoint. Coefficients are stored
// as derivative values f_alpha = d^alpha f(0), so reading off a derivative at
// the basepoint is a plain lookup. All arithmetic is exact at the truncation
// order; mixing orders truncates to the smaller one.
class Jet {
 public:
  Jet() = default;
  Jet(int dim, int order);

  static Jet constant(int dim, int order, double v);
  static Jet coordinate(int dim, int order, int i);
  // c * x^beta, stored via derivative values (coefficient beta! * c at beta).
  static Jet monomial(int dim, int order, const std::vector<int>& beta, double c);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const MultiIndexTable& table() const { return *table_; }

  double value() const { return c_.empty() ? 0.0 : c_[0]; }
  double coeff(const std::vector<int>& alpha) const;
  void set_coeff(const std::vector<int>& alpha, double v);
  double coeff_rank(int r) const { return c_[r]; }
  void set_coeff_rank(int r, double v) { c_[r] = v; }
  std::size_t ncoeffs() const { return c_.size(); }

  Jet truncated(int new_order) const;

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator-() const;
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  Jet scaled(double s) const;
  friend Jet operator*(double s, const Jet& a) { return a.scaled(s); }
  friend Jet operator*(const Jet& a, double s) { return a.scaled(s); }

  // Multiplicative inverse at truncation order; requires value() != 0.
  Jet reciprocal() const;
  // Square root at truncation order; requires value() > 0.
  Jet sqrt() const;
  // d/dx_i; drops the truncation order by one. Requires order() >= 1.
  Jet partial(int i) const;

  double sup_norm() const;
  bool is_finite() const;

  std::string str() const;

 private:
  int dim_ = 0;
  int order_ = -1;
  const MultiIndexTable* table_ = nullptr;
  std::vector<double> c_;

  void require_same_dim(const Jet& o) const;
};

// Small helpers shared by the chart-calculus layer.
Jet jet_exp(const Jet& a);   // exp(a), exact at truncation order
Jet jet_log(const Jet& a);   // log(a), requires value() > 0

}  // namespace bgg
