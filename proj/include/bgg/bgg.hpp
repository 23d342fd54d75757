#pragma once

#include "bgg/twisted.hpp"

namespace bgg {

// Inverse operator G = (sum_i (-1)^i (T o (d^tw - del))^i) o T, series
// truncated by nilpotency (at most grade_width + 1 terms).
VForm build_G(const Context& ctx, const VForm& phi);

// Splitting operator S(alpha) = alpha - G(d^tw alpha) for T(alpha) = 0.
VForm splitting_operator(const Context& ctx, const VForm& alpha);

// BGG operator D(alpha) = Upsilon-projection of d^tw(S(alpha)).
VForm bgg_operator(const Context& ctx, const VForm& alpha);

// Universal first/second order formulas; `order` must match the grade
// displacement of the adjacent harmonic spaces (throws otherwise, reporting
// the actual displacement).
VForm closed_form_bgg(const Context& ctx, const VForm& alpha, int order);

// Grade displacement order of D_k: grade(Upsilon_{k+1}) - grade(Upsilon_k) + 1;
// component < 0 means the unique/component-joined value.
int expected_operator_order(const Context& ctx, int k);

struct ComplexReport {
  double dd_rel = 0.0;         // |D_{k+1} D_k a| / scale
  double dd_abs = 0.0;
  double chain_rel = 0.0;      // |d^tw S(a) - S(D a)| / scale
  int surviving_order = 0;
};

ComplexReport complex_residual(const Context& ctx, int k, int trials, std::uint64_t seed);

struct NormalityReport {
  double solution_residual = 0.0;  // |D(alpha)|
  double normal_residual = 0.0;    // |nabla^tw S(alpha)|
};

// Degree-0 candidate: a section of Upsilon_0 (grade-0 components).
NormalityReport normality_check(const Context& ctx, const VForm& alpha);

// Random section of Upsilon_k (harmonic projection of a random form).
VForm random_upsilon_section(const Context& ctx, int k, int order, std::mt19937_64& rng);

// Operational order measurement: highest monomial degree of the input that
// D_k reads at the basepoint. `component` restricts to one irreducible
// component of Upsilon_k (-1: all).
int measure_operator_order(const Context& ctx, int k, int component = -1, double tol = 1e-7);

struct CatalogEntry {
  std::string name;
  Flavor flavor;
  std::string rep;  // descriptor
  int degree;
  int expected_order;
  std::string target;
  int min_n;
  int (*target_dim)(int n);
};

std::vector<CatalogEntry> operator_catalog();

}  // namespace bgg
