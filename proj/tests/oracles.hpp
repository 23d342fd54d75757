// Test-side oracles: closed-form bullet-action tables and the identification
// maps realizing component tuples inside the constructed representations.
// Everything here is independent of the construction path in src/rep.cpp:
// actions are written out from the published component formulas and compared
// against the matrix representations.
//
// Conventions: symmetric and alternating objects carry shuffle-normalized
// components (u (.) v has components u_a v_b + u_b v_a, wedge likewise with
// signs). Under this convention a component array over the atom coordinate
// space, flattened in row-major tuple order, IS the ambient tensor-power
// coordinate vector of the element.

#pragma once

#include <vector>

#include "bgg/rep.hpp"

namespace oracle {

using bgg::Mat;
using bgg::Rep;
using bgg::RepPtr;
using bgg::Vec;

// Dense rank-k tensor over a d-dimensional space, full component array.
struct Tensor {
  int d = 0, k = 0;
  Vec a;  // d^k entries, row-major tuples

  Tensor() = default;
  Tensor(int d_, int k_) : d(d_), k(k_) {
    long n = 1;
    for (int i = 0; i < k_; ++i) n *= d_;
    a = Vec::Zero(n);
  }
  long idx(const std::vector<int>& t) const {
    long r = 0;
    for (int v : t) r = r * d + v;
    return r;
  }
  double at(const std::vector<int>& t) const { return a[idx(t)]; }
  void add(const std::vector<int>& t, double v) { a[idx(t)] += v; }
};

inline Tensor covector(int d, const Vec& comps) {
  Tensor t(d, 1);
  t.a = comps;
  return t;
}

// Shuffle wedge: (A ^ B)(v...) summed over (p,q)-shuffles with signs.
Tensor wedge(const Tensor& A, const Tensor& B);
// Symmetric shuffle product.
Tensor sym_prod(const Tensor& A, const Tensor& B);
// Contraction in the first slot with a vector.
Tensor hook(const Vec& v, const Tensor& A);
// Inclusion Lambda^k R^n -> Lambda^k R^d placing letter i at position map[i].
Tensor relabel(const Tensor& A, int new_d, const std::vector<int>& map);

// Pull an ambient tensor-power vector back to rep coordinates through the
// orthonormal embedding; *off_subspace reports the part outside the subrep.
Vec to_rep_coords(const Rep& rep, const Vec& ambient, double* off_subspace);

// --------------------------------------------------------------------------
// Conformal oracles (n >= 3). Atom coordinate order of std: e_{n+1}, e_1..e_n,
// e_0 (grades 0,1,2); of dual(std): e^0, e^1..e^n, e^{n+1} (grades 0,1,2).
// --------------------------------------------------------------------------

// Standard representation components (f, zeta, h).
struct ConfStd {
  double f = 0.0;
  Vec zeta;
  double h = 0.0;
};
Vec conf_std_vec(int n, const ConfStd& s);
ConfStd conf_std_eta_action(const Vec& eta, const ConfStd& s);    // eq-style table
ConfStd conf_std_alpha_action(const Vec& alpha, const ConfStd& s);

// S^2_0 V components (f1, zeta1, (Phi, f2), zeta2, f3); Phi trace-free
// symmetric with shuffle components.
struct ConfS2 {
  double f1 = 0.0;
  Vec zeta1;
  Mat Phi;
  double f2 = 0.0;
  Vec zeta2;
  double f3 = 0.0;
};
Vec conf_s2_ambient(int n, const ConfS2& s);  // inside std (x) std
ConfS2 conf_s2_eta_action(const Vec& eta, const ConfS2& s);
ConfS2 conf_s2_alpha_action(const Vec& alpha, const ConfS2& s);

// Lambda^k V* components (phi1, (phi2, phi3), phi4) with phi1, phi4 in
// Lambda^{k-1} R^n*, phi2 in Lambda^k, phi3 in Lambda^{k-2}.
struct ConfLk {
  Tensor phi1, phi2, phi3, phi4;  // over n letters
};
Vec conf_lk_ambient(int n, int k, const ConfLk& s);  // inside (dual std)^(x k)
ConfLk conf_lk_eta_action(int k, const Vec& eta, const ConfLk& s);
ConfLk conf_lk_alpha_action(int k, const Vec& alpha, const ConfLk& s);

// Adjoint components (zeta, Phi-matrix acting on R^n, phi).
struct AdjComp {
  Vec zeta;
  Mat Phi;
  Vec phi;
};
Vec adj_vec(const bgg::GradedLieAlgebra& alg, const AdjComp& s);
AdjComp adj_eta_action(const bgg::GradedLieAlgebra& alg, const Vec& eta, const AdjComp& s);
AdjComp adj_alpha_action(const bgg::GradedLieAlgebra& alg, const Vec& alpha, const AdjComp& s);

// --------------------------------------------------------------------------
// Projective oracles (atom order of std: e_1..e_n, e_0; dual: e^0, e^1..e^n).
// --------------------------------------------------------------------------

struct ProjStd {
  Vec eta;
  double f = 0.0;
};
Vec proj_std_vec(int n, const ProjStd& s);
ProjStd proj_std_xi_action(const Vec& xi, const ProjStd& s);
ProjStd proj_std_alpha_action(const Vec& alpha, const ProjStd& s);

struct ProjDual {
  double f = 0.0;
  Vec phi;
};
Vec proj_dual_vec(int n, const ProjDual& s);
ProjDual proj_dual_xi_action(const Vec& xi, const ProjDual& s);
ProjDual proj_dual_alpha_action(const Vec& alpha, const ProjDual& s);

// Lambda^2 V* components (phi, psi).
struct ProjL2 {
  Tensor phi;  // rank 1 over n letters
  Tensor psi;  // rank 2
};
Vec proj_l2_ambient(int n, const ProjL2& s);
ProjL2 proj_l2_xi_action(const Vec& xi, const ProjL2& s);
ProjL2 proj_l2_alpha_action(const Vec& alpha, const ProjL2& s);

// S^2 V* components (f, phi, Phi).
struct ProjS2 {
  double f = 0.0;
  Vec phi;
  Mat Phi;  // shuffle components, symmetric
};
Vec proj_s2_ambient(int n, const ProjS2& s);
ProjS2 proj_s2_xi_action(const Vec& xi, const ProjS2& s);
ProjS2 proj_s2_alpha_action(const Vec& alpha, const ProjS2& s);

}  // namespace oracle
