#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bgg/graded_lie.hpp"

namespace bgg {

class Rep;
using RepPtr = std::shared_ptr<const Rep>;
using AlgPtr = std::shared_ptr<const GradedLieAlgebra>;

// Finite-dimensional graded representation V = ⊕ V_j with explicit action
// matrices per algebra basis element. Basis vectors are sorted by grade and
// each is an eigenvector of rho(E); lambda is the lowest E-eigenvalue, so E
// acts as lambda + j on V_j.
//
// Constructed reps keep their concrete realization: `atoms` lists the base
// factors (standard / dual-standard / adjoint spaces) and `embed` maps rep
// coordinates into the tensor-word space of those atoms. Atom reps have an
// empty atom list and embed = Id.
class Rep {
 public:
  AlgPtr alg;
  std::string descriptor;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<int> grade;   // per basis vector, 0..N
  int grade_width = 0;      // N
  double lambda = 0.0;      // lowest E-eigenvalue
  std::vector<Mat> action;  // per algebra basis element

  std::vector<RepPtr> atoms;  // empty for atoms themselves
  Mat embed;                  // (prod of atom dims) x dim

  // For dual atoms: the primal rep and the pairing matrix <dual_i, primal_j>.
  RepPtr primal;
  Mat dual_pairing;

  Mat act(const Vec& alg_coeffs) const;
  const Mat& rho(int alg_basis_index) const { return action[alg_basis_index]; }
  const Mat& rhoE() const { return action[alg->idx_E()]; }

  std::vector<int> grade_dims() const;
  Mat grade_projector(int j) const;
  std::vector<Vec> grading_decompose(const Vec& v) const;
  int single_grade_of(const Vec& v, double tol = 1e-9) const;  // -1 if mixed
};

RepPtr standard_rep(AlgPtr alg);
RepPtr adjoint_rep(AlgPtr alg);
RepPtr dual_rep(RepPtr base);  // base must be an atom
RepPtr tensor_rep(RepPtr a, RepPtr b);
RepPtr sym_power_rep(RepPtr base, int k);
RepPtr alt_power_rep(RepPtr base, int k);
// Kernel of all invariant pair contractions inside `base` (conformal atoms
// carry the Lorentzian form; throws when no invariant form exists).
RepPtr trace_free_rep(RepPtr base);

// Orthogonal projector of `base` onto the trace-free subspace.
Mat trace_free_projector(const Rep& base);

// Descriptor grammar: std | adjoint | dual(E) | sym(k,E) | sym0(k,E) | alt(k,E)
RepPtr parse_rep(AlgPtr alg, const std::string& descriptor);

struct EquivarianceReport {
  double homomorphism = 0.0;  // max over all basis pairs
  double abelian_m1 = 0.0;    // g_{-1} x g_{-1}
  double abelian_p1 = 0.0;    // g_1 x g_1
  double equiv_T = 0.0;       // g_0 x g_{-1}
  double equiv_Tstar = 0.0;   // g_0 x g_1
  double grade_shift = 0.0;   // action outside the target grade
  double max() const;
};

EquivarianceReport equivariance_residual(const Rep& rep);

// Invariant bilinear form carried by an atom (conformal standard: the
// Lorentzian form in rep coordinates). Throws if the atom has none.
Mat atom_invariant_form(const Rep& atom);

}  // namespace bgg
