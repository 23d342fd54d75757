#pragma once

#include <vector>

#include "bgg/rep.hpp"

namespace bgg {

// Increasing k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> increasing_subsets(int n, int k);
int subset_rank(int n, const std::vector<int>& subset);

// Fiber of Lambda^k g_{-1}^* (x) V: basis indexed by (k-subset, rep index),
// flattened as subset_rank * dim_V + rep_index.
struct CochainSpace {
  RepPtr rep;
  int n = 0;
  int degree = 0;
  std::vector<std::vector<int>> subsets;
  std::vector<int> grade;  // per flat basis index (= rep grade of vector part)

  int dim() const { return int(subsets.size()) * rep->dim; }
  int flat(int subset, int m) const { return subset * rep->dim + m; }
  Mat grade_projector(int j) const;
  // Action of the a-th g_0 basis element on the cochain fiber (tensor action
  // on both the form and the rep slots).
  Mat g0_action(int g0_local_index) const;
};

CochainSpace cochain_space(RepPtr rep, int k);

// Chevalley-Eilenberg differential of the abelian g_{-1} with values in V;
// grade-lowering, degree k -> k+1. Requires 0 <= k <= n-1.
Mat lie_differential(const CochainSpace& space);

// Lie-algebra homology differential built from the dual bases {X_a},{Z^a};
// grade-raising, degree k -> k-1. Requires 1 <= k <= n.
Mat kostant_codifferential(const CochainSpace& space);

struct HodgeDegree {
  Mat del;       // degree k -> k+1 (0 rows at k = n)
  Mat delstar;   // degree k -> k-1 (0 rows at k = 0)
  Mat T;         // degree k -> k-1, inverse of del on im(del), zero on ker(delstar)
  Mat proj;      // projector onto Upsilon_k along im(del) + im(delstar)
  Mat upsilon;   // orthonormal, grade-pure basis of Upsilon_k (columns)
  int h = 0;     // cohomology dimension (rank-nullity)
  std::vector<int> upsilon_grades;      // grade per upsilon column
  std::vector<int> grades_present;      // sorted unique
  int commutant_dim = 0;                // of the g_0-action on Upsilon_k
  std::vector<Mat> components;          // g_0-invariant splitting of Upsilon_k
                                        // (orthonormal bases; singleton unless split)
};

struct HodgeDecomposition {
  RepPtr rep;
  int n = 0;
  std::vector<CochainSpace> space;  // k = 0..n
  std::vector<HodgeDegree> deg;     // k = 0..n
};

HodgeDecomposition hodge_split(RepPtr rep);

// Small rank-revealing helpers shared by the numeric layer.
int mat_rank(const Mat& m, double tol = 1e-10);
Mat orth_basis(const Mat& m, double tol = 1e-10);   // of the column space
Mat null_basis(const Mat& m, double tol = 1e-10);   // of the right null space

}  // namespace bgg
