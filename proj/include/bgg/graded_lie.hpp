#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace bgg {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

enum class Flavor { conformal, projective };

std::string flavor_name(Flavor f);
Flavor flavor_from_name(const std::string& s);

// Matrix realization of o(n+1,1) (conformal) or sl(n+1,R) (projective) with
// its |1|-grading. Basis order: g_{-1} = {X_a}, then g_0 with the grading
// element E last, then g_1 = {Z_a}. Immutable after construction.
class GradedLieAlgebra {
 public:
  Flavor kind;
  int n = 0;            // manifold dimension
  int matrix_size = 0;  // n+2 conformal, n+1 projective

  std::vector<Mat> basis;
  std::vector<int> grade;  // -1 / 0 / +1 per basis element
  std::vector<std::string> labels;

  Mat grading_element;  // = basis[idx_E()]
  Mat pairing;          // B_ab = tr(X_a Z_b), n x n
  std::vector<Mat> dual_g1;  // {Z^a} with tr(X_a Z^b) = delta_a^b

  int dim() const { return int(basis.size()); }
  int dim_g0() const { return dim() - 2 * n; }
  int idx_gm1(int a) const { return a; }
  int idx_g0(int a) const { return n + a; }
  int idx_g1(int a) const { return n + dim_g0() + a; }
  int idx_E() const { return n + dim_g0() - 1; }

  Mat matrix_of(const Vec& coeffs) const;
  // Least-squares coefficients of m in the basis; *residual (if given) gets
  // the distance to the algebra, which doubles as the membership test.
  Vec coeffs_of(const Mat& m, double* residual = nullptr) const;

  // Commutator at coefficient level, with membership check (tol 1e-12).
  Vec bracket(const Vec& a, const Vec& b) const;
  // Grade components of a coefficient vector, indexed by grade + 1.
  std::array<Vec, 3> grade_split(const Vec& coeffs) const;

  // Action of a g_0 element (full coefficient vector, only g_0 entries used)
  // on g_{-1} = R^n.
  Mat g0_action_on_gm1(const Vec& coeffs) const;
  // Inverse: full coefficient vector (supported on g_0) of the g_0 element
  // acting on R^n as m; *residual reports the distance to the realizable set.
  Vec g0_coeffs_from_matrix(const Mat& m, double* residual = nullptr) const;

  // {eta, phi} of the graded bracket g_{-1} x g_1 -> g_0, as the matrix of its
  // action on g_{-1}; eta, phi are R^n / R^n* coordinate vectors.
  Mat hook_bracket(const Vec& eta, const Vec& phi) const;

 private:
  Mat basis_flat_;       // matrix_size^2 x dim, columns = vectorized basis
  Mat basis_pinv_;       // dim x matrix_size^2
  Mat g0_to_gl_;         // n^2 x dim_g0
  Mat g0_from_gl_pinv_;  // dim_g0 x n^2
  friend GradedLieAlgebra build_graded_algebra(Flavor kind, int n);
};

GradedLieAlgebra build_graded_algebra(Flavor kind, int n);

}  // namespace bgg
