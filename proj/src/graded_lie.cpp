#include "bgg/graded_lie.hpp"

#include <stdexcept>

namespace bgg {

std::string flavor_name(Flavor f) { return f == Flavor::conformal ? "conformal" : "projective"; }

Flavor flavor_from_name(const std::string& s) {
  if (s == "conformal") return Flavor::conformal;
  if (s == "projective") return Flavor::projective;
  throw std::invalid_argument("unknown flavor: " + s);
}

namespace {

Eigen::Map<const Vec> vec_view(const Mat& m) { return {m.data(), m.size()}; }

}  // namespace

Mat GradedLieAlgebra::matrix_of(const Vec& coeffs) const {
  Mat m = Mat::Zero(matrix_size, matrix_size);
  for (int i = 0; i < dim(); ++i)
    if (coeffs[i] != 0.0) m += coeffs[i] * basis[i];
  return m;
}

Vec GradedLieAlgebra::coeffs_of(const Mat& m, double* residual) const {
  Vec c = basis_pinv_ * vec_view(m).eval();
  if (residual) {
    Mat back = matrix_of(c);
    *residual = (back - m).norm();
  }
  return c;
}

Vec GradedLieAlgebra::bracket(const Vec& a, const Vec& b) const {
  Mat A = matrix_of(a), B = matrix_of(b);
  Mat C = A * B - B * A;
  double res = 0.0;
  Vec c = coeffs_of(C, &res);
  double scale = std::max(1.0, C.norm());
  if (res > 1e-12 * scale)
    throw std::domain_error("graded bracket left the algebra (membership residual " +
                            std::to_string(res) + ")");
  return c;
}

std::array<Vec, 3> GradedLieAlgebra::grade_split(const Vec& coeffs) const {
  std::array<Vec, 3> out;
  for (auto& v : out) v = Vec::Zero(dim());
  for (int i = 0; i < dim(); ++i) out[grade[i] + 1][i] = coeffs[i];
  return out;
}

Mat GradedLieAlgebra::g0_action_on_gm1(const Vec& coeffs) const {
  Vec g0c(dim_g0());
  for (int a = 0; a < dim_g0(); ++a) g0c[a] = coeffs[idx_g0(a)];
  Vec flat = g0_to_gl_ * g0c;
  return Eigen::Map<const Mat>(flat.data(), n, n);
}

Vec GradedLieAlgebra::g0_coeffs_from_matrix(const Mat& m, double* residual) const {
  Vec g0c = g0_from_gl_pinv_ * vec_view(m).eval();
  if (residual) {
    Vec back = g0_to_gl_ * g0c;
    *residual = (back - vec_view(m).eval()).norm();
  }
  Vec full = Vec::Zero(dim());
  for (int a = 0; a < dim_g0(); ++a) full[idx_g0(a)] = g0c[a];
  return full;
}

Mat GradedLieAlgebra::hook_bracket(const Vec& eta, const Vec& phi) const {
  Mat X = Mat::Zero(matrix_size, matrix_size);
  Mat Z = Mat::Zero(matrix_size, matrix_size);
  for (int a = 0; a < n; ++a) {
    X += eta[a] * basis[idx_gm1(a)];
    Z += phi[a] * basis[idx_g1(a)];
  }
  Mat comm = X * Z - Z * X;
  double res = 0.0;
  Vec c = coeffs_of(comm, &res);
  return g0_action_on_gm1(c);
}

GradedLieAlgebra build_graded_algebra(Flavor kind, int n) {
  if (n < 2) throw std::invalid_argument("build_graded_algebra: n >= 2 required");
  GradedLieAlgebra alg;
  alg.kind = kind;
  alg.n = n;
  alg.matrix_size = (kind == Flavor::conformal) ? n + 2 : n + 1;
  const int N = alg.matrix_size;

  auto push = [&](const Mat& m, int g, const std::string& label) {
    alg.basis.push_back(m);
    alg.grade.push_back(g);
    alg.labels.push_back(label);
  };

  if (kind == Flavor::conformal) {
    // block rows/cols: 0 | 1..n | n+1; algebra of b(x,y) = x0 y_{n+1} + x_{n+1} y0 + sum x_i y_i
    for (int a = 1; a <= n; ++a) {
      Mat m = Mat::Zero(N, N);
      m(a, 0) = 1.0;
      m(n + 1, a) = -1.0;
      push(m, -1, "X" + std::to_string(a));
    }
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        Mat m = Mat::Zero(N, N);
        m(a, b) = 1.0;
        m(b, a) = -1.0;
        push(m, 0, "A" + std::to_string(a) + std::to_string(b));
      }
    {
      Mat m = Mat::Zero(N, N);
      m(0, 0) = 1.0;
      m(N - 1, N - 1) = -1.0;
      push(m, 0, "E");
    }
    for (int a = 1; a <= n; ++a) {
      Mat m = Mat::Zero(N, N);
      m(0, a) = 1.0;
      m(a, n + 1) = -1.0;
      push(m, 1, "Z" + std::to_string(a));
    }
  } else {
    // block rows/cols: 0 | 1..n; trace-free matrices
    for (int a = 1; a <= n; ++a) {
      Mat m = Mat::Zero(N, N);
      m(a, 0) = 1.0;
      push(m, -1, "X" + std::to_string(a));
    }
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        if (a == b) continue;
        Mat m = Mat::Zero(N, N);
        m(a, b) = 1.0;
        push(m, 0, "W" + std::to_string(a) + std::to_string(b));
      }
    for (int a = 1; a < n; ++a) {
      Mat m = Mat::Zero(N, N);
      m(a, a) = 1.0;
      m(a + 1, a + 1) = -1.0;
      push(m, 0, "H" + std::to_string(a));
    }
    {
      Mat m = Mat::Zero(N, N);
      m(0, 0) = double(n) / double(n + 1);
      for (int a = 1; a <= n; ++a) m(a, a) = -1.0 / double(n + 1);
      push(m, 0, "E");
    }
    for (int a = 1; a <= n; ++a) {
      Mat m = Mat::Zero(N, N);
      m(0, a) = 1.0;
      push(m, 1, "Z" + std::to_string(a));
    }
  }

  alg.grading_element = alg.basis[alg.idx_E()];

  const int dim = alg.dim();
  alg.basis_flat_.resize(N * N, dim);
  for (int i = 0; i < dim; ++i) alg.basis_flat_.col(i) = vec_view(alg.basis[i]);
  alg.basis_pinv_ = alg.basis_flat_.completeOrthogonalDecomposition().pseudoInverse();

  // pairing and dual basis of g_1
  alg.pairing.resize(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      alg.pairing(a, b) = (alg.basis[alg.idx_gm1(a)] * alg.basis[alg.idx_g1(b)]).trace();
  Mat pinv = alg.pairing.inverse();
  alg.dual_g1.resize(n);
  for (int b = 0; b < n; ++b) {
    Mat m = Mat::Zero(N, N);
    for (int c = 0; c < n; ++c) m += pinv(c, b) * alg.basis[alg.idx_g1(c)];
    alg.dual_g1[b] = m;
  }

  // g_0 <-> action on g_{-1}
  const int d0 = alg.dim_g0();
  alg.g0_to_gl_.resize(n * n, d0);
  for (int a = 0; a < d0; ++a) {
    const Mat& A = alg.basis[alg.idx_g0(a)];
    Mat act(n, n);
    for (int c = 0; c < n; ++c) {
      Mat comm = A * alg.basis[alg.idx_gm1(c)] - alg.basis[alg.idx_gm1(c)] * A;
      // read off g_{-1} coefficients: entry (r, 0) for r = 1..n in both realizations
      for (int r = 0; r < n; ++r) act(r, c) = comm(r + 1, 0);
    }
    alg.g0_to_gl_.col(a) = vec_view(act);
  }
  alg.g0_from_gl_pinv_ = alg.g0_to_gl_.completeOrthogonalDecomposition().pseudoInverse();

  return alg;
}

}  // namespace bgg
