#include <doctest.h>

#include "bgg/graded_lie.hpp"

using namespace bgg;

TEST_CASE("dimensions and grade partition") {
  auto conf = build_graded_algebra(Flavor::conformal, 3);
  CHECK(conf.dim() == 10);  // dim o(4,1)
  CHECK(conf.dim_g0() == 4);
  auto proj = build_graded_algebra(Flavor::projective, 3);
  CHECK(proj.dim() == 15);  // dim sl(4)
  CHECK(proj.dim_g0() == 9);
  CHECK_THROWS_AS(build_graded_algebra(Flavor::conformal, 1), std::invalid_argument);
}

TEST_CASE("algebra membership of every basis matrix") {
  // conformal: B^t Q + Q B = 0 for the Lorentzian form; projective: trace 0
  for (int n : {2, 3, 4}) {
    auto proj = build_graded_algebra(Flavor::projective, n);
    for (const auto& b : proj.basis) CHECK(std::abs(b.trace()) <= 1e-14);
  }
  for (int n : {3, 4, 5}) {
    auto conf = build_graded_algebra(Flavor::conformal, n);
    const int N = n + 2;
    Mat Q = Mat::Zero(N, N);
    Q(0, N - 1) = Q(N - 1, 0) = 1.0;
    for (int i = 1; i <= n; ++i) Q(i, i) = 1.0;
    for (const auto& b : conf.basis)
      CHECK((b.transpose() * Q + Q * b).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("grading element normalization") {
  auto proj = build_graded_algebra(Flavor::projective, 3);
  const Mat& E = proj.grading_element;
  CHECK(E(0, 0) == doctest::Approx(3.0 / 4.0));
  for (int i = 1; i <= 3; ++i) CHECK(E(i, i) == doctest::Approx(-1.0 / 4.0));

  // ad(E) = i on g_i, and [E, X] = -X on g_{-1}
  for (Flavor f : {Flavor::conformal, Flavor::projective}) {
    auto alg = build_graded_algebra(f, 3);
    for (int i = 0; i < alg.dim(); ++i) {
      Mat ad = alg.grading_element * alg.basis[i] - alg.basis[i] * alg.grading_element;
      CHECK((ad - double(alg.grade[i]) * alg.basis[i]).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("hook bracket reproduces the closed forms") {
  // conformal {eta,phi}(xi) = phi(eta) xi + phi(xi) eta - g(xi,eta) phi^#
  auto conf = build_graded_algebra(Flavor::conformal, 3);
  Vec eta = Vec::Zero(3), phi = Vec::Zero(3), xi = Vec::Zero(3);
  eta[0] = 1.0;
  phi[0] = 1.0;
  xi[1] = 1.0;
  Mat hb = conf.hook_bracket(eta, phi);
  Vec got = hb * xi;
  Vec expect = Vec::Zero(3);
  expect[1] = 1.0;  // phi(eta) xi with the others vanishing
  CHECK((got - expect).cwiseAbs().maxCoeff() <= 1e-14);

  // projective {eta,phi}(xi) = phi(xi) eta + phi(eta) xi; pinned by hand from
  // the matrix units: [[E_10, E_01], E_20] = [E_11 - E_00, E_20] = +E_20
  auto proj = build_graded_algebra(Flavor::projective, 3);
  Mat hbp = proj.hook_bracket(eta, phi);
  Vec gotp = hbp * xi;
  Vec expectp = Vec::Zero(3);
  expectp[1] = 1.0;
  CHECK((gotp - expectp).cwiseAbs().maxCoeff() <= 1e-14);

  // random cross-check of both closed forms
  std::srand(42);
  for (int t = 0; t < 5; ++t) {
    Vec e = Vec::Random(3), p = Vec::Random(3), x = Vec::Random(3);
    Mat hc = conf.hook_bracket(e, p);
    Vec want = p.dot(e) * x + p.dot(x) * e - x.dot(e) * p;
    CHECK((hc * x - want).cwiseAbs().maxCoeff() <= 1e-12);
    Mat hp = proj.hook_bracket(e, p);
    Vec wantp = p.dot(x) * e + p.dot(e) * x;
    CHECK((hp * x - wantp).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("dual pairing") {
  for (Flavor f : {Flavor::conformal, Flavor::projective}) {
    auto alg = build_graded_algebra(f, 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double tr = (alg.basis[alg.idx_gm1(a)] * alg.dual_g1[b]).trace();
        CHECK(std::abs(tr - (a == b ? 1.0 : 0.0)) <= 1e-14);
        double xx = (alg.basis[alg.idx_gm1(a)] * alg.basis[alg.idx_gm1(b)]).trace();
        CHECK(std::abs(xx) <= 1e-14);
      }
  }
  // conformal pairing is 2 * identity, so the dual basis is the rescaled Z's
  auto conf = build_graded_algebra(Flavor::conformal, 3);
  CHECK((conf.pairing - 2.0 * Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("bracket membership guard") {
  auto alg = build_graded_algebra(Flavor::projective, 2);
  Vec a = Vec::Zero(alg.dim()), b = Vec::Zero(alg.dim());
  a[0] = 1.0;
  b[alg.idx_g1(0)] = 1.0;
  CHECK_NOTHROW(alg.bracket(a, b));
  // coeffs_of residual flags a matrix outside the algebra
  Mat bad = Mat::Identity(alg.matrix_size, alg.matrix_size);
  double res = 0.0;
  alg.coeffs_of(bad, &res);
  CHECK(res > 1e-3);
}
