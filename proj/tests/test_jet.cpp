#include <doctest.h>

#include <random>

#include "bgg/jet.hpp"
#include "bgg/jet_linalg.hpp"

using namespace bgg;

namespace {

Jet rand_jet(int dim, int order, std::mt19937_64& rng) { return random_jet(dim, order, rng, 1.0); }

}  // namespace

TEST_CASE("polynomial identities at truncation order") {
  Jet one = Jet::constant(1, 2, 1.0);
  Jet x = Jet::coordinate(1, 2, 0);
  Jet prod = (one + x) * (one - x);
  Jet expected = one - Jet::monomial(1, 2, {2}, 1.0);
  CHECK((prod - expected).sup_norm() == 0.0);

  // additive identity
  std::mt19937_64 rng(7);
  Jet a = rand_jet(2, 3, rng);
  Jet zero = Jet::constant(2, 3, 0.0);
  CHECK((a + zero - a).sup_norm() == 0.0);

  // degree-4 content dies at order 3
  Jet xy = Jet::coordinate(2, 3, 0) * Jet::coordinate(2, 3, 1);
  CHECK((xy * xy).sup_norm() == 0.0);
}

TEST_CASE("reciprocal") {
  Jet one = Jet::constant(1, 2, 1.0);
  Jet x = Jet::coordinate(1, 2, 0);
  Jet r = (one + x).reciprocal();
  Jet expected = one - x + Jet::monomial(1, 2, {2}, 1.0);
  CHECK((r - expected).sup_norm() <= 1e-14);

  CHECK(Jet::constant(3, 4, 2.0).reciprocal().value() == 0.5);

  // 1/(2 + x + y) at order 1: multiply back and compare with 1
  Jet den = Jet::constant(2, 1, 2.0) + Jet::coordinate(2, 1, 0) + Jet::coordinate(2, 1, 1);
  Jet inv = den.reciprocal();
  CHECK(inv.value() == doctest::Approx(0.5));
  CHECK(inv.coeff({1, 0}) == doctest::Approx(-0.25));
  CHECK(inv.coeff({0, 1}) == doctest::Approx(-0.25));
  Jet back = den * inv;
  CHECK((back - Jet::constant(2, 1, 1.0)).sup_norm() <= 1e-15);

  CHECK_THROWS_AS(Jet::coordinate(1, 2, 0).reciprocal(), std::domain_error);
}

TEST_CASE("partial derivatives") {
  Jet f = Jet::monomial(2, 3, {2, 1}, 1.0);  // x^2 y
  Jet dx = f.partial(0);
  Jet expected = Jet::monomial(2, 2, {1, 1}, 2.0);  // 2xy
  CHECK((dx - expected).sup_norm() == 0.0);
  CHECK(dx.order() == 2);

  CHECK(Jet::constant(2, 3, 5.0).partial(1).sup_norm() == 0.0);

  std::mt19937_64 rng(11);
  Jet g = rand_jet(3, 4, rng);
  CHECK((g.partial(0).partial(1) - g.partial(1).partial(0)).sup_norm() == 0.0);

  CHECK_THROWS_AS(Jet::constant(2, 0, 1.0).partial(0), std::domain_error);
  CHECK_THROWS_AS(Jet::constant(2, 2, 1.0) + Jet::constant(3, 2, 1.0), std::invalid_argument);
}

TEST_CASE("ring axioms on random jets") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    Jet a = rand_jet(2, 4, rng), b = rand_jet(2, 4, rng), c = rand_jet(2, 4, rng);
    CHECK(((a * b) * c - a * (b * c)).sup_norm() <= 1e-12 * std::max(1.0, a.sup_norm() * b.sup_norm() * c.sup_norm()));
    CHECK((a * (b + c) - (a * b + a * c)).sup_norm() <= 1e-12);
    // commutative up to the floating-point associativity of the fixed
    // summation order
    CHECK((a * b - b * a).sup_norm() <= 1e-13);
  }
}

TEST_CASE("Leibniz rule through the convolution") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    Jet a = rand_jet(3, 4, rng), b = rand_jet(3, 4, rng);
    for (int i = 0; i < 3; ++i) {
      Jet lhs = (a * b).partial(i);
      Jet rhs = a.partial(i) * b + a * b.partial(i);
      CHECK((lhs - rhs).sup_norm() <= 1e-11);
    }
  }
}

TEST_CASE("reciprocal and sqrt are exact inverses at order") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 5; ++t) {
    Jet a = rand_jet(2, 5, rng) + Jet::constant(2, 5, 3.0);
    Jet one = Jet::constant(2, 5, 1.0);
    CHECK((a * a.reciprocal() - one).sup_norm() <= 1e-12);
    CHECK((a.reciprocal() * a - one).sup_norm() <= 1e-12);
    Jet s = a.sqrt();
    CHECK((s * s - a).sup_norm() <= 1e-12);
  }
  CHECK_THROWS_AS(Jet::constant(1, 1, -1.0).sqrt(), std::domain_error);
}

TEST_CASE("exp and log") {
  std::mt19937_64 rng(17);
  Jet a = random_jet(2, 4, rng, 0.4);
  Jet e = jet_exp(a);
  CHECK((jet_log(e) - a).sup_norm() <= 1e-11);
  // d(exp a) = exp(a) da
  for (int i = 0; i < 2; ++i) CHECK((e.partial(i) - e * a.partial(i)).sup_norm() <= 1e-11);
}

TEST_CASE("jet matrix inverse and determinant") {
  std::mt19937_64 rng(23);
  const int n = 3;
  JetMat A = JetMat::identity(n, n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.at(i, j) += random_jet(n, 3, rng, 0.2);
  JetMat Ainv = A.inverse();
  JetMat prod = A.mul(Ainv);
  JetMat id = JetMat::identity(n, n, 3);
  double resid = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) resid = std::max(resid, (prod.at(i, j) - id.at(i, j)).sup_norm());
  CHECK(resid <= 1e-11);
  // det(A) * det(A^{-1}) = 1
  CHECK((A.det() * Ainv.det() - Jet::constant(n, 3, 1.0)).sup_norm() <= 1e-11);
}
