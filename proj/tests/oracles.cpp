#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oracle {

namespace {

double perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return (inv % 2) ? -1.0 : 1.0;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Tensor graded_product(const Tensor& A, const Tensor& B, bool alternate) {
  if (A.d != B.d) throw std::invalid_argument("graded_product: dimension mismatch");
  const int k = A.k + B.k;
  Tensor out(A.d, k);
  std::vector<int> tuple(k, 0);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  const double norm = 1.0 / (factorial(A.k) * factorial(B.k));
  // iterate over all tuples
  long total = out.a.size();
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    for (int i = k - 1; i >= 0; --i) {
      tuple[i] = int(rem % A.d);
      rem /= A.d;
    }
    double acc = 0.0;
    std::vector<int> p = perm;
    do {
      double s = alternate ? perm_sign(p) : 1.0;
      std::vector<int> ta(A.k), tb(B.k);
      for (int i = 0; i < A.k; ++i) ta[i] = tuple[p[i]];
      for (int i = 0; i < B.k; ++i) tb[i] = tuple[p[A.k + i]];
      acc += s * A.at(ta) * B.at(tb);
    } while (std::next_permutation(p.begin(), p.end()));
    out.a[flat] = acc * norm;
  }
  return out;
}

}  // namespace

Tensor wedge(const Tensor& A, const Tensor& B) { return graded_product(A, B, true); }
Tensor sym_prod(const Tensor& A, const Tensor& B) { return graded_product(A, B, false); }

Tensor hook(const Vec& v, const Tensor& A) {
  if (A.k < 1) throw std::invalid_argument("hook: rank 0");
  Tensor out(A.d, A.k - 1);
  std::vector<int> t(A.k);
  for (long flat = 0; flat < out.a.size(); ++flat) {
    long rem = flat;
    for (int i = A.k - 1; i >= 1; --i) {
      t[i] = int(rem % A.d);
      rem /= A.d;
    }
    double acc = 0.0;
    for (int a = 0; a < A.d; ++a) {
      t[0] = a;
      acc += v[a] * A.at(t);
    }
    out.a[flat] = acc;
  }
  return out;
}

Tensor relabel(const Tensor& A, int new_d, const std::vector<int>& map) {
  Tensor out(new_d, A.k);
  std::vector<int> t(A.k), nt(A.k);
  for (long flat = 0; flat < A.a.size(); ++flat) {
    if (A.a[flat] == 0.0) continue;
    long rem = flat;
    for (int i = A.k - 1; i >= 0; --i) {
      t[i] = int(rem % A.d);
      rem /= A.d;
    }
    for (int i = 0; i < A.k; ++i) nt[i] = map[t[i]];
    out.add(nt, A.a[flat]);
  }
  return out;
}

Vec to_rep_coords(const Rep& rep, const Vec& ambient, double* off_subspace) {
  Vec x = rep.embed.transpose() * ambient;
  if (off_subspace) *off_subspace = (rep.embed * x - ambient).norm();
  return x;
}

// --------------------------------------------------------------------------
// Conformal
// --------------------------------------------------------------------------

Vec conf_std_vec(int n, const ConfStd& s) {
  Vec v = Vec::Zero(n + 2);
  v[0] = s.f;
  for (int a = 0; a < n; ++a) v[1 + a] = s.zeta[a];
  v[n + 1] = s.h;
  return v;
}

ConfStd conf_std_eta_action(const Vec& eta, const ConfStd& s) {
  ConfStd out;
  out.f = -eta.dot(s.zeta);
  out.zeta = s.h * eta;
  out.h = 0.0;
  return out;
}

ConfStd conf_std_alpha_action(const Vec& alpha, const ConfStd& s) {
  ConfStd out;
  out.f = 0.0;
  out.zeta = -s.f * alpha;
  out.h = alpha.dot(s.zeta);
  return out;
}

Vec conf_s2_ambient(int n, const ConfS2& s) {
  const int d = n + 2;
  Tensor t(d, 2);
  auto add_sym = [&](int p, int q, double w) {
    t.add({p, q}, w);
    t.add({q, p}, w);
  };
  add_sym(0, 0, s.f1);
  for (int a = 0; a < n; ++a) add_sym(1 + a, 0, s.zeta1[a]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.add({1 + a, 1 + b}, s.Phi(a, b));
  add_sym(0, d - 1, -s.f2);
  for (int a = 0; a < n; ++a) t.add({1 + a, 1 + a}, 2.0 * s.f2 / n);
  for (int a = 0; a < n; ++a) add_sym(1 + a, d - 1, s.zeta2[a]);
  add_sym(d - 1, d - 1, s.f3);
  return t.a;
}

ConfS2 conf_s2_eta_action(const Vec& eta, const ConfS2& s) {
  const int n = int(eta.size());
  ConfS2 out;
  out.f1 = -eta.dot(s.zeta1);
  out.zeta1 = -s.Phi * eta + ((2.0 - n) / n) * s.f2 * eta;
  out.Phi = eta * s.zeta2.transpose() + s.zeta2 * eta.transpose() -
            (2.0 / n) * eta.dot(s.zeta2) * Mat::Identity(n, n);
  out.f2 = eta.dot(s.zeta2);
  out.zeta2 = 2.0 * s.f3 * eta;
  out.f3 = 0.0;
  return out;
}

ConfS2 conf_s2_alpha_action(const Vec& alpha, const ConfS2& s) {
  const int n = int(alpha.size());
  ConfS2 out;
  out.f1 = 0.0;
  out.zeta1 = -2.0 * s.f1 * alpha;
  out.Phi = -(alpha * s.zeta1.transpose() + s.zeta1 * alpha.transpose() -
              (2.0 / n) * alpha.dot(s.zeta1) * Mat::Identity(n, n));
  out.f2 = -alpha.dot(s.zeta1);
  out.zeta2 = s.Phi * alpha + ((n + 2.0) / n) * s.f2 * alpha;
  out.f3 = alpha.dot(s.zeta2);
  return out;
}

Vec conf_lk_ambient(int n, int k, const ConfLk& s) {
  const int d = n + 2;
  std::vector<int> shift(n);
  for (int i = 0; i < n; ++i) shift[i] = i + 1;
  Tensor e0 = covector(d, Vec::Unit(d, 0));
  Tensor etop = covector(d, Vec::Unit(d, d - 1));
  Tensor total = wedge(e0, relabel(s.phi1, d, shift));
  total.a += relabel(s.phi2, d, shift).a;
  if (k >= 2) total.a += wedge(wedge(e0, etop), relabel(s.phi3, d, shift)).a;
  total.a += wedge(etop, relabel(s.phi4, d, shift)).a;
  return total.a;
}

ConfLk conf_lk_eta_action(int k, const Vec& eta, const ConfLk& s) {
  ConfLk out;
  Tensor etab = covector(int(eta.size()), eta);
  out.phi1 = hook(eta, s.phi2);
  out.phi1.a = -out.phi1.a + wedge(etab, s.phi3).a;
  out.phi2 = wedge(etab, s.phi4);
  out.phi3 = hook(eta, s.phi4);
  out.phi4 = Tensor(int(eta.size()), k - 1);
  return out;
}

ConfLk conf_lk_alpha_action(int k, const Vec& alpha, const ConfLk& s) {
  ConfLk out;
  const int n = int(alpha.size());
  Tensor al = covector(n, alpha);
  out.phi1 = Tensor(n, k - 1);
  out.phi2 = wedge(al, s.phi1);
  out.phi2.a = -out.phi2.a;
  out.phi3 = hook(alpha, s.phi1);
  out.phi4 = hook(alpha, s.phi2);
  out.phi4.a += wedge(al, s.phi3).a;
  return out;
}

Vec adj_vec(const bgg::GradedLieAlgebra& alg, const AdjComp& s) {
  Vec v = Vec::Zero(alg.dim());
  const int n = alg.n;
  for (int a = 0; a < n; ++a) v[alg.idx_gm1(a)] = s.zeta[a];
  double res = 0.0;
  Vec g0 = alg.g0_coeffs_from_matrix(s.Phi, &res);
  if (res > 1e-10) throw std::invalid_argument("adj_vec: Phi outside g0");
  v += g0;
  for (int a = 0; a < n; ++a) v[alg.idx_g1(a)] = s.phi[a];
  return v;
}

AdjComp adj_eta_action(const bgg::GradedLieAlgebra& alg, const Vec& eta, const AdjComp& s) {
  AdjComp out;
  out.zeta = -s.Phi * eta;
  out.Phi = alg.hook_bracket(eta, s.phi);
  out.phi = Vec::Zero(alg.n);
  return out;
}

AdjComp adj_alpha_action(const bgg::GradedLieAlgebra& alg, const Vec& alpha, const AdjComp& s) {
  AdjComp out;
  out.zeta = Vec::Zero(alg.n);
  out.Phi = -alg.hook_bracket(s.zeta, alpha);
  out.phi = s.Phi.transpose() * alpha;  // alpha o Phi
  return out;
}

// --------------------------------------------------------------------------
// Projective
// --------------------------------------------------------------------------

Vec proj_std_vec(int n, const ProjStd& s) {
  Vec v = Vec::Zero(n + 1);
  for (int a = 0; a < n; ++a) v[a] = s.eta[a];
  v[n] = s.f;
  return v;
}

ProjStd proj_std_xi_action(const Vec& xi, const ProjStd& s) {
  ProjStd out;
  out.eta = s.f * xi;
  out.f = 0.0;
  return out;
}

ProjStd proj_std_alpha_action(const Vec& alpha, const ProjStd& s) {
  ProjStd out;
  out.eta = Vec::Zero(alpha.size());
  out.f = alpha.dot(s.eta);
  return out;
}

Vec proj_dual_vec(int n, const ProjDual& s) {
  Vec v = Vec::Zero(n + 1);
  v[0] = s.f;
  for (int a = 0; a < n; ++a) v[1 + a] = s.phi[a];
  return v;
}

ProjDual proj_dual_xi_action(const Vec& xi, const ProjDual& s) {
  ProjDual out;
  out.f = -s.phi.dot(xi);
  out.phi = Vec::Zero(xi.size());
  return out;
}

ProjDual proj_dual_alpha_action(const Vec& alpha, const ProjDual& s) {
  ProjDual out;
  out.f = 0.0;
  out.phi = -s.f * alpha;
  return out;
}

Vec proj_l2_ambient(int n, const ProjL2& s) {
  const int d = n + 1;
  std::vector<int> shift(n);
  for (int i = 0; i < n; ++i) shift[i] = i + 1;
  Tensor e0 = covector(d, Vec::Unit(d, 0));
  Tensor total = wedge(relabel(s.phi, d, shift), e0);
  total.a += relabel(s.psi, d, shift).a;
  return total.a;
}

ProjL2 proj_l2_xi_action(const Vec& xi, const ProjL2& s) {
  ProjL2 out;
  out.phi = hook(xi, s.psi);
  out.phi.a = -out.phi.a;
  out.psi = Tensor(int(xi.size()), 2);
  return out;
}

ProjL2 proj_l2_alpha_action(const Vec& alpha, const ProjL2& s) {
  ProjL2 out;
  out.phi = Tensor(int(alpha.size()), 1);
  out.psi = wedge(covector(int(alpha.size()), alpha), s.phi);
  return out;
}

Vec proj_s2_ambient(int n, const ProjS2& s) {
  const int d = n + 1;
  Tensor t(d, 2);
  t.add({0, 0}, 2.0 * s.f);
  for (int a = 0; a < n; ++a) {
    t.add({1 + a, 0}, s.phi[a]);
    t.add({0, 1 + a}, s.phi[a]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.add({1 + a, 1 + b}, s.Phi(a, b));
  return t.a;
}

ProjS2 proj_s2_xi_action(const Vec& xi, const ProjS2& s) {
  ProjS2 out;
  out.f = -s.phi.dot(xi);
  out.phi = -s.Phi * xi;
  out.Phi = Mat::Zero(xi.size(), xi.size());
  return out;
}

ProjS2 proj_s2_alpha_action(const Vec& alpha, const ProjS2& s) {
  ProjS2 out;
  out.f = 0.0;
  out.phi = -2.0 * s.f * alpha;
  out.Phi = -(alpha * s.phi.transpose() + s.phi * alpha.transpose());
  return out;
}

}  // namespace oracle
