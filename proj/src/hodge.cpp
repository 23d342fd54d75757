#include "bgg/hodge.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace bgg {

std::vector<std::vector<int>> increasing_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> s(k);
  auto rec = [&](auto&& self, int pos, int lo) -> void {
    if (pos == k) {
      out.push_back(s);
      return;
    }
    for (int v = lo; v < n; ++v) {
      s[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

int subset_rank(int n, const std::vector<int>& subset) {
  auto all = increasing_subsets(n, int(subset.size()));
  auto it = std::find(all.begin(), all.end(), subset);
  if (it == all.end()) throw std::invalid_argument("subset_rank: not an increasing subset");
  return int(it - all.begin());
}

Mat CochainSpace::grade_projector(int j) const {
  Mat p = Mat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (grade[i] == j) p(i, i) = 1.0;
  return p;
}

Mat CochainSpace::g0_action(int g0_local_index) const {
  const auto& alg = *rep->alg;
  const int d = dim(), dv = rep->dim;
  const int ai = alg.idx_g0(g0_local_index);
  Mat out = Mat::Zero(d, d);
  // rep-slot part
  for (std::size_t s = 0; s < subsets.size(); ++s)
    out.block(int(s) * dv, int(s) * dv, dv, dv) = rep->rho(ai);
  // form-slot part: minus insertion of ad_A into each argument
  Vec coeffs = Vec::Zero(alg.dim());
  coeffs[ai] = 1.0;
  Mat M = alg.g0_action_on_gm1(coeffs);  // ad_A on g_{-1}
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    const auto& S = subsets[s];
    for (std::size_t pos = 0; pos < S.size(); ++pos) {
      for (int c = 0; c < n; ++c) {
        double w = M(c, S[pos]);
        if (w == 0.0) continue;
        // replace argument S[pos] by X_c; zero when repeated
        bool repeated = false;
        std::vector<int> T;
        for (std::size_t q = 0; q < S.size(); ++q) {
          if (q == pos) continue;
          if (S[q] == c) repeated = true;
          T.push_back(S[q]);
        }
        if (repeated) continue;
        // insert c into T (sorted), sign = (-1)^{moves}
        int ins = 0;
        while (ins < int(T.size()) && T[ins] < c) ++ins;
        T.insert(T.begin() + ins, c);
        double sign = ((int(pos) - ins) % 2) ? -1.0 : 1.0;
        int t = subset_rank(n, T);
        for (int m = 0; m < dv; ++m) out(flat(t, m), flat(int(s), m)) -= sign * w;
      }
    }
  }
  return out;
}

CochainSpace cochain_space(RepPtr rep, int k) {
  CochainSpace cs;
  cs.rep = rep;
  cs.n = rep->alg->n;
  cs.degree = k;
  cs.subsets = increasing_subsets(cs.n, k);
  cs.grade.resize(cs.dim());
  for (std::size_t s = 0; s < cs.subsets.size(); ++s)
    for (int m = 0; m < rep->dim; ++m) cs.grade[cs.flat(int(s), m)] = rep->grade[m];
  return cs;
}

Mat lie_differential(const CochainSpace& space) {
  const int n = space.n, k = space.degree, dv = space.rep->dim;
  if (k < 0 || k > n - 1) throw std::invalid_argument("lie_differential: degree out of range");
  auto out_subsets = increasing_subsets(n, k + 1);
  Mat D = Mat::Zero(int(out_subsets.size()) * dv, space.dim());
  for (std::size_t so = 0; so < out_subsets.size(); ++so) {
    const auto& Sp = out_subsets[so];
    for (std::size_t j = 0; j < Sp.size(); ++j) {
      std::vector<int> rest;
      for (std::size_t q = 0; q < Sp.size(); ++q)
        if (q != j) rest.push_back(Sp[q]);
      int si = subset_rank(n, rest);
      double sign = (j % 2) ? -1.0 : 1.0;
      const Mat& rho = space.rep->rho(space.rep->alg->idx_gm1(Sp[j]));
      D.block(int(so) * dv, si * dv, dv, dv) += sign * rho;
    }
  }
  return D;
}

Mat kostant_codifferential(const CochainSpace& space) {
  const int n = space.n, k = space.degree, dv = space.rep->dim;
  if (k < 1 || k > n) throw std::invalid_argument("kostant_codifferential: degree out of range");
  const auto& alg = *space.rep->alg;
  Mat pinv = alg.pairing.inverse();
  std::vector<Mat> rhoZdual(n, Mat::Zero(dv, dv));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      if (pinv(c, a) != 0.0) rhoZdual[a] += pinv(c, a) * space.rep->rho(alg.idx_g1(c));

  auto out_subsets = increasing_subsets(n, k - 1);
  Mat D = Mat::Zero(int(out_subsets.size()) * dv, space.dim());
  for (std::size_t so = 0; so < out_subsets.size(); ++so) {
    const auto& S = out_subsets[so];
    for (int a = 0; a < n; ++a) {
      if (std::find(S.begin(), S.end(), a) != S.end()) continue;
      std::vector<int> in = S;
      int ins = 0;
      while (ins < int(in.size()) && in[ins] < a) ++ins;
      in.insert(in.begin() + ins, a);
      double sign = (ins % 2) ? -1.0 : 1.0;  // move X_a from slot 0 to slot ins
      int si = subset_rank(n, in);
      D.block(int(so) * dv, si * dv, dv, dv) += sign * rhoZdual[a];
    }
  }
  return D;
}

int mat_rank(const Mat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  double smax = svd.singularValues()[0];
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol * std::max(smax, 1.0)) ++r;
  return r;
}

Mat orth_basis(const Mat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU);
  double smax = svd.singularValues()[0];
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol * std::max(smax, 1.0)) ++r;
  return svd.matrixU().leftCols(r);
}

Mat null_basis(const Mat& m, double tol) {
  if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
  if (m.cols() == 0) return Mat(0, 0);
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol * std::max(smax, 1.0)) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

namespace {

// Grade-pure null space of the stacked [del; delstar] restricted per grade.
void upsilon_basis(const CochainSpace& cs, const Mat& del, const Mat& delstar, HodgeDegree& out) {
  const int d = cs.dim();
  std::vector<Vec> cols;
  std::vector<int> grades;
  int max_grade = cs.rep->grade_width;
  for (int j = 0; j <= max_grade; ++j) {
    std::vector<int> sel;
    for (int i = 0; i < d; ++i)
      if (cs.grade[i] == j) sel.push_back(i);
    if (sel.empty()) continue;
    Mat K(del.rows() + delstar.rows(), int(sel.size()));
    for (std::size_t c = 0; c < sel.size(); ++c) {
      K.col(int(c)).head(del.rows()) = del.col(sel[c]);
      K.col(int(c)).tail(delstar.rows()) = delstar.col(sel[c]);
    }
    Mat N = null_basis(K);
    for (int c = 0; c < N.cols(); ++c) {
      Vec full = Vec::Zero(d);
      for (std::size_t s = 0; s < sel.size(); ++s) full[sel[s]] = N(s, c);
      cols.push_back(full);
      grades.push_back(j);
    }
  }
  out.upsilon.resize(d, int(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.upsilon.col(int(c)) = cols[c];
  out.upsilon_grades = grades;
  std::set<int> uniq(grades.begin(), grades.end());
  out.grades_present.assign(uniq.begin(), uniq.end());
}

void commutant_and_components(const CochainSpace& cs, HodgeDegree& out) {
  const int h = int(out.upsilon.cols());
  out.commutant_dim = 0;
  out.components.clear();
  if (h == 0) return;
  const int d0 = cs.rep->alg->dim_g0();
  std::vector<Mat> rest(d0);
  for (int a = 0; a < d0; ++a) rest[a] = out.upsilon.transpose() * cs.g0_action(a) * out.upsilon;
  // commutant: solve rest[a] M = M rest[a] for all a
  Mat sys(d0 * h * h, h * h);
  for (int a = 0; a < d0; ++a) {
    // vec(AM - MA) = (I (x) A - A^T (x) I) vec(M), column-major vec
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < h; ++j)
        for (int p = 0; p < h; ++p)
          for (int q = 0; q < h; ++q) {
            double v = (q == j ? rest[a](i, p) : 0.0) - (p == i ? rest[a](q, j) : 0.0);
            if (v != 0.0) sys(a * h * h + j * h + i, q * h + p) += v;
          }
  }
  Mat N = null_basis(sys, 1e-9);
  out.commutant_dim = int(N.cols());
  if (out.commutant_dim <= 1) {
    out.components = {Mat::Identity(h, h)};
    return;
  }
  // invariant splitting from a generic symmetric commutant element
  std::mt19937_64 rng(12345);
  Vec w(N.cols());
  for (int i = 0; i < N.cols(); ++i) w[i] = double((rng() >> 11)) * (1.0 / 9007199254740992.0) - 0.5;
  Mat C = Mat::Zero(h, h);
  for (int i = 0; i < N.cols(); ++i) C += w[i] * Eigen::Map<const Mat>(N.col(i).data(), h, h);
  Mat Cs = 0.5 * (C + C.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(Cs);
  Vec ev = es.eigenvalues();
  // group eigenvalues into clusters
  std::vector<std::pair<double, int>> evs(h);
  for (int i = 0; i < h; ++i) evs[i] = {ev[i], i};
  std::sort(evs.begin(), evs.end());
  double scale = std::max(1.0, std::abs(evs.back().first - evs.front().first));
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < h; ++i) {
    if (clusters.empty() || evs[i].first - evs[clusters.back().front()].first > 1e-6 * scale)
      clusters.push_back({});
    clusters.back().push_back(i);
  }
  for (auto& cl : clusters) {
    Mat comp(h, int(cl.size()));
    for (std::size_t c = 0; c < cl.size(); ++c) comp.col(int(c)) = es.eigenvectors().col(evs[cl[c]].second);
    out.components.push_back(comp);
  }
}

}  // namespace

HodgeDecomposition hodge_split(RepPtr rep) {
  HodgeDecomposition H;
  H.rep = rep;
  H.n = rep->alg->n;
  const int n = H.n;
  H.space.reserve(n + 1);
  for (int k = 0; k <= n; ++k) H.space.push_back(cochain_space(rep, k));
  H.deg.resize(n + 1);

  for (int k = 0; k <= n; ++k) {
    auto& d = H.deg[k];
    d.del = (k <= n - 1) ? lie_differential(H.space[k]) : Mat(0, H.space[k].dim());
    d.delstar = (k >= 1) ? kostant_codifferential(H.space[k]) : Mat(0, H.space[k].dim());
  }
  for (int k = 0; k <= n; ++k) {
    auto& d = H.deg[k];
    const int dimk = H.space[k].dim();
    Mat im_del = (k >= 1) ? orth_basis(H.deg[k - 1].del) : Mat(dimk, 0);
    Mat im_delstar = (k <= n - 1) ? orth_basis(H.deg[k + 1].delstar) : Mat(dimk, 0);
    upsilon_basis(H.space[k], d.del, d.delstar, d);
    // complementarity: Lambda^k = Upsilon + im(del) + im(delstar)
    Mat M(dimk, d.upsilon.cols() + im_del.cols() + im_delstar.cols());
    M << d.upsilon, im_del, im_delstar;
    if (M.cols() != dimk || mat_rank(M) != dimk)
      throw std::logic_error("hodge_split: complementarity rank check failed at degree " +
                             std::to_string(k));
    Mat Minv = M.inverse();
    d.proj = d.upsilon * Minv.topRows(d.upsilon.cols());
    // T: zero on Upsilon + im(delstar) = ker(delstar); inverse of del_{k-1} on
    // im(del), with values in im(delstar_k) inside degree k-1.
    if (k >= 1) {
      Mat E = orth_basis(H.deg[k].delstar);
      Mat AE = H.deg[k - 1].del * E;
      Mat P_imdel = im_del * Minv.middleRows(d.upsilon.cols(), im_del.cols());
      d.T = E * AE.completeOrthogonalDecomposition().pseudoInverse() * P_imdel;
    } else {
      d.T = Mat(0, dimk);
    }
    d.h = 0;  // fill after the loop (needs del ranks)
  }
  for (int k = 0; k <= n; ++k) {
    auto& d = H.deg[k];
    int dimk = H.space[k].dim();
    int rank_del_km1 = (k >= 1) ? mat_rank(H.deg[k - 1].del) : 0;
    int ker_del_k = dimk - mat_rank(d.del);
    d.h = ker_del_k - rank_del_km1;
    if (d.h != d.upsilon.cols())
      throw std::logic_error("hodge_split: dim Upsilon != rank-nullity cohomology at degree " +
                             std::to_string(k));
    commutant_and_components(H.space[k], d);
  }
  return H;
}

}  // namespace bgg
