#include "bgg/rep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bgg {

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

// Apply A to tensor factor `pos` of each column of V; dims are the factor sizes.
Mat apply_factor(const Mat& A, int pos, const std::vector<int>& dims, const Mat& V) {
  int left = 1, right = 1;
  for (int i = 0; i < pos; ++i) left *= dims[i];
  for (std::size_t i = pos + 1; i < dims.size(); ++i) right *= dims[i];
  const int d = dims[pos];
  Mat out = Mat::Zero(V.rows(), V.cols());
  for (int c = 0; c < V.cols(); ++c) {
    for (int l = 0; l < left; ++l)
      for (int r = 0; r < right; ++r) {
        // gather the fiber, multiply, scatter
        Vec fiber(d);
        for (int x = 0; x < d; ++x) fiber[x] = V((l * d + x) * right + r, c);
        Vec res = A * fiber;
        for (int x = 0; x < d; ++x) out((l * d + x) * right + r, c) = res[x];
      }
  }
  return out;
}

void sort_by_grade(Rep& r) {
  const Mat& E = r.rhoE();
  Vec d = E.diagonal();
  double off = (E - Mat(d.asDiagonal())).norm();
  if (off > 1e-9) throw std::logic_error("rep construction: rho(E) not diagonal on the built basis");
  double lam = d.minCoeff();
  std::vector<int> g(r.dim);
  for (int i = 0; i < r.dim; ++i) {
    double x = d[i] - lam;
    g[i] = int(std::lround(x));
    if (std::abs(x - g[i]) > 1e-9) throw std::logic_error("rep construction: broken E-eigenvalue string");
  }
  std::vector<int> perm(r.dim);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return g[a] < g[b]; });

  Rep out = r;
  out.grade.resize(r.dim);
  for (int i = 0; i < r.dim; ++i) {
    out.labels[i] = r.labels[perm[i]];
    out.grade[i] = g[perm[i]];
  }
  Mat P = Mat::Zero(r.dim, r.dim);
  for (int i = 0; i < r.dim; ++i) P(perm[i], i) = 1.0;
  for (std::size_t k = 0; k < r.action.size(); ++k) out.action[k] = P.transpose() * r.action[k] * P;
  if (r.embed.size()) out.embed = r.embed * P;
  if (r.dual_pairing.size()) out.dual_pairing = P.transpose() * r.dual_pairing;
  out.lambda = lam;
  out.grade_width = *std::max_element(out.grade.begin(), out.grade.end());
  // unbroken string
  for (int j = 0; j <= out.grade_width; ++j)
    if (std::find(out.grade.begin(), out.grade.end(), j) == out.grade.end())
      throw std::logic_error("rep construction: grading string has a gap");
  r = std::move(out);
}

}  // namespace

Mat Rep::act(const Vec& alg_coeffs) const {
  Mat m = Mat::Zero(dim, dim);
  for (int i = 0; i < alg->dim(); ++i)
    if (alg_coeffs[i] != 0.0) m += alg_coeffs[i] * action[i];
  return m;
}

std::vector<int> Rep::grade_dims() const {
  std::vector<int> d(grade_width + 1, 0);
  for (int g : grade) d[g] += 1;
  return d;
}

Mat Rep::grade_projector(int j) const {
  Mat p = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    if (grade[i] == j) p(i, i) = 1.0;
  return p;
}

std::vector<Vec> Rep::grading_decompose(const Vec& v) const {
  std::vector<Vec> parts(grade_width + 1, Vec::Zero(dim));
  for (int i = 0; i < dim; ++i) parts[grade[i]][i] = v[i];
  return parts;
}

int Rep::single_grade_of(const Vec& v, double tol) const {
  auto parts = grading_decompose(v);
  int found = -1;
  for (int j = 0; j <= grade_width; ++j) {
    if (parts[j].norm() > tol * std::max(1.0, v.norm())) {
      if (found >= 0) return -1;
      found = j;
    }
  }
  return found;
}

RepPtr standard_rep(AlgPtr alg) {
  auto r = std::make_shared<Rep>();
  r->alg = alg;
  r->descriptor = "std";
  r->dim = alg->matrix_size;
  r->action.assign(alg->basis.begin(), alg->basis.end());
  r->labels.resize(r->dim);
  for (int i = 0; i < r->dim; ++i) r->labels[i] = "e" + std::to_string(i);
  r->grade.assign(r->dim, 0);
  r->embed = Mat::Identity(r->dim, r->dim);
  sort_by_grade(*r);
  return r;
}

RepPtr adjoint_rep(AlgPtr alg) {
  auto r = std::make_shared<Rep>();
  r->alg = alg;
  r->descriptor = "adjoint";
  r->dim = alg->dim();
  r->labels = alg->labels;
  r->action.resize(alg->dim());
  for (int i = 0; i < alg->dim(); ++i) {
    Mat ad(r->dim, r->dim);
    for (int j = 0; j < r->dim; ++j) {
      Mat c = alg->basis[i] * alg->basis[j] - alg->basis[j] * alg->basis[i];
      double res = 0.0;
      ad.col(j) = alg->coeffs_of(c, &res);
      if (res > 1e-10) throw std::logic_error("adjoint_rep: bracket left the algebra");
    }
    r->action[i] = ad;
  }
  r->grade.assign(r->dim, 0);
  r->embed = Mat::Identity(r->dim, r->dim);
  sort_by_grade(*r);
  return r;
}

RepPtr dual_rep(RepPtr base) {
  if (!base->atoms.empty()) throw std::invalid_argument("dual_rep: only atom reps can be dualized");
  auto r = std::make_shared<Rep>();
  r->alg = base->alg;
  r->descriptor = "dual(" + base->descriptor + ")";
  r->dim = base->dim;
  r->labels.resize(r->dim);
  for (int i = 0; i < r->dim; ++i) r->labels[i] = base->labels[i] + "*";
  r->action.resize(base->action.size());
  for (std::size_t i = 0; i < base->action.size(); ++i) r->action[i] = -base->action[i].transpose();
  r->grade.assign(r->dim, 0);
  r->embed = Mat::Identity(r->dim, r->dim);
  r->primal = base;
  r->dual_pairing = Mat::Identity(r->dim, r->dim);
  sort_by_grade(*r);
  return r;
}

namespace {

std::vector<RepPtr> atom_list(const RepPtr& r) {
  if (r->atoms.empty()) return {r};
  return r->atoms;
}

}  // namespace

RepPtr tensor_rep(RepPtr a, RepPtr b) {
  if (a->alg != b->alg) throw std::invalid_argument("tensor_rep: mixed algebras");
  auto r = std::make_shared<Rep>();
  r->alg = a->alg;
  r->descriptor = "tensor(" + a->descriptor + "," + b->descriptor + ")";
  r->dim = a->dim * b->dim;
  Mat Ia = Mat::Identity(a->dim, a->dim), Ib = Mat::Identity(b->dim, b->dim);
  r->action.resize(a->action.size());
  for (std::size_t i = 0; i < a->action.size(); ++i)
    r->action[i] = kron(a->action[i], Ib) + kron(Ia, b->action[i]);
  r->labels.resize(r->dim);
  for (int i = 0; i < a->dim; ++i)
    for (int j = 0; j < b->dim; ++j) r->labels[i * b->dim + j] = a->labels[i] + "|" + b->labels[j];
  r->grade.assign(r->dim, 0);
  auto atoms_a = atom_list(a), atoms_b = atom_list(b);
  r->atoms = atoms_a;
  r->atoms.insert(r->atoms.end(), atoms_b.begin(), atoms_b.end());
  r->embed = kron(a->embed, b->embed);
  sort_by_grade(*r);
  return r;
}

namespace {

RepPtr power_rep(RepPtr base, int k, bool sym) {
  if (k < 1) throw std::invalid_argument("power_rep: k >= 1");
  const int d = base->dim;
  // words: weakly (sym) or strictly (alt) increasing index tuples, lex order
  std::vector<std::vector<int>> words;
  std::vector<int> w(k, 0);
  auto rec = [&](auto&& self, int pos, int lo) -> void {
    if (pos == k) {
      words.push_back(w);
      return;
    }
    for (int i = lo; i < d; ++i) {
      w[pos] = i;
      self(self, pos + 1, sym ? i : i + 1);
    }
  };
  rec(rec, 0, 0);

  long word_dim = 1;
  for (int i = 0; i < k; ++i) word_dim *= d;
  Mat S = Mat::Zero(word_dim, int(words.size()));
  std::vector<int> perm(k);
  for (std::size_t c = 0; c < words.size(); ++c) {
    std::iota(perm.begin(), perm.end(), 0);
    // sum over all permutations of the positions
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    do {
      double sgn = 1.0;
      if (!sym) {
        // count inversions
        int inv = 0;
        for (int i = 0; i < k; ++i)
          for (int j = i + 1; j < k; ++j)
            if (p[i] > p[j]) ++inv;
        sgn = (inv % 2) ? -1.0 : 1.0;
      }
      long idx = 0;
      for (int i = 0; i < k; ++i) idx = idx * d + words[c][p[i]];
      S(idx, int(c)) += sgn;
    } while (std::next_permutation(p.begin(), p.end()));
    S.col(int(c)).normalize();
  }

  auto r = std::make_shared<Rep>();
  r->alg = base->alg;
  r->descriptor = (sym ? "sym(" : "alt(") + std::to_string(k) + "," + base->descriptor + ")";
  r->dim = int(words.size());
  std::vector<int> dims(k, d);
  r->action.resize(base->action.size());
  for (std::size_t i = 0; i < base->action.size(); ++i) {
    Mat AS = Mat::Zero(word_dim, r->dim);
    for (int pos = 0; pos < k; ++pos) AS += apply_factor(base->action[i], pos, dims, S);
    r->action[i] = S.transpose() * AS;
  }
  r->labels.resize(r->dim);
  const char* sep = sym ? "." : "^";
  for (int c = 0; c < r->dim; ++c) {
    std::string l;
    for (int i = 0; i < k; ++i) l += (i ? sep : "") + base->labels[words[c][i]];
    r->labels[c] = l;
  }
  r->grade.assign(r->dim, 0);
  auto batoms = atom_list(base);
  for (int i = 0; i < k; ++i) r->atoms.insert(r->atoms.end(), batoms.begin(), batoms.end());
  Mat be = base->embed;
  Mat full = be;
  for (int i = 1; i < k; ++i) full = kron(full, be).eval();
  r->embed = full * S;
  sort_by_grade(*r);
  return r;
}

}  // namespace

RepPtr sym_power_rep(RepPtr base, int k) { return power_rep(base, k, true); }
RepPtr alt_power_rep(RepPtr base, int k) { return power_rep(base, k, false); }

Mat atom_invariant_form(const Rep& atom) {
  if (!atom.atoms.empty()) throw std::invalid_argument("atom_invariant_form: not an atom");
  if (atom.alg->kind == Flavor::conformal && atom.descriptor == "std") {
    const int n = atom.alg->n;
    const int N = n + 2;
    Mat Q = Mat::Zero(N, N);
    Q(0, N - 1) = Q(N - 1, 0) = 1.0;
    for (int i = 1; i <= n; ++i) Q(i, i) = 1.0;
    // transport to rep coordinates through the basis permutation
    return atom.embed.transpose() * Q * atom.embed;
  }
  throw std::invalid_argument("no invariant bilinear form on rep " + atom.descriptor);
}

namespace {

// Stacked matrix of every invariant pair contraction out of `base`.
Mat contraction_stack(const Rep& base) {
  const auto& as = base.atoms;
  if (as.empty()) throw std::invalid_argument("trace_free: rep has no tensor realization");
  std::vector<Mat> forms(as.size());
  std::vector<int> dims(as.size());
  for (std::size_t i = 0; i < as.size(); ++i) {
    forms[i] = atom_invariant_form(*as[i]);
    dims[i] = as[i]->dim;
  }
  long word_dim = 1;
  for (int d : dims) word_dim *= d;
  std::vector<Mat> rows;
  for (std::size_t p = 0; p < as.size(); ++p)
    for (std::size_t q = p + 1; q < as.size(); ++q) {
      // contraction over factors p and q with the form
      long out_dim = word_dim / (dims[p] * (long)dims[q]);
      Mat C = Mat::Zero(out_dim, word_dim);
      // iterate over all word indices
      std::vector<int> idx(as.size(), 0);
      for (long flat = 0; flat < word_dim; ++flat) {
        long rem = flat;
        for (int i = int(as.size()) - 1; i >= 0; --i) {
          idx[i] = int(rem % dims[i]);
          rem /= dims[i];
        }
        // output index: drop p and q
        long oidx = 0;
        for (std::size_t i = 0; i < as.size(); ++i) {
          if (i == p || i == q) continue;
          oidx = oidx * dims[i] + idx[i];
        }
        C(oidx, flat) += forms[p](idx[p], idx[q]);
      }
      rows.push_back(C * base.embed);
    }
  long total = 0;
  for (auto& m : rows) total += m.rows();
  Mat K(total, base.dim);
  long at = 0;
  for (auto& m : rows) {
    K.middleRows(at, m.rows()) = m;
    at += m.rows();
  }
  return K;
}

}  // namespace

RepPtr trace_free_rep(RepPtr base) {
  Mat K = contraction_stack(*base);
  // gradewise kernel so the new basis stays graded
  std::vector<Vec> cols;
  std::vector<std::string> labels;
  for (int j = 0; j <= base->grade_width; ++j) {
    std::vector<int> sel;
    for (int i = 0; i < base->dim; ++i)
      if (base->grade[i] == j) sel.push_back(i);
    if (sel.empty()) continue;
    Mat Kj(K.rows(), sel.size());
    for (std::size_t c = 0; c < sel.size(); ++c) Kj.col(c) = K.col(sel[c]);
    Eigen::JacobiSVD<Mat> svd(Kj, Eigen::ComputeFullV);
    double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > 1e-10 * std::max(smax, 1.0)) ++rank;
    int null_dim = int(sel.size()) - rank;
    for (int c = 0; c < null_dim; ++c) {
      Vec full = Vec::Zero(base->dim);
      for (std::size_t s = 0; s < sel.size(); ++s) full[sel[s]] = svd.matrixV()(s, rank + c);
      cols.push_back(full);
      labels.push_back("tf" + std::to_string(j) + "_" + std::to_string(c));
    }
  }
  Mat Ker(base->dim, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) Ker.col(c) = cols[c];

  auto r = std::make_shared<Rep>();
  r->alg = base->alg;
  r->descriptor = "tf(" + base->descriptor + ")";
  if (base->descriptor.rfind("sym(", 0) == 0)
    r->descriptor = "sym0" + base->descriptor.substr(3);
  r->dim = int(cols.size());
  r->labels = labels;
  r->action.resize(base->action.size());
  for (std::size_t i = 0; i < base->action.size(); ++i)
    r->action[i] = Ker.transpose() * base->action[i] * Ker;
  r->grade.assign(r->dim, 0);
  r->atoms = base->atoms;
  r->embed = base->embed * Ker;
  sort_by_grade(*r);
  return r;
}

Mat trace_free_projector(const Rep& base) {
  Mat K = contraction_stack(base);
  // orthogonal projector onto ker K
  Eigen::JacobiSVD<Mat> svd(K, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-10 * std::max(smax, 1.0)) ++rank;
  Mat V = svd.matrixV();
  Mat Null = V.rightCols(V.cols() - rank);
  return Null * Null.transpose();
}

double EquivarianceReport::max() const {
  return std::max({homomorphism, abelian_m1, abelian_p1, equiv_T, equiv_Tstar, grade_shift});
}

EquivarianceReport equivariance_residual(const Rep& rep) {
  const auto& alg = *rep.alg;
  EquivarianceReport rr;
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      Mat c = alg.basis[i] * alg.basis[j] - alg.basis[j] * alg.basis[i];
      Vec cc = alg.coeffs_of(c);
      Mat lhs = rep.action[i] * rep.action[j] - rep.action[j] * rep.action[i];
      Mat rhs = rep.act(cc);
      double res = (lhs - rhs).cwiseAbs().maxCoeff();
      rr.homomorphism = std::max(rr.homomorphism, res);
      int gi = alg.grade[i], gj = alg.grade[j];
      if (gi == -1 && gj == -1) rr.abelian_m1 = std::max(rr.abelian_m1, res);
      if (gi == 1 && gj == 1) rr.abelian_p1 = std::max(rr.abelian_p1, res);
      if (gi == 0 && gj == -1) rr.equiv_T = std::max(rr.equiv_T, res);
      if (gi == 0 && gj == 1) rr.equiv_Tstar = std::max(rr.equiv_Tstar, res);
    }
  for (int i = 0; i < alg.dim(); ++i) {
    int gi = alg.grade[i];
    for (int j = 0; j <= rep.grade_width; ++j) {
      Mat img = rep.action[i] * rep.grade_projector(j);
      for (int jp = 0; jp <= rep.grade_width; ++jp) {
        if (jp == j + gi) continue;
        double res = (rep.grade_projector(jp) * img).cwiseAbs().maxCoeff();
        rr.grade_shift = std::max(rr.grade_shift, res);
      }
    }
  }
  return rr;
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  int number() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (start == pos) throw std::invalid_argument("rep descriptor: expected integer in '" + s + "'");
    return std::stoi(s.substr(start, pos - start));
  }
  void expect(char c) {
    skip();
    if (pos >= s.size() || s[pos] != c)
      throw std::invalid_argument(std::string("rep descriptor: expected '") + c + "' in '" + s + "'");
    ++pos;
  }

  RepPtr expr(AlgPtr alg) {
    skip();
    if (eat("std")) return standard_rep(alg);
    if (eat("adjoint")) return adjoint_rep(alg);
    if (eat("dual")) {
      expect('(');
      auto inner = expr(alg);
      expect(')');
      return dual_rep(inner);
    }
    if (eat("sym0")) {
      expect('(');
      int k = number();
      expect(',');
      auto inner = expr(alg);
      expect(')');
      return trace_free_rep(sym_power_rep(inner, k));
    }
    if (eat("sym")) {
      expect('(');
      int k = number();
      expect(',');
      auto inner = expr(alg);
      expect(')');
      return sym_power_rep(inner, k);
    }
    if (eat("alt")) {
      expect('(');
      int k = number();
      expect(',');
      auto inner = expr(alg);
      expect(')');
      return alt_power_rep(inner, k);
    }
    throw std::invalid_argument("rep descriptor: parse error in '" + s + "'");
  }
};

}  // namespace

RepPtr parse_rep(AlgPtr alg, const std::string& descriptor) {
  Parser p{descriptor};
  auto r = p.expr(alg);
  p.skip();
  if (p.pos != descriptor.size())
    throw std::invalid_argument("rep descriptor: trailing input in '" + descriptor + "'");
  return r;
}

}  // namespace bgg
