#include "bgg/twisted.hpp"

#include <stdexcept>

namespace bgg {

namespace {

std::vector<Jet> jmat_apply(const JetMat& M, const std::vector<Jet>& v) {
  std::vector<Jet> out;
  out.reserve(M.rows);
  for (int p = 0; p < M.rows; ++p) {
    Jet acc;
    bool started = false;
    for (int q = 0; q < M.cols; ++q) {
      const Jet& m = M.at(p, q);
      if (m.sup_norm() == 0.0 && started) continue;
      Jet term = m * v[q];
      if (!started) {
        acc = term;
        started = true;
      } else {
        acc += term;
      }
    }
    out.push_back(acc);
  }
  return out;
}

// Constant matrix acting on a stacked vector of jets. Each output component
// keeps the min order over its own contributing inputs; components with no
// contribution stay zero at `fallback_order`.
std::vector<Jet> cmat_apply(const Mat& M, const std::vector<Jet>& v, int dim, int fallback_order) {
  std::vector<Jet> out;
  out.reserve(M.rows());
  for (int p = 0; p < M.rows(); ++p) {
    Jet acc;
    bool started = false;
    for (int q = 0; q < M.cols(); ++q) {
      double w = M(p, q);
      if (w == 0.0) continue;
      if (!started) {
        acc = v[q].scaled(w);
        started = true;
      } else {
        acc += v[q].scaled(w);
      }
    }
    out.push_back(started ? acc : Jet::constant(dim, fallback_order, 0.0));
  }
  return out;
}

Jet det_jet(const JetMat& M, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int k = int(rows.size());
  if (k == 0) return Jet::constant(M.at(0, 0).dim(), M.at(0, 0).order(), 1.0);
  JetMat sub(k, k, M.at(0, 0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub.at(i, j) = M.at(rows[i], cols[j]);
  return sub.det();
}

}  // namespace

FrameData build_frame(const ChartGeometry& geom, Flavor flavor, const GradedLieAlgebra& alg) {
  if (geom.order < 1) throw std::domain_error("build_frame: order exhausted");
  FrameData fr;
  fr.flavor = flavor;
  fr.n = geom.n;
  const int n = geom.n;

  if (flavor == Flavor::conformal) {
    if (!geom.metric) throw std::invalid_argument("build_frame: conformal flavor needs a metric");
    const MetricJet& m = *geom.metric;
    fr.order = m.order;
    Jet zero = Jet::constant(n, m.order, 0.0);
    // Gram-Schmidt on the coordinate frame with jet arithmetic
    std::vector<std::vector<Jet>> e(n, std::vector<Jet>(n, zero));
    auto inner = [&](const std::vector<Jet>& u, const std::vector<Jet>& v) {
      Jet acc = zero;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += m.at(i, j) * u[i] * v[j];
      return acc;
    };
    for (int a = 0; a < n; ++a) {
      std::vector<Jet> u(n, zero);
      u[a] = Jet::constant(n, m.order, 1.0);
      for (int b = 0; b < a; ++b) {
        Jet proj = inner(u, e[b]);
        for (int i = 0; i < n; ++i) u[i] -= proj * e[b][i];
      }
      Jet norm_inv = inner(u, u).sqrt().reciprocal();
      for (int i = 0; i < n; ++i) e[a][i] = u[i] * norm_inv;
    }
    fr.F = JetMat(n, n, zero);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) fr.F.at(i, a) = e[a][i];
  } else {
    fr.order = geom.order;
    Jet zero = Jet::constant(n, fr.order, 0.0);
    Jet scale = jet_exp(jet_log(geom.conn.volume_density.truncated(fr.order)).scaled(-1.0 / n));
    fr.F = JetMat(n, n, zero);
    for (int i = 0; i < n; ++i) fr.F.at(i, i) = scale;
  }
  fr.Finv = fr.F.inverse();
  {
    JetMat id = JetMat::identity(n, n, fr.order);
    double diff = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) diff = std::max(diff, (fr.F.at(i, j) - id.at(i, j)).sup_norm());
    fr.trivial = (diff == 0.0);
  }

  // connection form: omega(d_i)^b_a = Finv^b_j (d_i F^j_a + Gamma^j_{ik} F^k_a)
  const ConnectionJet& c = geom.conn;
  const int worder = std::min(fr.order - 1, c.order);
  fr.omega.assign(n, std::vector<Jet>(alg.dim_g0(), Jet::constant(n, worder, 0.0)));
  fr.g0_residual = 0.0;
  for (int i = 0; i < n; ++i) {
    JetMat w(n, n, Jet::constant(n, worder, 0.0));
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        Jet acc = Jet::constant(n, worder, 0.0);
        for (int j = 0; j < n; ++j) {
          Jet inner_term = fr.F.at(j, a).partial(i);
          for (int k = 0; k < n; ++k) inner_term += c.at(j, i, k) * fr.F.at(k, a);
          acc += fr.Finv.at(b, j) * inner_term;
        }
        w.at(b, a) = acc;
      }
    // solve per jet coefficient for the g_0 coefficients
    const auto& table = multi_index_table(n, worder);
    for (std::size_t r = 0; r < table.size(); ++r) {
      Mat wr(n, n);
      for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) wr(b, a) = w.at(b, a).coeff_rank(int(r));
      double res = 0.0;
      Vec coeffs = alg.g0_coeffs_from_matrix(wr, &res);
      fr.g0_residual = std::max(fr.g0_residual, res);
      for (int a = 0; a < alg.dim_g0(); ++a)
        fr.omega[i][a].set_coeff_rank(int(r), coeffs[alg.idx_g0(a)]);
    }
  }

  // Lambda^k slot conversions
  fr.to_frame.resize(n + 1);
  fr.to_coord.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    auto subs = increasing_subsets(n, k);
    const int cnk = int(subs.size());
    fr.to_frame[k] = JetMat(cnk, cnk, Jet::constant(n, fr.order, 0.0));
    fr.to_coord[k] = JetMat(cnk, cnk, Jet::constant(n, fr.order, 0.0));
    for (int A = 0; A < cnk; ++A)
      for (int S = 0; S < cnk; ++S) {
        fr.to_frame[k].at(A, S) = det_jet(fr.F, subs[S], subs[A]);
        fr.to_coord[k].at(S, A) = det_jet(fr.Finv, subs[A], subs[S]);
      }
  }
  return fr;
}

VForm VForm::zero(RepPtr rep, int n, int degree, int dim, int order) {
  VForm f;
  f.rep = rep;
  f.n = n;
  f.degree = degree;
  auto subs = increasing_subsets(n, degree);
  f.c.assign(subs.size(), std::vector<Jet>(rep->dim, Jet::constant(dim, order, 0.0)));
  return f;
}

double VForm::sup_norm() const {
  double m = 0.0;
  for (const auto& row : c)
    for (const auto& j : row) m = std::max(m, j.sup_norm());
  return m;
}

Vec VForm::value0() const {
  Vec v(int(c.size()) * rep->dim);
  for (std::size_t s = 0; s < c.size(); ++s)
    for (int m = 0; m < rep->dim; ++m) v[int(s) * rep->dim + m] = c[s][m].value();
  return v;
}

VForm VForm::operator+(const VForm& o) const {
  VForm r = *this;
  for (std::size_t s = 0; s < c.size(); ++s)
    for (std::size_t m = 0; m < c[s].size(); ++m) r.c[s][m] = c[s][m] + o.c[s][m];
  return r;
}

VForm VForm::operator-(const VForm& o) const {
  VForm r = *this;
  for (std::size_t s = 0; s < c.size(); ++s)
    for (std::size_t m = 0; m < c[s].size(); ++m) r.c[s][m] = c[s][m] - o.c[s][m];
  return r;
}

VForm VForm::scaled(double s) const {
  VForm r = *this;
  for (auto& row : r.c)
    for (auto& j : row) j = j.scaled(s);
  return r;
}

VForm VForm::grade_part(int j) const {
  VForm r = *this;
  for (auto& row : r.c)
    for (std::size_t m = 0; m < row.size(); ++m)
      if (rep->grade[m] != j) row[m] = row[m].scaled(0.0);
  return r;
}

int VForm::min_order() const {
  int mo = c.empty() || c[0].empty() ? 0 : c[0][0].order();
  for (const auto& row : c)
    for (const auto& j : row) mo = std::min(mo, j.order());
  return mo;
}

VForm random_vform(RepPtr rep, int n, int degree, int order, std::mt19937_64& rng, double amp) {
  VForm f = VForm::zero(rep, n, degree, n, order);
  for (auto& row : f.c)
    for (auto& j : row) j = random_jet(n, order, rng, amp);
  return f;
}

Context make_context(AlgPtr alg, RepPtr rep, std::shared_ptr<const ChartGeometry> geom) {
  Context ctx;
  ctx.alg = alg;
  ctx.rep = rep;
  ctx.geom = geom;
  ctx.hodge = std::make_shared<HodgeDecomposition>(hodge_split(rep));
  ctx.frame = std::make_shared<FrameData>(build_frame(*geom, alg->kind, *alg));
  const MetricJet* m = geom->metric ? &*geom->metric : nullptr;
  ctx.pkg = std::make_shared<CurvaturePackage>(curvature_package(
      geom->conn, alg->kind, alg->kind == Flavor::conformal ? m : nullptr));

  const int n = geom->n;
  const FrameData& fr = *ctx.frame;
  const CurvaturePackage& pkg = *ctx.pkg;
  const int dv = rep->dim;
  const int worder = fr.omega[0][0].order();
  const int porder = pkg.P[0].order();

  ctx.rho_omega.assign(n, JetMat(dv, dv, Jet::constant(n, worder, 0.0)));
  ctx.rho_xi.assign(n, JetMat(dv, dv, Jet::constant(n, fr.order, 0.0)));
  ctx.rho_p.assign(n, JetMat(dv, dv, Jet::constant(n, porder, 0.0)));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < alg->dim_g0(); ++a) {
      const Mat& rho = rep->rho(alg->idx_g0(a));
      for (int p = 0; p < dv; ++p)
        for (int q = 0; q < dv; ++q)
          if (rho(p, q) != 0.0) ctx.rho_omega[i].at(p, q) += fr.omega[i][a].scaled(rho(p, q));
    }
    for (int a = 0; a < n; ++a) {
      const Mat& rho = rep->rho(alg->idx_gm1(a));
      const Jet& wj = fr.Finv.at(a, i);
      for (int p = 0; p < dv; ++p)
        for (int q = 0; q < dv; ++q)
          if (rho(p, q) != 0.0) ctx.rho_xi[i].at(p, q) += wj.scaled(rho(p, q));
    }
    for (int a = 0; a < n; ++a) {
      // P(d_i)(e_a) = sum_j P_ij F^j_a
      Jet w = Jet::constant(n, porder, 0.0);
      for (int j = 0; j < n; ++j) w += pkg.p(i, j) * fr.F.at(j, a);
      const Mat& rho = rep->rho(alg->idx_g1(a));
      for (int p = 0; p < dv; ++p)
        for (int q = 0; q < dv; ++q)
          if (rho(p, q) != 0.0) ctx.rho_p[i].at(p, q) += w.scaled(rho(p, q));
    }
  }
  return ctx;
}

Context make_context(Flavor flavor, const GeometryDescriptor& geo, const std::string& rep_descriptor) {
  auto alg = std::make_shared<const GradedLieAlgebra>(build_graded_algebra(flavor, geo.n));
  auto rep = parse_rep(alg, rep_descriptor);
  auto geom = std::make_shared<const ChartGeometry>(build_geometry(geo));
  return make_context(alg, rep, geom);
}

std::vector<Jet> derive_section(const Context& ctx, const std::vector<Jet>& s, int i, DerivMode mode) {
  std::vector<Jet> out(s.size());
  for (std::size_t m = 0; m < s.size(); ++m) out[m] = s[m].partial(i);
  auto add = [&](const std::vector<Jet>& t, double sign) {
    for (std::size_t m = 0; m < s.size(); ++m) out[m] = out[m] + t[m].scaled(sign);
  };
  add(jmat_apply(ctx.rho_omega[i], s), 1.0);
  if (mode == DerivMode::twisted || mode == DerivMode::semiflat) add(jmat_apply(ctx.rho_xi[i], s), 1.0);
  if (mode == DerivMode::twisted) add(jmat_apply(ctx.rho_p[i], s), -1.0);
  return out;
}

VForm dform(const Context& ctx, const VForm& phi, DerivMode mode) {
  const int n = ctx.n(), k = phi.degree;
  if (k >= n) throw std::invalid_argument("dform: top degree");
  VForm out;
  out.rep = phi.rep;
  out.n = n;
  out.degree = k + 1;
  auto out_subs = increasing_subsets(n, k + 1);
  out.c.resize(out_subs.size());
  for (std::size_t so = 0; so < out_subs.size(); ++so) {
    const auto& Sp = out_subs[so];
    std::vector<Jet> acc;
    for (std::size_t j = 0; j < Sp.size(); ++j) {
      std::vector<int> rest;
      for (std::size_t q = 0; q < Sp.size(); ++q)
        if (q != j) rest.push_back(Sp[q]);
      int si = subset_rank(n, rest);
      auto d = derive_section(ctx, phi.c[si], Sp[j], mode);
      double sign = (j % 2) ? -1.0 : 1.0;
      if (acc.empty()) {
        acc = std::move(d);
        if (sign < 0)
          for (auto& jj : acc) jj = jj.scaled(-1.0);
      } else {
        for (int m = 0; m < phi.rep->dim; ++m) acc[m] += d[m].scaled(sign);
      }
    }
    out.c[so] = std::move(acc);
  }
  return out;
}

namespace {

VForm algebraic_insertion(const Context& ctx, const VForm& phi, const std::vector<JetMat>& rho_dir,
                          double sign_all) {
  const int n = ctx.n(), k = phi.degree;
  if (k >= n) throw std::invalid_argument("algebraic op: top degree");
  VForm out;
  out.rep = phi.rep;
  out.n = n;
  out.degree = k + 1;
  auto out_subs = increasing_subsets(n, k + 1);
  out.c.resize(out_subs.size());
  for (std::size_t so = 0; so < out_subs.size(); ++so) {
    const auto& Sp = out_subs[so];
    std::vector<Jet> acc;
    for (std::size_t j = 0; j < Sp.size(); ++j) {
      std::vector<int> rest;
      for (std::size_t q = 0; q < Sp.size(); ++q)
        if (q != j) rest.push_back(Sp[q]);
      int si = subset_rank(n, rest);
      auto t = jmat_apply(rho_dir[Sp[j]], phi.c[si]);
      double sign = ((j % 2) ? -1.0 : 1.0) * sign_all;
      if (acc.empty()) {
        acc = std::move(t);
        if (sign < 0)
          for (auto& jj : acc) jj = jj.scaled(-1.0);
      } else {
        for (int m = 0; m < phi.rep->dim; ++m) acc[m] += t[m].scaled(sign);
      }
    }
    out.c[so] = std::move(acc);
  }
  return out;
}

// Slot conversion between coordinate-indexed and frame-indexed coefficients.
std::vector<std::vector<Jet>> convert_slots(const Context& ctx, const std::vector<std::vector<Jet>>& c,
                                            int k, bool to_frame) {
  if (ctx.frame->trivial) return c;
  const JetMat& M = to_frame ? ctx.frame->to_frame[k] : ctx.frame->to_coord[k];
  std::vector<std::vector<Jet>> out(c.size());
  const int dv = ctx.rep->dim;
  for (int A = 0; A < int(c.size()); ++A) {
    std::vector<Jet> acc(dv);
    bool started = false;
    for (int S = 0; S < int(c.size()); ++S) {
      const Jet& w = M.at(A, S);
      if (w.sup_norm() == 0.0 && started) continue;
      if (!started) {
        for (int m = 0; m < dv; ++m) acc[m] = w * c[S][m];
        started = true;
      } else {
        for (int m = 0; m < dv; ++m) acc[m] += w * c[S][m];
      }
    }
    out[A] = std::move(acc);
  }
  return out;
}

std::vector<Jet> stack_coeffs(const std::vector<std::vector<Jet>>& c) {
  std::vector<Jet> out;
  for (const auto& row : c) out.insert(out.end(), row.begin(), row.end());
  return out;
}

std::vector<std::vector<Jet>> unstack_coeffs(const std::vector<Jet>& v, int nsub, int dv) {
  std::vector<std::vector<Jet>> out(nsub, std::vector<Jet>(dv));
  for (int s = 0; s < nsub; ++s)
    for (int m = 0; m < dv; ++m) out[s][m] = v[std::size_t(s) * dv + m];
  return out;
}

VForm apply_fiber_matrix(const Context& ctx, const VForm& phi, const Mat& fiber, int out_degree) {
  const int n = ctx.n(), dv = ctx.rep->dim;
  auto frame_c = convert_slots(ctx, phi.c, phi.degree, true);
  auto flat = stack_coeffs(frame_c);
  int order = phi.min_order();
  auto out_flat = cmat_apply(fiber, flat, n, order);
  int nsub_out = int(increasing_subsets(n, out_degree).size());
  auto out_frame = unstack_coeffs(out_flat, nsub_out, dv);
  VForm out = VForm::zero(ctx.rep, n, out_degree, n, order);
  out.c = convert_slots(ctx, out_frame, out_degree, false);
  return out;
}

}  // namespace

VForm del_form(const Context& ctx, const VForm& phi) {
  return algebraic_insertion(ctx, phi, ctx.rho_xi, 1.0);
}

VForm delP_form(const Context& ctx, const VForm& phi) {
  // P-part of the twisted exterior derivative (sign folded in, so that
  // twisted = plain + del + delP holds on the nose)
  return algebraic_insertion(ctx, phi, ctx.rho_p, -1.0);
}

VForm T_form(const Context& ctx, const VForm& phi) {
  if (phi.degree < 1) throw std::invalid_argument("T_form: degree >= 1 required");
  return apply_fiber_matrix(ctx, phi, ctx.hodge->deg[phi.degree].T, phi.degree - 1);
}

VForm harmonic_projection(const Context& ctx, const VForm& phi) {
  return apply_fiber_matrix(ctx, phi, ctx.hodge->deg[phi.degree].proj, phi.degree);
}

VForm upsilon_component(const Context& ctx, const VForm& phi) { return harmonic_projection(ctx, phi); }

std::vector<Jet> act_g0_matrix(const Context& ctx, const JetMat& frame_matrix,
                               const std::vector<Jet>& s, double* membership_residual) {
  const auto& alg = *ctx.alg;
  const int n = ctx.n(), dv = ctx.rep->dim;
  const int order = frame_matrix.at(0, 0).order();
  std::vector<Jet> coeffs(alg.dim_g0(), Jet::constant(n, order, 0.0));
  const auto& table = multi_index_table(n, order);
  double worst = 0.0;
  for (std::size_t r = 0; r < table.size(); ++r) {
    Mat wr(n, n);
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) wr(b, a) = frame_matrix.at(b, a).coeff_rank(int(r));
    double res = 0.0;
    Vec c = alg.g0_coeffs_from_matrix(wr, &res);
    worst = std::max(worst, res);
    for (int a = 0; a < alg.dim_g0(); ++a) coeffs[a].set_coeff_rank(int(r), c[alg.idx_g0(a)]);
  }
  if (membership_residual) *membership_residual = worst;
  JetMat M(dv, dv, Jet::constant(n, order, 0.0));
  for (int a = 0; a < alg.dim_g0(); ++a) {
    const Mat& rho = ctx.rep->rho(alg.idx_g0(a));
    for (int p = 0; p < dv; ++p)
      for (int q = 0; q < dv; ++q)
        if (rho(p, q) != 0.0) M.at(p, q) += coeffs[a].scaled(rho(p, q));
  }
  return jmat_apply(M, s);
}

std::vector<Jet> act_covector(const Context& ctx, const std::vector<Jet>& frame_components,
                              const std::vector<Jet>& s) {
  const auto& alg = *ctx.alg;
  const int dv = ctx.rep->dim;
  const int n = ctx.n();
  const int order = frame_components[0].order();
  JetMat M(dv, dv, Jet::constant(n, order, 0.0));
  for (int a = 0; a < n; ++a) {
    const Mat& rho = ctx.rep->rho(alg.idx_g1(a));
    for (int p = 0; p < dv; ++p)
      for (int q = 0; q < dv; ++q)
        if (rho(p, q) != 0.0) M.at(p, q) += frame_components[a].scaled(rho(p, q));
  }
  return jmat_apply(M, s);
}

namespace {

JetMat curvature_frame_matrix(const Context& ctx, const std::vector<Jet>& tensor, int i, int j) {
  // conjugate the coordinate endomorphism l<-k into the frame
  const int n = ctx.n();
  const auto& fr = *ctx.frame;
  int order = tensor[0].order();
  JetMat coord(n, n, Jet::constant(n, order, 0.0));
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      coord.at(l, k) = tensor[((std::size_t(l) * n + k) * n + i) * n + j];
  JetMat out(n, n, Jet::constant(n, order, 0.0));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      Jet acc = Jet::constant(n, order, 0.0);
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) acc += fr.Finv.at(b, l) * coord.at(l, k) * fr.F.at(k, a);
      out.at(b, a) = acc;
    }
  return out;
}

std::vector<Jet> cotton_frame_components(const Context& ctx, int i, int j) {
  const int n = ctx.n();
  const auto& pkg = *ctx.pkg;
  if (pkg.Y.empty()) throw std::domain_error("Cotton-York tensor: jet order exhausted");
  const auto& fr = *ctx.frame;
  int order = pkg.Y[0].order();
  std::vector<Jet> out(n, Jet::constant(n, order, 0.0));
  for (int a = 0; a < n; ++a) {
    Jet acc = Jet::constant(n, order, 0.0);
    for (int k = 0; k < n; ++k) acc += pkg.y(i, j, k) * fr.F.at(k, a);
    out[a] = acc;
  }
  return out;
}

double section_sup(const std::vector<Jet>& s) {
  double m = 0.0;
  for (const auto& j : s) m = std::max(m, j.sup_norm());
  return m;
}

}  // namespace

TwistedCurvatureReport twisted_curvature_residual(const Context& ctx, int trials, std::uint64_t seed) {
  TwistedCurvatureReport rep;
  std::mt19937_64 rng(seed);
  const int n = ctx.n();
  const int order = ctx.geom->order;
  for (int t = 0; t < trials; ++t) {
    VForm s = random_vform(ctx.rep, n, 0, order, rng);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto di = derive_section(ctx, s.c[0], i, DerivMode::twisted);
        auto dj = derive_section(ctx, s.c[0], j, DerivMode::twisted);
        auto dij = derive_section(ctx, dj, i, DerivMode::twisted);
        auto dji = derive_section(ctx, di, j, DerivMode::twisted);
        std::vector<Jet> lhs(dij.size());
        for (std::size_t m = 0; m < dij.size(); ++m) lhs[m] = dij[m] - dji[m];
        rep.max_RV_norm = std::max(rep.max_RV_norm, section_sup(lhs));

        JetMat What = curvature_frame_matrix(ctx, ctx.pkg->W, i, j);
        auto ws = act_g0_matrix(ctx, What, s.c[0]);
        auto ys = act_covector(ctx, cotton_frame_components(ctx, i, j), s.c[0]);
        double res = 0.0;
        for (std::size_t m = 0; m < lhs.size(); ++m)
          res = std::max(res, (lhs[m] - ws[m] - ys[m]).sup_norm());
        rep.max_residual = std::max(rep.max_residual, res);
      }

    // Prop-2.6(2)-style defect of the twisted exterior square on a 0-form
    VForm dd = dform(ctx, dform(ctx, s, DerivMode::twisted), DerivMode::twisted);
    rep.max_dd_norm = std::max(rep.max_dd_norm, dd.sup_norm());
    auto out_subs = increasing_subsets(n, 2);
    double res = 0.0;
    for (std::size_t so = 0; so < out_subs.size(); ++so) {
      int i = out_subs[so][0], j = out_subs[so][1];
      JetMat What = curvature_frame_matrix(ctx, ctx.pkg->W, i, j);
      auto ws = act_g0_matrix(ctx, What, s.c[0]);
      auto ys = act_covector(ctx, cotton_frame_components(ctx, i, j), s.c[0]);
      for (int m = 0; m < ctx.rep->dim; ++m)
        res = std::max(res, (dd.c[so][m] - ws[m] - ys[m]).sup_norm());
    }
    rep.dd_defect_residual = std::max(rep.dd_defect_residual, res);
  }
  return rep;
}

GradeBookkeeping twisted_grade_bookkeeping(const Context& ctx, int trials, std::uint64_t seed) {
  GradeBookkeeping out;
  std::mt19937_64 rng(seed);
  const int n = ctx.n();
  const int order = ctx.geom->order;
  for (int t = 0; t < trials; ++t) {
    VForm s = random_vform(ctx.rep, n, 0, order, rng);
    for (int gi = 0; gi <= ctx.rep->grade_width; ++gi) {
      VForm sg = s.grade_part(gi);
      if (sg.sup_norm() == 0.0) continue;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          auto dij = derive_section(ctx, derive_section(ctx, sg.c[0], j, DerivMode::twisted), i,
                                    DerivMode::twisted);
          auto dji = derive_section(ctx, derive_section(ctx, sg.c[0], i, DerivMode::twisted), j,
                                    DerivMode::twisted);
          std::vector<Jet> lhs(dij.size());
          for (std::size_t m = 0; m < dij.size(); ++m) lhs[m] = dij[m] - dji[m];
          auto parts = [&](int grade) {
            double mn = 0.0;
            for (int m = 0; m < ctx.rep->dim; ++m)
              if (ctx.rep->grade[m] == grade) mn = std::max(mn, lhs[m].sup_norm());
            return mn;
          };
          if (gi - 2 >= 0) out.off_two = std::max(out.off_two, parts(gi - 2));
          if (gi + 2 <= ctx.rep->grade_width) out.off_two = std::max(out.off_two, parts(gi + 2));
          if (gi - 1 >= 0) out.off_minus = std::max(out.off_minus, parts(gi - 1));
          if (gi + 1 <= ctx.rep->grade_width) {
            auto ys = act_covector(ctx, cotton_frame_components(ctx, i, j), sg.c[0]);
            double mn = 0.0;
            for (int m = 0; m < ctx.rep->dim; ++m)
              if (ctx.rep->grade[m] == gi + 1) mn = std::max(mn, (lhs[m] - ys[m]).sup_norm());
            out.y_match = std::max(out.y_match, mn);
          }
        }
    }
  }
  return out;
}

}  // namespace bgg
