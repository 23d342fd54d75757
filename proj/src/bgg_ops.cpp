#include "bgg/bgg.hpp"

#include <stdexcept>

namespace bgg {

VForm build_G(const Context& ctx, const VForm& phi) {
  if (phi.degree < 1) throw std::invalid_argument("build_G: degree >= 1 required");
  VForm term = T_form(ctx, phi);
  VForm acc = term;
  const int maxit = ctx.rep->grade_width + 1;
  for (int it = 0; it < maxit; ++it) {
    if (term.sup_norm() <= 1e-300) break;
    if (term.min_order() < 1) throw std::domain_error("build_G: jet order exhausted before nilpotency");
    // term <- -T((d^tw - del)(term))
    VForm dt = dform(ctx, term, DerivMode::twisted) - del_form(ctx, term);
    term = T_form(ctx, dt).scaled(-1.0);
    acc = acc + term;
  }
  return acc;
}

VForm splitting_operator(const Context& ctx, const VForm& alpha) {
  VForm d = dform(ctx, alpha, DerivMode::twisted);
  return alpha - build_G(ctx, d);
}

VForm bgg_operator(const Context& ctx, const VForm& alpha) {
  VForm d = dform(ctx, splitting_operator(ctx, alpha), DerivMode::twisted);
  return harmonic_projection(ctx, d);
}

int expected_operator_order(const Context& ctx, int k) {
  const auto& h0 = ctx.hodge->deg[k];
  const auto& h1 = ctx.hodge->deg[k + 1];
  if (h0.grades_present.size() != 1 || h1.grades_present.size() != 1) return -1;
  return h1.grades_present[0] - h0.grades_present[0] + 1;
}

VForm closed_form_bgg(const Context& ctx, const VForm& alpha, int order) {
  int disp = expected_operator_order(ctx, alpha.degree);
  if (disp != order)
    throw std::invalid_argument("closed_form_bgg: requested order " + std::to_string(order) +
                                " but grade displacement gives " + std::to_string(disp));
  VForm d = dform(ctx, alpha, DerivMode::plain);
  if (order == 1) {
    // d^nabla psi - del(T(d^nabla psi))
    return d - del_form(ctx, T_form(ctx, d));
  }
  if (order == 2) {
    // (id - del o T - T o del)(-d^nabla(T(d^nabla psi)) + delP(psi)), with
    // delP the P-part of the twisted derivative (sign folded in)
    VForm core = dform(ctx, T_form(ctx, d), DerivMode::plain).scaled(-1.0) + delP_form(ctx, alpha);
    VForm out = core - del_form(ctx, T_form(ctx, core));
    // the T o del term vanishes identically at top degree
    if (core.degree <= ctx.n() - 1) out = out - T_form(ctx, del_form(ctx, core));
    return out;
  }
  throw std::invalid_argument("closed_form_bgg: order must be 1 or 2");
}

VForm random_upsilon_section(const Context& ctx, int k, int order, std::mt19937_64& rng) {
  VForm raw = random_vform(ctx.rep, ctx.n(), k, order, rng);
  VForm a = harmonic_projection(ctx, raw);
  double s = a.sup_norm();
  if (s > 0.0) a = a.scaled(1.0 / s);
  return a;
}

ComplexReport complex_residual(const Context& ctx, int k, int trials, std::uint64_t seed) {
  ComplexReport out;
  std::mt19937_64 rng(seed);
  const int order = ctx.geom->order;
  for (int t = 0; t < trials; ++t) {
    VForm a = random_upsilon_section(ctx, k, order, rng);
    VForm Sa = splitting_operator(ctx, a);
    VForm dSa = dform(ctx, Sa, DerivMode::twisted);
    VForm Da = harmonic_projection(ctx, dSa);
    VForm DDa = bgg_operator(ctx, Da);
    double scale = std::max({Da.sup_norm(), 1e-3 * std::max(1.0, a.sup_norm())});
    out.dd_abs = std::max(out.dd_abs, DDa.sup_norm());
    out.dd_rel = std::max(out.dd_rel, DDa.sup_norm() / scale);
    out.surviving_order = DDa.min_order();
    // chain map identity d^tw S(a) = S(D(a))
    VForm SDa = splitting_operator(ctx, Da);
    double chain = (dSa - SDa).sup_norm() / std::max(1.0, dSa.sup_norm());
    out.chain_rel = std::max(out.chain_rel, chain);
  }
  return out;
}

NormalityReport normality_check(const Context& ctx, const VForm& alpha) {
  if (alpha.degree != 0) throw std::invalid_argument("normality_check: degree 0 only");
  NormalityReport out;
  out.solution_residual = bgg_operator(ctx, alpha).sup_norm();
  VForm Sa = splitting_operator(ctx, alpha);
  double worst = 0.0;
  for (int i = 0; i < ctx.n(); ++i) {
    auto d = derive_section(ctx, Sa.c[0], i, DerivMode::twisted);
    for (const auto& j : d) worst = std::max(worst, j.sup_norm());
  }
  out.normal_residual = worst;
  return out;
}

int measure_operator_order(const Context& ctx, int k, int component, double tol) {
  const int n = ctx.n();
  const auto& hd = ctx.hodge->deg[k];
  Mat basis = hd.upsilon;
  if (component >= 0) {
    if (component >= int(hd.components.size()))
      throw std::invalid_argument("measure_operator_order: no such component");
    basis = hd.upsilon * hd.components[component];
  }
  const int order = ctx.geom->order;
  const auto& table = multi_index_table(n, order);
  int measured = -1;
  for (std::size_t r = 0; r < table.size(); ++r) {
    int deg = table.degree[r];
    if (deg <= measured) continue;  // only need the max degree that reacts
    for (int col = 0; col < basis.cols(); ++col) {
      VForm probe = VForm::zero(ctx.rep, n, k, n, order);
      for (std::size_t s = 0; s < probe.c.size(); ++s)
        for (int m = 0; m < ctx.rep->dim; ++m) {
          double w = basis(int(s) * ctx.rep->dim + m, col);
          if (w != 0.0) probe.c[s][m].set_coeff_rank(int(r), w);
        }
      VForm D = bgg_operator(ctx, probe);
      if (D.value0().cwiseAbs().maxCoeff() > tol) {
        measured = deg;
        break;
      }
    }
  }
  return measured;
}

namespace {

int dim_s2_tracefree(int n) { return n * (n + 1) / 2 - 1; }
int dim_s2(int n) { return n * (n + 1) / 2; }
int dim_gl_tracefree(int n) { return n * n - 1; }
// hook tensors in R^n* (x) Lambda^2 R^n*: kernel of complete alternation and
// of the contraction
int dim_hook21_tracefree(int n) { return n * (n * n - 1) / 3 - n; }

}  // namespace

std::vector<CatalogEntry> operator_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"conformal_almost_einstein", Flavor::conformal, "std", 0, 2,
                 "trace-free symmetric 2-tensors", 3, dim_s2_tracefree});
  out.push_back({"conformal_killing_vector", Flavor::conformal, "adjoint", 0, 1,
                 "trace-free symmetric 2-tensors", 3, dim_s2_tracefree});
  out.push_back({"conformal_killing_yano_2form", Flavor::conformal, "alt(3,dual(std))", 0, 1,
                 "alternation- and trace-kernel in T* (x) Lambda^2 T*", 3, dim_hook21_tracefree});
  out.push_back({"projective_hessian", Flavor::projective, "dual(std)", 0, 2,
                 "symmetric 2-tensors", 2, dim_s2});
  out.push_back({"projective_divergence", Flavor::projective, "std", 0, 1,
                 "trace-free endomorphisms", 2, dim_gl_tracefree});
  out.push_back({"projective_killing_oneform", Flavor::projective, "alt(2,dual(std))", 0, 1,
                 "symmetric 2-tensors", 2, dim_s2});
  return out;
}

}  // namespace bgg
