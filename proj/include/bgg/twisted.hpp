#pragma once

#include <memory>

#include "bgg/geometry.hpp"
#include "bgg/hodge.hpp"

namespace bgg {

// Adapted frame on the chart: g-orthonormal (conformal) or unimodular
// (projective), with the g_0-valued principal connection form in coordinate
// directions. Sections of associated bundles carry frame components; form
// slots stay coordinate-indexed, with F / F^{-1} jets mediating.
struct FrameData {
  Flavor flavor;
  int n = 0;
  int order = 0;       // jet order of the frame itself
  JetMat F;            // e_a = F^i_a d_i, entry at(i, a)
  JetMat Finv;         // theta^a = Finv^a_i dx^i, entry at(a, i)
  bool trivial = false;  // F == Id exactly
  // omega[i][a]: jet coefficient of the a-th g_0 basis element in omega(d_i)
  std::vector<std::vector<Jet>> omega;
  double g0_residual = 0.0;  // distance of omega values to g_0 (frame invariant)

  // Lambda^k slot conversions, precomputed per degree: coefficients indexed by
  // frame subsets <- coordinate subsets (to_frame) and back (to_coord).
  std::vector<JetMat> to_frame;  // [k]: C(n,k) x C(n,k)
  std::vector<JetMat> to_coord;
};

FrameData build_frame(const ChartGeometry& geom, Flavor flavor, const GradedLieAlgebra& alg);

// V-valued k-form on the chart: jet coefficients per (increasing coordinate
// subset, rep basis vector), rep components relative to the adapted frame.
struct VForm {
  RepPtr rep;
  int n = 0;
  int degree = 0;
  std::vector<std::vector<Jet>> c;  // [subset_rank][rep index]

  static VForm zero(RepPtr rep, int n, int degree, int dim, int order);
  double sup_norm() const;
  Vec value0() const;  // stacked basepoint values
  VForm operator+(const VForm& o) const;
  VForm operator-(const VForm& o) const;
  VForm scaled(double s) const;
  VForm grade_part(int j) const;
  int min_order() const;
};

VForm random_vform(RepPtr rep, int n, int degree, int order, std::mt19937_64& rng, double amp = 1.0);

// Everything the twisted calculus needs, with per-direction action matrices
// cached as jet matrices.
struct Context {
  AlgPtr alg;
  RepPtr rep;
  std::shared_ptr<const HodgeDecomposition> hodge;
  std::shared_ptr<const FrameData> frame;
  std::shared_ptr<const CurvaturePackage> pkg;
  std::shared_ptr<const ChartGeometry> geom;

  std::vector<JetMat> rho_omega;  // Levi-Civita / affine part, per direction
  std::vector<JetMat> rho_xi;     // rho(Xhat(d_i))
  std::vector<JetMat> rho_p;      // rho(Zhat(P(d_i)))

  int n() const { return frame->n; }
};

Context make_context(Flavor flavor, const GeometryDescriptor& geo, const std::string& rep_descriptor);
Context make_context(AlgPtr alg, RepPtr rep, std::shared_ptr<const ChartGeometry> geom);

enum class DerivMode { plain, twisted, semiflat };  // semiflat: nabla + xi-bullet

// Covariant derivative of a degree-0 section in direction d_i.
std::vector<Jet> derive_section(const Context& ctx, const std::vector<Jet>& s, int i, DerivMode mode);

// Covariant exterior derivative on coordinate arguments (brackets vanish).
VForm dform(const Context& ctx, const VForm& phi, DerivMode mode);

// Algebraic operations.
VForm del_form(const Context& ctx, const VForm& phi);         // grade-lowering
VForm delP_form(const Context& ctx, const VForm& phi);        // P-twisted, grade-raising
VForm T_form(const Context& ctx, const VForm& phi);           // degree k -> k-1
VForm harmonic_projection(const Context& ctx, const VForm& phi);
VForm upsilon_component(const Context& ctx, const VForm& phi);  // == harmonic_projection

// rho of an n x n frame-matrix-valued jet (a g_0-valued quantity) applied to
// a section; used to realize W-action and curvature comparisons.
std::vector<Jet> act_g0_matrix(const Context& ctx, const JetMat& frame_matrix,
                               const std::vector<Jet>& s, double* membership_residual = nullptr);
// rho of a covector with given frame components (a g_1 action).
std::vector<Jet> act_covector(const Context& ctx, const std::vector<Jet>& frame_components,
                              const std::vector<Jet>& s);

struct TwistedCurvatureReport {
  double max_residual = 0.0;   // |R^V s - W bullet s - Y bullet s|
  double max_RV_norm = 0.0;    // size of R^V itself
  double dd_defect_residual = 0.0;  // Prop-style defect formula on forms
  double max_dd_norm = 0.0;
};

TwistedCurvatureReport twisted_curvature_residual(const Context& ctx, int trials,
                                                  std::uint64_t seed);

// Grade bookkeeping of the twisted curvature acting on a single-grade section.
struct GradeBookkeeping {
  double off_two = 0.0;    // grades i-2 / i+2
  double off_minus = 0.0;  // grade i-1
  double y_match = 0.0;    // grade i+1 vs Y bullet s
};
GradeBookkeeping twisted_grade_bookkeeping(const Context& ctx, int trials, std::uint64_t seed);

}  // namespace bgg
