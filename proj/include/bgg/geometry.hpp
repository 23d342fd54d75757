#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bgg/graded_lie.hpp"
#include "bgg/jet_linalg.hpp"

namespace bgg {

// Symmetric metric jets g_ij at the chart basepoint 0.
struct MetricJet {
  int n = 0;
  int order = 0;
  std::vector<Jet> g;  // i*n+j, symmetric

  const Jet& at(int i, int j) const { return g[std::size_t(i) * n + j]; }
  Jet& at(int i, int j) { return g[std::size_t(i) * n + j]; }
};

// Torsion-free connection jets with a parallel volume density rho (nu = rho dx).
struct ConnectionJet {
  int n = 0;
  int order = 0;
  std::vector<Jet> gamma;  // Gamma^k_{ij}: (k*n+i)*n+j, symmetric in i,j
  Jet volume_density;

  const Jet& at(int k, int i, int j) const { return gamma[(std::size_t(k) * n + i) * n + j]; }
  Jet& at(int k, int i, int j) { return gamma[(std::size_t(k) * n + i) * n + j]; }
};

struct CurvaturePackage {
  Flavor flavor;
  int n = 0;
  std::vector<Jet> R;  // R^l_{kij}: ((l*n+k)*n+i)*n+j, R(d_i,d_j)d_k = R^l_{kij} d_l
  std::vector<Jet> Ric;  // i*n+j
  Jet Sc;                // conformal only
  std::vector<Jet> P;    // i*n+j
  std::vector<Jet> W;    // indexed like R
  std::vector<Jet> Y;    // Y(d_i,d_j)(d_k): (i*n+j)*n+k
  bool has_metric = false;
  std::vector<Jet> ginv;  // conformal: g^{ij}

  const Jet& r(int l, int k, int i, int j) const { return R[((std::size_t(l) * n + k) * n + i) * n + j]; }
  const Jet& w(int l, int k, int i, int j) const { return W[((std::size_t(l) * n + k) * n + i) * n + j]; }
  const Jet& ric(int i, int j) const { return Ric[std::size_t(i) * n + j]; }
  const Jet& p(int i, int j) const { return P[std::size_t(i) * n + j]; }
  const Jet& y(int i, int j, int k) const { return Y[(std::size_t(i) * n + j) * n + k]; }
};

// Koszul formula; result order = m.order - 1, volume density = sqrt(det g).
ConnectionJet christoffel_from_metric(const MetricJet& m);

// Full curvature package. Conformal flavor requires the metric and n >= 3.
CurvaturePackage curvature_package(const ConnectionJet& c, Flavor flavor,
                                   const MetricJet* m = nullptr);
CurvaturePackage projective_curvature_package(const ConnectionJet& c);

// Named chart geometries.
MetricJet geom_flat(int n, int order);
MetricJet geom_conformal(int n, int order, const Jet& phi);  // e^{2 phi} delta
MetricJet geom_sphere(int n, int order);      // 4/(1+|x|^2)^2 delta
MetricJet geom_hyperbolic(int n, int order);  // 4/(1-|x|^2)^2 delta
MetricJet geom_perturbed(int n, int order, double eps, std::uint64_t seed);
ConnectionJet geom_flat_affine(int n, int order);
ConnectionJet geom_random_affine(int n, int order, std::uint64_t seed);

// Random conformal factor used by scenario fixtures.
Jet random_conformal_factor(int n, int order, std::uint64_t seed, double amp = 0.5);

struct GeometryDescriptor {
  std::string name;  // flat | conformal | sphere | hyperbolic | perturbed |
                     // flat_affine | random_affine
  int n = 3;
  int order = 4;
  double eps = 0.1;
  std::uint64_t seed = 1;
  double amp = 0.5;  // conformal factor amplitude
};

// True when the descriptor names a metric geometry (vs a bare connection).
bool geometry_is_metric(const std::string& name);

struct ChartGeometry {
  int n = 0;
  int order = 0;
  std::optional<MetricJet> metric;
  ConnectionJet conn;
};

ChartGeometry build_geometry(const GeometryDescriptor& d);

}  // namespace bgg
