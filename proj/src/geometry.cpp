#include "bgg/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace bgg {

// ---------------------------------------------------------------------------
// JetMat + deterministic randomness
// ---------------------------------------------------------------------------

JetMat JetMat::identity(int n, int dim, int order) {
  JetMat m(n, n, Jet::constant(dim, order, 0.0));
  for (int i = 0; i < n; ++i) m.at(i, i) = Jet::constant(dim, order, 1.0);
  return m;
}

JetMat JetMat::zero(int r, int c, int dim, int order) {
  return JetMat(r, c, Jet::constant(dim, order, 0.0));
}

JetMat JetMat::mul(const JetMat& o) const {
  if (cols != o.rows) throw std::invalid_argument("JetMat::mul: shape mismatch");
  JetMat r(rows, o.cols, at(0, 0) * Jet::constant(at(0, 0).dim(), at(0, 0).order(), 0.0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < o.cols; ++j) {
      Jet acc = at(i, 0) * o.at(0, j);
      for (int k = 1; k < cols; ++k) acc += at(i, k) * o.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

JetMat JetMat::inverse() const {
  if (rows != cols) throw std::invalid_argument("JetMat::inverse: square required");
  const int n = rows;
  JetMat A = *this;
  JetMat I = JetMat::identity(n, at(0, 0).dim(), at(0, 0).order());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = 0.0;
    for (int r = col; r < n; ++r) {
      double v = std::abs(A.at(r, col).value());
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (piv < 0 || best == 0.0) throw std::domain_error("JetMat::inverse: singular constant term");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(A.at(piv, c), A.at(col, c));
        std::swap(I.at(piv, c), I.at(col, c));
      }
    Jet inv = A.at(col, col).reciprocal();
    for (int c = 0; c < n; ++c) {
      A.at(col, c) = A.at(col, c) * inv;
      I.at(col, c) = I.at(col, c) * inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Jet f = A.at(r, col);
      if (f.sup_norm() == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        A.at(r, c) = A.at(r, c) - f * A.at(col, c);
        I.at(r, c) = I.at(r, c) - f * I.at(col, c);
      }
    }
  }
  return I;
}

Jet JetMat::det() const {
  if (rows != cols) throw std::invalid_argument("JetMat::det: square required");
  if (rows == 1) return at(0, 0);
  Jet acc = Jet::constant(at(0, 0).dim(), at(0, 0).order(), 0.0);
  // cofactor expansion along the first row; n <= 5 in practice
  for (int j = 0; j < cols; ++j) {
    JetMat sub(rows - 1, cols - 1, acc);
    for (int r = 1; r < rows; ++r) {
      int cc = 0;
      for (int c = 0; c < cols; ++c) {
        if (c == j) continue;
        sub.at(r - 1, cc++) = at(r, c);
      }
    }
    Jet term = at(0, j) * sub.det();
    acc = (j % 2) ? acc - term : acc + term;
  }
  return acc;
}

double JetMat::sup_norm() const {
  double m = 0.0;
  for (const auto& j : a) m = std::max(m, j.sup_norm());
  return m;
}

double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * (1.0 / 9007199254740992.0);
}

double normal01(std::mt19937_64& rng) {
  // Box-Muller on explicitly constructed uniforms, reproducible everywhere
  double u1 = uniform01(rng), u2 = uniform01(rng);
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Jet random_jet(int dim, int order, std::mt19937_64& rng, double amp) {
  Jet j(dim, order);
  for (std::size_t r = 0; r < j.ncoeffs(); ++r) j.set_coeff_rank(int(r), amp * normal01(rng));
  return j;
}

// ---------------------------------------------------------------------------
// Curvature calculus
// ---------------------------------------------------------------------------

namespace {

JetMat metric_as_mat(const MetricJet& m) {
  JetMat g(m.n, m.n, m.g[0]);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) g.at(i, j) = m.at(i, j);
  return g;
}

}  // namespace

ConnectionJet christoffel_from_metric(const MetricJet& m) {
  if (m.order < 1) throw std::domain_error("christoffel_from_metric: order exhausted");
  const int n = m.n;
  ConnectionJet c;
  c.n = n;
  c.order = m.order - 1;
  JetMat g = metric_as_mat(m);
  JetMat ginv = g.inverse();
  Jet zero = Jet::constant(m.g[0].dim(), c.order, 0.0);
  c.gamma.assign(std::size_t(n) * n * n, zero);
  // dg[l][i][j] = d_l g_ij
  std::vector<Jet> dg(std::size_t(n) * n * n, zero);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg[(std::size_t(l) * n + i) * n + j] = m.at(i, j).partial(l);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Jet acc = zero;
        for (int l = 0; l < n; ++l) {
          Jet s = dg[(std::size_t(i) * n + j) * n + l] + dg[(std::size_t(j) * n + i) * n + l] -
                  dg[(std::size_t(l) * n + i) * n + j];
          acc += ginv.at(k, l).truncated(c.order) * s;
        }
        c.at(k, i, j) = acc.scaled(0.5);
        c.at(k, j, i) = c.at(k, i, j);
      }
  c.volume_density = g.det().sqrt();
  return c;
}

CurvaturePackage curvature_package(const ConnectionJet& c, Flavor flavor, const MetricJet* m) {
  const int n = c.n;
  if (flavor == Flavor::conformal) {
    if (!m) throw std::invalid_argument("curvature_package: conformal flavor needs the metric");
    if (n < 3) throw std::invalid_argument("curvature_package: conformal flavor needs n >= 3");
  } else if (m) {
    throw std::invalid_argument("curvature_package: projective flavor takes no metric");
  }
  if (c.order < 1) throw std::domain_error("curvature_package: order exhausted");
  const int dim = c.gamma[0].dim();
  const int rorder = c.order - 1;
  Jet zero = Jet::constant(dim, rorder, 0.0);

  CurvaturePackage pkg;
  pkg.flavor = flavor;
  pkg.n = n;
  pkg.R.assign(std::size_t(n) * n * n * n, zero);
  auto Rat = [&](int l, int k, int i, int j) -> Jet& {
    return pkg.R[((std::size_t(l) * n + k) * n + i) * n + j];
  };
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Jet acc = c.at(l, j, k).partial(i) - c.at(l, i, k).partial(j);
          for (int a = 0; a < n; ++a)
            acc += c.at(l, i, a).truncated(rorder) * c.at(a, j, k).truncated(rorder) -
                   c.at(l, j, a).truncated(rorder) * c.at(a, i, k).truncated(rorder);
          Rat(l, k, i, j) = acc;
        }

  pkg.Ric.assign(std::size_t(n) * n, zero);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Jet acc = zero;
      for (int i = 0; i < n; ++i) acc += Rat(i, k, i, j);
      pkg.Ric[std::size_t(j) * n + k] = acc;
    }

  pkg.P.assign(std::size_t(n) * n, zero);
  if (flavor == Flavor::conformal) {
    pkg.has_metric = true;
    JetMat g = metric_as_mat(*m);
    JetMat gi = g.inverse();
    pkg.ginv.assign(std::size_t(n) * n, zero);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pkg.ginv[std::size_t(i) * n + j] = gi.at(i, j).truncated(rorder);
    Jet sc = zero;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sc += pkg.ginv[std::size_t(i) * n + j] * pkg.ric(i, j);
    pkg.Sc = sc;
    double cn = 1.0 / double(n - 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        pkg.P[std::size_t(i) * n + j] =
            (pkg.ric(i, j) - sc.scaled(1.0 / (2.0 * (n - 1))) * m->at(i, j).truncated(rorder))
                .scaled(cn);
  } else {
    pkg.Sc = zero;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        pkg.P[std::size_t(i) * n + j] = pkg.ric(i, j).scaled(1.0 / double(n - 1));
  }

  // Weyl by subtraction: W = R - {xi,P(eta)} + {eta,P(xi)} acting on zeta
  pkg.W.assign(std::size_t(n) * n * n * n, zero);
  auto Wat = [&](int l, int k, int i, int j) -> Jet& {
    return pkg.W[((std::size_t(l) * n + k) * n + i) * n + j];
  };
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Jet acc = Rat(l, k, i, j);
          if (flavor == Flavor::conformal) {
            // {d_i, P(d_j)}(d_k) = P_ji d_k + P_jk d_i - g_ki P(d_j)^#
            if (l == k) acc -= pkg.p(j, i) - pkg.p(i, j);
            if (l == i) acc -= pkg.p(j, k);
            if (l == j) acc += pkg.p(i, k);
            Jet gk_i = m->at(k, i).truncated(rorder);
            Jet gk_j = m->at(k, j).truncated(rorder);
            for (int mm = 0; mm < n; ++mm) {
              acc += gk_i * pkg.ginv[std::size_t(l) * n + mm] * pkg.p(j, mm);
              acc -= gk_j * pkg.ginv[std::size_t(l) * n + mm] * pkg.p(i, mm);
            }
          } else {
            // {d_i, P(d_j)}(d_k) = P_jk d_i - P_ji d_k
            if (l == i) acc -= pkg.p(j, k);
            if (l == k) acc += pkg.p(j, i) - pkg.p(i, j);
            if (l == j) acc += pkg.p(i, k);
          }
          Wat(l, k, i, j) = acc;
        }

  // Cotton-York: Y(d_i,d_j)(d_k) = (nabla_i P)(j,k) - (nabla_j P)(i,k)
  if (rorder >= 1) {
    Jet zero2 = Jet::constant(dim, rorder - 1, 0.0);
    pkg.Y.assign(std::size_t(n) * n * n, zero2);
    auto covP = [&](int i, int j, int k) {
      Jet acc = pkg.p(j, k).partial(i);
      for (int a = 0; a < n; ++a)
        acc -= c.at(a, i, j).truncated(rorder - 1) * pkg.p(a, k).truncated(rorder - 1) +
               c.at(a, i, k).truncated(rorder - 1) * pkg.p(j, a).truncated(rorder - 1);
      return acc;
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          pkg.Y[(std::size_t(i) * n + j) * n + k] = covP(i, j, k) - covP(j, i, k);
  } else {
    pkg.Y.clear();
  }
  return pkg;
}

CurvaturePackage projective_curvature_package(const ConnectionJet& c) {
  return curvature_package(c, Flavor::projective, nullptr);
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

MetricJet geom_flat(int n, int order) {
  MetricJet m;
  m.n = n;
  m.order = order;
  m.g.assign(std::size_t(n) * n, Jet::constant(n, order, 0.0));
  for (int i = 0; i < n; ++i) m.at(i, i) = Jet::constant(n, order, 1.0);
  return m;
}

MetricJet geom_conformal(int n, int order, const Jet& phi) {
  MetricJet m = geom_flat(n, order);
  Jet f = jet_exp(phi.truncated(order).scaled(2.0));
  for (int i = 0; i < n; ++i) m.at(i, i) = f;
  return m;
}

namespace {

MetricJet conformal_radial(int n, int order, double sign) {
  // 4 / (1 + sign * |x|^2)^2 delta
  Jet r2 = Jet::constant(n, order, 0.0);
  for (int i = 0; i < n; ++i) {
    Jet xi = Jet::coordinate(n, order, i);
    r2 += xi * xi;
  }
  Jet den = Jet::constant(n, order, 1.0) + r2.scaled(sign);
  Jet f = (den * den).reciprocal().scaled(4.0);
  MetricJet m = geom_flat(n, order);
  for (int i = 0; i < n; ++i) m.at(i, i) = f;
  return m;
}

}  // namespace

MetricJet geom_sphere(int n, int order) { return conformal_radial(n, order, +1.0); }
MetricJet geom_hyperbolic(int n, int order) { return conformal_radial(n, order, -1.0); }

MetricJet geom_perturbed(int n, int order, double eps, std::uint64_t seed) {
  MetricJet m = geom_flat(n, order);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet h(n, order);
      // quadratic and cubic terms only; the basepoint value stays delta
      const auto& t = h.table();
      for (std::size_t r = 0; r < h.ncoeffs(); ++r) {
        int deg = t.degree[r];
        if (deg == 2 || deg == 3) h.set_coeff_rank(int(r), normal01(rng));
      }
      m.at(i, j) += h.scaled(eps);
      if (j != i) m.at(j, i) = m.at(i, j);
    }
  // positivity at the basepoint
  Eigen::MatrixXd g0(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g0(i, j) = m.at(i, j).value();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g0);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error("geom_perturbed: perturbation breaks positivity");
  return m;
}

ConnectionJet geom_flat_affine(int n, int order) {
  ConnectionJet c;
  c.n = n;
  c.order = order;
  c.gamma.assign(std::size_t(n) * n * n, Jet::constant(n, order, 0.0));
  c.volume_density = Jet::constant(n, order, 1.0);
  return c;
}

ConnectionJet geom_random_affine(int n, int order, std::uint64_t seed) {
  ConnectionJet c = geom_flat_affine(n, order);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Jet g = random_jet(n, order, rng, 0.3);
        c.at(k, i, j) = g;
        c.at(k, j, i) = g;
      }
  // repair the trace so that sum_a Gamma^a_{ia} = 0 (rho = 1)
  std::vector<Jet> t(n, Jet::constant(n, order, 0.0));
  for (int i = 0; i < n; ++i) {
    Jet acc = Jet::constant(n, order, 0.0);
    for (int a = 0; a < n; ++a) acc += c.at(a, i, a);
    t[i] = acc;
  }
  double w = 1.0 / double(n + 1);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet corr = Jet::constant(n, order, 0.0);
        if (k == i) corr += t[j];
        if (k == j) corr += t[i];
        c.at(k, i, j) -= corr.scaled(w);
      }
  return c;
}

Jet random_conformal_factor(int n, int order, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  Jet phi = random_jet(n, order, rng, amp);
  phi.set_coeff_rank(0, 0.0);  // normalize the overall scale at the basepoint
  return phi;
}

bool geometry_is_metric(const std::string& name) {
  return name == "flat" || name == "conformal" || name == "sphere" || name == "hyperbolic" ||
         name == "perturbed";
}

ChartGeometry build_geometry(const GeometryDescriptor& d) {
  ChartGeometry g;
  g.n = d.n;
  g.order = d.order;
  if (geometry_is_metric(d.name)) {
    MetricJet m;
    if (d.name == "flat")
      m = geom_flat(d.n, d.order);
    else if (d.name == "conformal")
      m = geom_conformal(d.n, d.order, random_conformal_factor(d.n, d.order, d.seed, d.amp));
    else if (d.name == "sphere")
      m = geom_sphere(d.n, d.order);
    else if (d.name == "hyperbolic")
      m = geom_hyperbolic(d.n, d.order);
    else
      m = geom_perturbed(d.n, d.order, d.eps, d.seed);
    g.metric = m;
    g.conn = christoffel_from_metric(m);
  } else if (d.name == "flat_affine") {
    g.conn = geom_flat_affine(d.n, d.order);
  } else if (d.name == "random_affine") {
    g.conn = geom_random_affine(d.n, d.order, d.seed);
  } else {
    throw std::invalid_argument("unknown geometry: " + d.name);
  }
  return g;
}

}  // namespace bgg
