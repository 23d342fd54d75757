#include "bgg/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace bgg {

namespace {

uint64_t pack(const std::vector<int>& alpha) {
  uint64_t key = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) key |= uint64_t(alpha[i] & 0xff) << (8 * i);
  return key;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
  return r;
}

struct TableImpl : MultiIndexTable {
  std::unordered_map<uint64_t, int> rank;
};

void enumerate(TableImpl& t) {
  // degree block by degree block, lexicographic within a block
  std::vector<int> cur(t.dim, 0);
  for (int deg = 0; deg <= t.order; ++deg) {
    std::vector<std::vector<int>> block;
    std::vector<int> a(t.dim, 0);
    // lexicographic enumeration of compositions of deg into dim parts
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == t.dim - 1) {
        a[pos] = left;
        block.push_back(a);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        a[pos] = v;
        self(self, pos + 1, left - v);
      }
    };
    if (t.dim == 0) {
      if (deg == 0) block.push_back({});
    } else {
      rec(rec, 0, deg);
    }
    for (auto& b : block) {
      t.rank[pack(b)] = int(t.idx.size());
      t.idx.push_back(b);
      t.degree.push_back(deg);
    }
  }
  t.shift.assign(t.dim, std::vector<int>(t.idx.size(), -1));
  for (std::size_t r = 0; r < t.idx.size(); ++r) {
    for (int i = 0; i < t.dim; ++i) {
      auto a = t.idx[r];
      a[i] += 1;
      auto it = t.rank.find(pack(a));
      t.shift[i][r] = (it == t.rank.end()) ? -1 : it->second;
    }
  }
  // Leibniz pairs with binomial weights: (fg)_g = sum_{b<=g} C(g,b) f_b g_{g-b}
  t.pairs.resize(t.idx.size());
  for (std::size_t g = 0; g < t.idx.size(); ++g) {
    const auto& gamma = t.idx[g];
    std::vector<int> beta(t.dim, 0);
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == t.dim) {
        std::vector<int> rest(t.dim);
        double w = 1.0;
        for (int i = 0; i < t.dim; ++i) {
          rest[i] = gamma[i] - beta[i];
          w *= binomial(gamma[i], beta[i]);
        }
        int rb = t.rank.at(pack(beta));
        int rc = t.rank.at(pack(rest));
        t.pairs[g].push_back({rb, rc, w});
        return;
      }
      for (int v = 0; v <= gamma[pos]; ++v) {
        beta[pos] = v;
        self(self, pos + 1);
      }
    };
    if (t.dim == 0) {
      t.pairs[g].push_back({0, 0, 1.0});
    } else {
      rec(rec, 0);
    }
  }
}

std::map<std::pair<int, int>, std::unique_ptr<TableImpl>>& table_cache() {
  static std::map<std::pair<int, int>, std::unique_ptr<TableImpl>> cache;
  return cache;
}

std::mutex& table_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

int MultiIndexTable::rank_of(const std::vector<int>& alpha) const {
  int deg = 0;
  for (int a : alpha) {
    if (a < 0) return -1;
    deg += a;
  }
  if (deg > order || int(alpha.size()) != dim) return -1;
  return static_cast<const TableImpl*>(this)->rank.at(pack(alpha));
}

const MultiIndexTable& multi_index_table(int dim, int order) {
  if (dim < 0 || order < 0) throw std::invalid_argument("multi_index_table: bad shape");
  std::lock_guard<std::mutex> lock(table_mutex());
  auto key = std::make_pair(dim, order);
  auto& cache = table_cache();
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto t = std::make_unique<TableImpl>();
    t->dim = dim;
    t->order = order;
    enumerate(*t);
    it = cache.emplace(key, std::move(t)).first;
  }
  return *it->second;
}

Jet::Jet(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || order < 0) throw std::invalid_argument("Jet: dim >= 1 and order >= 0 required");
  table_ = &multi_index_table(dim, order);
  c_.assign(table_->size(), 0.0);
}

Jet Jet::constant(int dim, int order, double v) {
  Jet j(dim, order);
  j.c_[0] = v;
  return j;
}

Jet Jet::coordinate(int dim, int order, int i) {
  Jet j(dim, order);
  if (i < 0 || i >= dim) throw std::invalid_argument("Jet::coordinate: index out of range");
  if (order >= 1) {
    std::vector<int> e(dim, 0);
    e[i] = 1;
    j.set_coeff(e, 1.0);
  }
  return j;
}

Jet Jet::monomial(int dim, int order, const std::vector<int>& beta, double c) {
  Jet j(dim, order);
  int deg = 0;
  double fact = 1.0;
  for (int b : beta) {
    deg += b;
    for (int v = 2; v <= b; ++v) fact *= v;
  }
  if (deg <= order) j.set_coeff(beta, c * fact);
  return j;
}

double Jet::coeff(const std::vector<int>& alpha) const {
  int r = table_->rank_of(alpha);
  if (r < 0) throw std::invalid_argument("Jet::coeff: index beyond truncation order");
  return c_[r];
}

void Jet::set_coeff(const std::vector<int>& alpha, double v) {
  int r = table_->rank_of(alpha);
  if (r < 0) throw std::invalid_argument("Jet::set_coeff: index beyond truncation order");
  c_[r] = v;
}

void Jet::require_same_dim(const Jet& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("Jet: dimension mismatch");
}

Jet Jet::truncated(int new_order) const {
  if (new_order >= order_) return *this;
  if (new_order < 0) throw std::invalid_argument("Jet::truncated: negative order");
  Jet r(dim_, new_order);
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = c_[i];
  return r;
}

Jet Jet::operator+(const Jet& o) const {
  require_same_dim(o);
  int ro = std::min(order_, o.order_);
  Jet r = truncated(ro);
  Jet b = o.truncated(ro);
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
  return r;
}

Jet Jet::operator-(const Jet& o) const {
  require_same_dim(o);
  int ro = std::min(order_, o.order_);
  Jet r = truncated(ro);
  Jet b = o.truncated(ro);
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
  return r;
}

Jet Jet::operator-() const { return scaled(-1.0); }

Jet Jet::scaled(double s) const {
  Jet r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

Jet Jet::operator*(const Jet& o) const {
  require_same_dim(o);
  int ro = std::min(order_, o.order_);
  Jet a = truncated(ro);
  Jet b = o.truncated(ro);
  Jet r(dim_, ro);
  const auto& t = r.table();
  for (std::size_t g = 0; g < t.size(); ++g) {
    double acc = 0.0;
    for (const auto& p : t.pairs[g]) acc += p.w * a.c_[p.b] * b.c_[p.c];
    r.c_[g] = acc;
  }
  return r;
}

Jet Jet::reciprocal() const {
  if (value() == 0.0) throw std::domain_error("Jet::reciprocal: zero constant term");
  Jet r(dim_, order_);
  const auto& t = *table_;
  r.c_[0] = 1.0 / c_[0];
  // (f r)_g = delta_{g,0}; solve by graded recursion: the pair with b = 0 is
  // f_0 r_g, everything else involves lower ranks only.
  for (std::size_t g = 1; g < t.size(); ++g) {
    double acc = 0.0;
    for (const auto& p : t.pairs[g]) {
      if (p.c == int(g)) continue;  // the f_0 * r_g term
      acc += p.w * c_[p.b] * r.c_[p.c];
    }
    r.c_[g] = -acc / c_[0];
  }
  return r;
}

Jet Jet::sqrt() const {
  if (value() <= 0.0) throw std::domain_error("Jet::sqrt: non-positive constant term");
  Jet r(dim_, order_);
  const auto& t = *table_;
  r.c_[0] = std::sqrt(c_[0]);
  // (r r)_g = f_g; the unknown r_g appears in the two pairs (0, g) and (g, 0).
  for (std::size_t g = 1; g < t.size(); ++g) {
    double acc = 0.0;
    for (const auto& p : t.pairs[g]) {
      if (p.b == int(g) || p.c == int(g)) continue;
      acc += p.w * r.c_[p.b] * r.c_[p.c];
    }
    r.c_[g] = (c_[g] - acc) / (2.0 * r.c_[0]);
  }
  return r;
}

Jet Jet::partial(int i) const {
  if (order_ < 1) throw std::domain_error("Jet::partial: truncation order exhausted");
  if (i < 0 || i >= dim_) throw std::invalid_argument("Jet::partial: index out of range");
  Jet r(dim_, order_ - 1);
  const auto& t = *table_;
  // ranks agree between tables of the same dim up to the shorter order
  for (std::size_t a = 0; a < r.c_.size(); ++a) {
    int src = t.shift[i][a];
    r.c_[a] = (src >= 0) ? c_[src] : 0.0;
  }
  return r;
}

double Jet::sup_norm() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

bool Jet::is_finite() const {
  for (double v : c_)
    if (!std::isfinite(v)) return false;
  return true;
}

std::string Jet::str() const {
  std::ostringstream os;
  os << "jet(dim=" << dim_ << ",order=" << order_ << ";";
  for (std::size_t r = 0; r < c_.size(); ++r) {
    if (c_[r] == 0.0) continue;
    os << " [";
    for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << table_->idx[r][i];
    os << "]=" << c_[r];
  }
  os << ")";
  return os.str();
}

Jet jet_exp(const Jet& a) {
  // exp(c + u) = exp(c) * sum u^k / k!, u nilpotent at truncation order
  Jet u = a;
  u.set_coeff_rank(0, 0.0);
  Jet acc = Jet::constant(a.dim(), a.order(), 1.0);
  Jet term = Jet::constant(a.dim(), a.order(), 1.0);
  for (int k = 1; k <= a.order(); ++k) {
    term = term * u;
    acc += term.scaled(1.0 / std::tgamma(double(k + 1)));
  }
  return acc.scaled(std::exp(a.value()));
}

Jet jet_log(const Jet& a) {
  if (a.value() <= 0.0) throw std::domain_error("jet_log: non-positive constant term");
  Jet u = a.scaled(1.0 / a.value());
  u.set_coeff_rank(0, 0.0);
  Jet acc = Jet::constant(a.dim(), a.order(), std::log(a.value()));
  Jet term = Jet::constant(a.dim(), a.order(), 1.0);
  for (int k = 1; k <= a.order(); ++k) {
    term = term * u;
    acc += term.scaled(((k % 2) ? 1.0 : -1.0) / double(k));
  }
  return acc;
}

}  // namespace bgg
