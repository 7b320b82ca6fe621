#include "ejaopt/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "jacobi.hpp"

namespace ejaopt {

struct Algebra::Node {
  AlgebraKind kind = AlgebraKind::kRealDiagonal;
  int param = 0;
  int rank = 0;
  int dim = 0;
  std::vector<Algebra> factors;  // empty unless kProduct
  std::vector<int> dim_offsets;
  std::vector<int> rank_offsets;
};

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSpinDegenerate = 1e-14;

int sym_dim(int n) { return n * (n + 1) / 2; }

// Canonical index of entry (i, j), i <= j, in the packed sym coordinates.
int sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

void require_same(const Element& x, const Element& y, const char* op) {
  if (x.algebra() != y.algebra()) {
    throw AlgebraMismatch(std::string(op) + ": operands belong to " + x.algebra().to_string() +
                          " and " + y.algebra().to_string());
  }
}

Eigen::MatrixXd unpack_sym(int n, const Eigen::Ref<const Eigen::VectorXd>& c) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = c(sym_index(n, i, i));
    for (int j = i + 1; j < n; ++j) {
      const double v = c(sym_index(n, i, j)) / kSqrt2;
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

Eigen::VectorXd pack_sym(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd c(sym_dim(n));
  for (int i = 0; i < n; ++i) {
    c(sym_index(n, i, i)) = m(i, i);
    for (int j = i + 1; j < n; ++j) c(sym_index(n, i, j)) = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
  }
  return c;
}

// Packing isometry P (dim x n^2) from column-major vec(M) to sym coords.
Eigen::MatrixXd sym_packing(int n) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(sym_dim(n), n * n);
  for (int i = 0; i < n; ++i) {
    p(sym_index(n, i, i), i + i * n) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      p(sym_index(n, i, j), i + j * n) = 1.0 / kSqrt2;
      p(sym_index(n, i, j), j + i * n) = 1.0 / kSqrt2;
    }
  }
  return p;
}

// Product, inner product and unit restricted to one non-product factor.
void simple_product(const Algebra& alg, const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y, Eigen::Ref<Eigen::VectorXd> out) {
  switch (alg.kind()) {
    case AlgebraKind::kRealDiagonal:
      out = x.cwiseProduct(y);
      break;
    case AlgebraKind::kSymMatrix: {
      const int n = alg.param();
      const Eigen::MatrixXd xm = unpack_sym(n, x);
      const Eigen::MatrixXd ym = unpack_sym(n, y);
      const Eigen::MatrixXd prod = 0.5 * (xm * ym + ym * xm);
      out = pack_sym(prod);
      break;
    }
    case AlgebraKind::kSpinFactor: {
      const int m = alg.dim() - 1;
      const double x0 = x(0);
      const double y0 = y(0);
      out(0) = x0 * y0 + x.tail(m).dot(y.tail(m));
      out.tail(m) = x0 * y.tail(m) + y0 * x.tail(m);
      break;
    }
    case AlgebraKind::kProduct:
      break;
  }
}

double inner_weight(const Algebra& alg) { return alg.kind() == AlgebraKind::kSpinFactor ? 2.0 : 1.0; }

Eigen::VectorXd simple_unit(const Algebra& alg) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(alg.dim());
  switch (alg.kind()) {
    case AlgebraKind::kRealDiagonal:
      e.setOnes();
      break;
    case AlgebraKind::kSymMatrix:
      for (int i = 0; i < alg.param(); ++i) e(sym_index(alg.param(), i, i)) = 1.0;
      break;
    case AlgebraKind::kSpinFactor:
      e(0) = 1.0;
      break;
    case AlgebraKind::kProduct:
      break;
  }
  return e;
}

struct EigenPair {
  double value;
  Eigen::VectorXd idempotent;  // factor-local coordinates
};

// Eigenvalues with factor-local primitive idempotents, in solver order.
std::vector<EigenPair> simple_spectrum(const Algebra& alg, const Eigen::Ref<const Eigen::VectorXd>& x,
                                       bool want_frame) {
  std::vector<EigenPair> out;
  switch (alg.kind()) {
    case AlgebraKind::kRealDiagonal:
      for (int i = 0; i < alg.dim(); ++i) {
        Eigen::VectorXd c;
        if (want_frame) c = Eigen::VectorXd::Unit(alg.dim(), i);
        out.push_back({x(i), std::move(c)});
      }
      break;
    case AlgebraKind::kSymMatrix: {
      const int n = alg.param();
      const detail::SymmetricEigen eig = detail::jacobi_eigen(unpack_sym(n, x));
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd c;
        if (want_frame) {
          const Eigen::VectorXd q = eig.vectors.col(i);
          c = pack_sym(q * q.transpose());
        }
        out.push_back({eig.values(i), std::move(c)});
      }
      break;
    }
    case AlgebraKind::kSpinFactor: {
      const int m = alg.dim() - 1;
      const double radius = x.tail(m).norm();
      Eigen::VectorXd dir = Eigen::VectorXd::Unit(m, 0);
      if (radius > kSpinDegenerate) dir = x.tail(m) / radius;
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd c;
        if (want_frame) {
          c.resize(alg.dim());
          c(0) = 0.5;
          c.tail(m) = 0.5 * sign * dir;
        }
        out.push_back({x(0) + sign * radius, std::move(c)});
      }
      break;
    }
    case AlgebraKind::kProduct:
      break;
  }
  return out;
}

std::vector<int> descending_order(const std::vector<double>& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int lhs, int rhs) { return values[lhs] > values[rhs]; });
  return order;
}

}  // namespace

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Algebra Algebra::real_diagonal(int n) {
  if (n < 1) throw AlgebraMismatch("real_diagonal: n must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = AlgebraKind::kRealDiagonal;
  node->param = n;
  node->rank = n;
  node->dim = n;
  return Algebra(std::move(node));
}

Algebra Algebra::sym_matrix(int n) {
  if (n < 1) throw AlgebraMismatch("sym_matrix: n must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = AlgebraKind::kSymMatrix;
  node->param = n;
  node->rank = n;
  node->dim = sym_dim(n);
  return Algebra(std::move(node));
}

Algebra Algebra::spin_factor(int d) {
  if (d < 3) throw AlgebraMismatch("spin_factor: d must be >= 3");
  auto node = std::make_shared<Node>();
  node->kind = AlgebraKind::kSpinFactor;
  node->param = d;
  node->rank = 2;
  node->dim = d;
  return Algebra(std::move(node));
}

Algebra Algebra::product(const std::vector<Algebra>& factors) {
  std::vector<Algebra> flat;
  for (const Algebra& f : factors) {
    if (f.kind() == AlgebraKind::kProduct) {
      flat.insert(flat.end(), f.node_->factors.begin(), f.node_->factors.end());
    } else {
      flat.push_back(f);
    }
  }
  if (flat.empty()) throw AlgebraMismatch("product: at least one factor is required");
  if (flat.size() == 1) return flat.front();

  auto node = std::make_shared<Node>();
  node->kind = AlgebraKind::kProduct;
  for (const Algebra& f : flat) {
    node->dim_offsets.push_back(node->dim);
    node->rank_offsets.push_back(node->rank);
    node->dim += f.dim();
    node->rank += f.rank();
  }
  node->factors = std::move(flat);
  return Algebra(std::move(node));
}

AlgebraKind Algebra::kind() const { return node_->kind; }
int Algebra::param() const { return node_->param; }
int Algebra::rank() const { return node_->rank; }
int Algebra::dim() const { return node_->dim; }

bool Algebra::is_simple() const {
  switch (kind()) {
    case AlgebraKind::kRealDiagonal:
      return param() == 1;
    case AlgebraKind::kSymMatrix:
    case AlgebraKind::kSpinFactor:
      return true;
    case AlgebraKind::kProduct:
      return false;
  }
  return false;
}

int Algebra::factor_count() const {
  return kind() == AlgebraKind::kProduct ? static_cast<int>(node_->factors.size()) : 1;
}

const Algebra& Algebra::factor(int i) const {
  if (kind() != AlgebraKind::kProduct) return *this;
  return node_->factors.at(static_cast<std::size_t>(i));
}

int Algebra::dim_offset(int i) const {
  return kind() == AlgebraKind::kProduct ? node_->dim_offsets.at(static_cast<std::size_t>(i)) : 0;
}

int Algebra::rank_offset(int i) const {
  return kind() == AlgebraKind::kProduct ? node_->rank_offsets.at(static_cast<std::size_t>(i)) : 0;
}

std::string Algebra::to_string() const {
  switch (kind()) {
    case AlgebraKind::kRealDiagonal:
      return "diag(" + std::to_string(param()) + ")";
    case AlgebraKind::kSymMatrix:
      return "sym(" + std::to_string(param()) + ")";
    case AlgebraKind::kSpinFactor:
      return "spin(" + std::to_string(param()) + ")";
    case AlgebraKind::kProduct: {
      std::ostringstream os;
      for (int i = 0; i < factor_count(); ++i) os << (i ? "*" : "") << factor(i).to_string();
      return os.str();
    }
  }
  return {};
}

bool operator==(const Algebra& lhs, const Algebra& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  if (lhs.kind() != rhs.kind() || lhs.param() != rhs.param() || lhs.dim() != rhs.dim()) return false;
  if (lhs.kind() != AlgebraKind::kProduct) return true;
  return lhs.node_->factors == rhs.node_->factors;
}

// ---------------------------------------------------------------- Element

Element::Element(Algebra algebra, Eigen::VectorXd coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (coords_.size() != algebra_.dim()) {
    throw AlgebraMismatch("Element: expected " + std::to_string(algebra_.dim()) +
                          " coordinates for " + algebra_.to_string() + ", got " +
                          std::to_string(coords_.size()));
  }
  if (!coords_.allFinite()) throw DomainError("Element: non-finite coordinate");
}

Element Element::zero(const Algebra& algebra) {
  return Element(algebra, Eigen::VectorXd::Zero(algebra.dim()));
}

Element Element::unit(const Algebra& algebra) {
  Eigen::VectorXd e(algebra.dim());
  for (int i = 0; i < algebra.factor_count(); ++i) {
    const Algebra& f = algebra.factor(i);
    e.segment(algebra.dim_offset(i), f.dim()) = simple_unit(f);
  }
  return Element(algebra, std::move(e));
}

Element Element::factor(int i) const {
  const Algebra& f = algebra_.factor(i);
  return Element(f, coords_.segment(algebra_.dim_offset(i), f.dim()));
}

Element Element::from_factors(const Algebra& algebra, const std::vector<Element>& parts) {
  if (static_cast<int>(parts.size()) != algebra.factor_count()) {
    throw AlgebraMismatch("from_factors: wrong number of factor components");
  }
  Eigen::VectorXd c(algebra.dim());
  for (int i = 0; i < algebra.factor_count(); ++i) {
    if (parts[static_cast<std::size_t>(i)].algebra() != algebra.factor(i)) {
      throw AlgebraMismatch("from_factors: component " + std::to_string(i) + " has the wrong algebra");
    }
    c.segment(algebra.dim_offset(i), algebra.factor(i).dim()) = parts[static_cast<std::size_t>(i)].coords();
  }
  return Element(algebra, std::move(c));
}

Element Element::operator-() const { return Element(algebra_, -coords_); }

Element& Element::operator+=(const Element& other) {
  require_same(*this, other, "operator+");
  coords_ += other.coords_;
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same(*this, other, "operator-");
  coords_ -= other.coords_;
  return *this;
}

Element& Element::operator*=(double s) {
  coords_ *= s;
  return *this;
}

// ---------------------------------------------------------------- kernels

Eigen::MatrixXd to_matrix(const Element& x) {
  if (x.algebra().kind() != AlgebraKind::kSymMatrix) {
    throw AlgebraMismatch("to_matrix: element of " + x.algebra().to_string() + " is not a sym matrix");
  }
  return unpack_sym(x.algebra().param(), x.coords());
}

Element from_matrix(const Algebra& algebra, const Eigen::MatrixXd& m) {
  if (algebra.kind() != AlgebraKind::kSymMatrix || m.rows() != algebra.param() ||
      m.cols() != algebra.param()) {
    throw AlgebraMismatch("from_matrix: matrix shape does not fit " + algebra.to_string());
  }
  return Element(algebra, pack_sym(m));
}

Element jordan_product(const Element& x, const Element& y) {
  require_same(x, y, "jordan_product");
  const Algebra& alg = x.algebra();
  Eigen::VectorXd out(alg.dim());
  for (int i = 0; i < alg.factor_count(); ++i) {
    const Algebra& f = alg.factor(i);
    const int off = alg.dim_offset(i);
    simple_product(f, x.coords().segment(off, f.dim()), y.coords().segment(off, f.dim()),
                   out.segment(off, f.dim()));
  }
  return Element(alg, std::move(out));
}

double inner(const Element& x, const Element& y) {
  require_same(x, y, "inner");
  const Algebra& alg = x.algebra();
  double sum = 0.0;
  for (int i = 0; i < alg.factor_count(); ++i) {
    const Algebra& f = alg.factor(i);
    const int off = alg.dim_offset(i);
    sum += inner_weight(f) * x.coords().segment(off, f.dim()).dot(y.coords().segment(off, f.dim()));
  }
  return sum;
}

double norm(const Element& x) { return std::sqrt(inner(x, x)); }

double trace(const Element& x) { return inner(x, Element::unit(x.algebra())); }

SpectralDecomposition spectral_decompose(const Element& x) {
  const Algebra& alg = x.algebra();
  std::vector<double> values;
  std::vector<Eigen::VectorXd> locals;
  std::vector<int> owner;
  for (int i = 0; i < alg.factor_count(); ++i) {
    const Algebra& f = alg.factor(i);
    for (EigenPair& pair : simple_spectrum(f, x.coords().segment(alg.dim_offset(i), f.dim()), true)) {
      values.push_back(pair.value);
      locals.push_back(std::move(pair.idempotent));
      owner.push_back(i);
    }
  }

  SpectralDecomposition out;
  out.eigenvalues.resize(alg.rank());
  out.frame.reserve(static_cast<std::size_t>(alg.rank()));
  const std::vector<int> order = descending_order(values);
  for (int r = 0; r < alg.rank(); ++r) {
    const auto idx = static_cast<std::size_t>(order[static_cast<std::size_t>(r)]);
    out.eigenvalues(r) = values[idx];
    Eigen::VectorXd c = Eigen::VectorXd::Zero(alg.dim());
    const int f = owner[idx];
    c.segment(alg.dim_offset(f), alg.factor(f).dim()) = locals[idx];
    out.frame.emplace_back(alg, std::move(c));
  }
  return out;
}

Eigen::VectorXd eigenvalues(const Element& x) {
  const Algebra& alg = x.algebra();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(alg.rank()));
  for (int i = 0; i < alg.factor_count(); ++i) {
    const Algebra& f = alg.factor(i);
    for (const EigenPair& pair : simple_spectrum(f, x.coords().segment(alg.dim_offset(i), f.dim()), false)) {
      values.push_back(pair.value);
    }
  }
  std::stable_sort(values.begin(), values.end(), std::greater<>());
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Eigen::MatrixXd l_operator(const Element& x) {
  const Algebra& alg = x.algebra();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(alg.dim(), alg.dim());
  for (int i = 0; i < alg.factor_count(); ++i) {
    const Algebra& f = alg.factor(i);
    const int off = alg.dim_offset(i);
    const Eigen::VectorXd c = x.coords().segment(off, f.dim());
    auto block = l.block(off, off, f.dim(), f.dim());
    switch (f.kind()) {
      case AlgebraKind::kRealDiagonal:
        block = c.asDiagonal();
        break;
      case AlgebraKind::kSpinFactor: {
        const int m = f.dim() - 1;
        block(0, 0) = c(0);
        block.block(0, 1, 1, m) = c.tail(m).transpose();
        block.block(1, 0, m, 1) = c.tail(m);
        block.block(1, 1, m, m) = c(0) * Eigen::MatrixXd::Identity(m, m);
        break;
      }
      case AlgebraKind::kSymMatrix: {
        // L_X = P (X (x) I + I (x) X) P^T / 2 on column-major vec.
        const int n = f.param();
        const Eigen::MatrixXd xm = unpack_sym(n, c);
        Eigen::MatrixXd kron_sum = Eigen::MatrixXd::Zero(n * n, n * n);
        for (int r = 0; r < n; ++r) {
          for (int s = 0; s < n; ++s) {
            for (int k = 0; k < n; ++k) {
              kron_sum(r * n + k, s * n + k) += xm(r, s);  // X (x) I
              kron_sum(k * n + r, k * n + s) += xm(r, s);  // I (x) X
            }
          }
        }
        const Eigen::MatrixXd p = sym_packing(n);
        block = 0.5 * p * kron_sum * p.transpose();
        break;
      }
      case AlgebraKind::kProduct:
        break;
    }
  }
  return l;
}

PeirceParts peirce_project(const Element& p, const Element& x, double tol) {
  require_same(p, x, "peirce_project");
  const Element pp = jordan_product(p, p);
  if (norm(pp - p) > tol * (1.0 + norm(p))) {
    throw DomainError("peirce_project: p is not an idempotent within tolerance");
  }
  // L_p has spectrum {0, 1/2, 1}; the projectors are polynomials in L_p:
  // P1 = L(2L - I), Ph = 4L(I - L), P0 = I - P1 - Ph.
  const Element px = jordan_product(p, x);
  const Element ppx = jordan_product(p, px);
  Element one = 2.0 * ppx - px;
  Element half = 4.0 * (px - ppx);
  Element zero = x - one - half;
  return {std::move(one), std::move(zero), std::move(half)};
}

double commutator_norm(const Element& a, const Element& b) {
  require_same(a, b, "commutator_norm");
  const Eigen::MatrixXd la = l_operator(a);
  const Eigen::MatrixXd lb = l_operator(b);
  return (la * lb - lb * la).norm();
}

bool operator_commute(const Element& a, const Element& b, double tol) {
  return commutator_norm(a, b) <= tol * (1.0 + norm(a)) * (1.0 + norm(b));
}

double strong_commute_gap(const Element& a, const Element& b) {
  require_same(a, b, "strong_commute_gap");
  return std::abs(inner(a, b) - eigenvalues(a).dot(eigenvalues(b)));
}

bool strongly_operator_commute(const Element& a, const Element& b, double tol) {
  return strong_commute_gap(a, b) <= tol * (1.0 + norm(a) * norm(b));
}

double derivation_commute_residual(const Element& a, const Element& b) {
  require_same(a, b, "derivation_commute_residual");
  if (a.algebra().kind() != AlgebraKind::kSymMatrix) {
    throw AlgebraMismatch("derivation_commute_residual: only implemented for sym(n)");
  }
  const Eigen::MatrixXd am = to_matrix(a);
  const Eigen::MatrixXd bm = to_matrix(b);
  const int n = a.algebra().param();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
      k(i, j) = 1.0;
      k(j, i) = -1.0;
      const Eigen::MatrixXd da = k * am - am * k;
      worst = std::max(worst, std::abs((da.cwiseProduct(bm)).sum()));
    }
  }
  return worst;
}

void validate_frame(const std::vector<Element>& frame, double tol) {
  if (frame.empty()) throw DomainError("validate_frame: empty frame");
  const Algebra& alg = frame.front().algebra();
  if (static_cast<int>(frame.size()) != alg.rank()) {
    throw DomainError("validate_frame: frame has " + std::to_string(frame.size()) +
                      " members, rank is " + std::to_string(alg.rank()));
  }
  Element sum = Element::zero(alg);
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Element& c = frame[i];
    require_same(c, frame.front(), "validate_frame");
    if (norm(jordan_product(c, c) - c) > tol * (1.0 + norm(c))) {
      throw DomainError("validate_frame: member " + std::to_string(i) + " is not idempotent");
    }
    if (std::abs(trace(c) - 1.0) > tol) {
      throw DomainError("validate_frame: member " + std::to_string(i) + " is not primitive");
    }
    for (std::size_t j = i + 1; j < frame.size(); ++j) {
      if (norm(jordan_product(c, frame[j])) > tol) {
        throw DomainError("validate_frame: members " + std::to_string(i) + " and " +
                          std::to_string(j) + " are not orthogonal");
      }
    }
    sum += c;
  }
  if (norm(sum - Element::unit(alg)) > tol * (1.0 + std::sqrt(alg.rank()))) {
    throw DomainError("validate_frame: members do not sum to the unit");
  }
}

Element synthesize_from_frame(const std::vector<Element>& frame, const Eigen::VectorXd& coeffs,
                              double tol) {
  validate_frame(frame, tol);
  if (coeffs.size() != static_cast<Eigen::Index>(frame.size())) {
    throw AlgebraMismatch("synthesize_from_frame: coefficient count differs from frame size");
  }
  Element out = Element::zero(frame.front().algebra());
  for (std::size_t i = 0; i < frame.size(); ++i) out += coeffs(static_cast<Eigen::Index>(i)) * frame[i];
  return out;
}

int owning_factor(const Element& idempotent) {
  const Algebra& alg = idempotent.algebra();
  int best = 0;
  double best_norm = -1.0;
  for (int i = 0; i < alg.factor_count(); ++i) {
    const double nrm = idempotent.coords().segment(alg.dim_offset(i), alg.factor(i).dim()).norm();
    if (nrm > best_norm) {
      best_norm = nrm;
      best = i;
    }
  }
  return best;
}

std::vector<Element> peirce_half_units(const Element& e_j, const Element& e_k) {
  require_same(e_j, e_k, "peirce_half_units");
  const Algebra& alg = e_j.algebra();
  const int fj = owning_factor(e_j);
  if (owning_factor(e_k) != fj) return {};
  const Algebra& f = alg.factor(fj);
  const int off = alg.dim_offset(fj);
  const Eigen::VectorXd cj = e_j.coords().segment(off, f.dim());
  const Eigen::VectorXd ck = e_k.coords().segment(off, f.dim());

  std::vector<Eigen::VectorXd> locals;
  switch (f.kind()) {
    case AlgebraKind::kRealDiagonal:
      break;
    case AlgebraKind::kSymMatrix: {
      // e = q q^T; recover q from the column with the largest diagonal.
      auto direction = [&](const Eigen::VectorXd& c) {
        const Eigen::MatrixXd m = unpack_sym(f.param(), c);
        Eigen::Index col = 0;
        m.diagonal().maxCoeff(&col);
        return Eigen::VectorXd(m.col(col) / std::sqrt(m(col, col)));
      };
      const Eigen::VectorXd qj = direction(cj);
      const Eigen::VectorXd qk = direction(ck);
      locals.push_back(pack_sym(qj * qk.transpose() + qk * qj.transpose()));
      break;
    }
    case AlgebraKind::kSpinFactor: {
      // e_j = (1/2, u/2); the half space is {(0, v) : v ⊥ u}.
      const int m = f.dim() - 1;
      Eigen::VectorXd u = 2.0 * cj.tail(m);
      u.normalize();
      std::vector<Eigen::VectorXd> basis{u};
      for (int axis = 0; axis < m && static_cast<int>(basis.size()) < m; ++axis) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(m, axis);
        for (const Eigen::VectorXd& prev : basis) v -= prev.dot(v) * prev;
        for (const Eigen::VectorXd& prev : basis) v -= prev.dot(v) * prev;
        const double nv = v.norm();
        if (nv < 1e-8) continue;
        basis.push_back(v / nv);
      }
      for (std::size_t b = 1; b < basis.size(); ++b) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(f.dim());
        w.tail(m) = basis[b];
        locals.push_back(std::move(w));
      }
      break;
    }
    case AlgebraKind::kProduct:
      break;
  }

  std::vector<Element> out;
  for (const Eigen::VectorXd& local : locals) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(alg.dim());
    c.segment(off, f.dim()) = local;
    out.emplace_back(alg, std::move(c));
  }
  return out;
}

}  // namespace ejaopt
