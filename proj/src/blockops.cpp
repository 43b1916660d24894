#include "fy/blockops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "fy/error.hpp"

namespace fy::blockops {

namespace {

std::size_t initial_dense_limit() {
  if (const char* env = std::getenv("FY_DENSE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4096;
}

std::atomic<std::size_t>& dense_limit_storage() {
  static std::atomic<std::size_t> limit{initial_dense_limit()};
  return limit;
}

void check_same_dim(const Operator& a, const Operator& b) {
  require(a.dimension() == b.dimension(),
          "operator dimensions differ: " + std::to_string(a.dimension()) + " vs " +
              std::to_string(b.dimension()));
}

template <class F>
void for_each_nonzero(const Operator& op, F&& f) {
  if (op.is_diagonal()) {
    const Vector d = op.diagonal_entries();
    for (Index i = 0; i < d.size(); ++i)
      if (d[i] != 0.0) f(i, i, d[i]);
    return;
  }
  const SparseMatrix s = op.to_sparse();
  for (Index k = 0; k < s.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(s, k); it; ++it) f(it.row(), it.col(), it.value());
}

bool less_complex(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// SplitMix64; platform-independent so start vectors are reproducible.
class StartVectorSource {
 public:
  explicit StartVectorSource(std::uint64_t seed) : state_(seed) {}
  double next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
  }

 private:
  std::uint64_t state_;
};

void fix_sign(Vector& x) {
  Index best = 0;
  for (Index i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[best]) * (1.0 + 1e-12)) best = i;
  if (x.size() > 0 && x[best] < 0) x = -x;
}

}  // namespace

std::size_t dense_limit() { return dense_limit_storage().load(); }

void set_dense_limit(std::size_t limit) {
  require(limit > 0, "dense limit must be positive");
  dense_limit_storage().store(limit);
}

// --- Operator -------------------------------------------------------------

Operator::Operator() : dim_(0), rep_(DenseMatrix(0, 0)) {}

Operator Operator::dense(DenseMatrix m) {
  require(m.rows() == m.cols(), "dense operator must be square");
  const Index d = m.rows();
  return Operator(d, std::move(m));
}

Operator Operator::diagonal(Vector diag) {
  const Index d = diag.size();
  return Operator(d, std::move(diag));
}

Operator Operator::sparse(SparseMatrix m) {
  require(m.rows() == m.cols(), "sparse operator must be square");
  m.makeCompressed();
  const Index d = m.rows();
  return Operator(d, std::move(m));
}

Operator Operator::matrix_free(Index dim, Applicator apply) {
  require(dim >= 0 && static_cast<bool>(apply), "matrix-free operator needs an applicator");
  return Operator(dim, MatrixFree{dim, std::move(apply)});
}

Operator Operator::identity(Index dim) { return diagonal(Vector::Ones(dim)); }

Operator Operator::zero(Index dim) { return diagonal(Vector::Zero(dim)); }

Vector Operator::apply(const Vector& x) const {
  Vector out = Vector::Zero(dim_);
  apply_add(x, out);
  return out;
}

void Operator::apply_add(const Vector& x, Vector& out, double scale) const {
  require(x.size() == dim_ && out.size() == dim_, "apply: vector length mismatch");
  std::visit(
      [&](const auto& rep) {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, DenseMatrix>) {
          out.noalias() += scale * (rep * x);
        } else if constexpr (std::is_same_v<T, Vector>) {
          out += scale * rep.cwiseProduct(x);
        } else if constexpr (std::is_same_v<T, SparseMatrix>) {
          out += scale * (rep * x);
        } else {
          Vector tmp = Vector::Zero(dim_);
          rep.apply(x, tmp);
          out += scale * tmp;
        }
      },
      rep_);
}

DenseMatrix Operator::to_dense() const {
  return std::visit(
      [&](const auto& rep) -> DenseMatrix {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, DenseMatrix>) {
          return rep;
        } else if constexpr (std::is_same_v<T, Vector>) {
          return rep.asDiagonal();
        } else if constexpr (std::is_same_v<T, SparseMatrix>) {
          return DenseMatrix(rep);
        } else {
          DenseMatrix m(dim_, dim_);
          Vector e = Vector::Zero(dim_), col(dim_);
          for (Index j = 0; j < dim_; ++j) {
            e[j] = 1.0;
            col.setZero();
            rep.apply(e, col);
            m.col(j) = col;
            e[j] = 0.0;
          }
          return m;
        }
      },
      rep_);
}

SparseMatrix Operator::to_sparse() const {
  return std::visit(
      [&](const auto& rep) -> SparseMatrix {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, SparseMatrix>) {
          return rep;
        } else if constexpr (std::is_same_v<T, Vector>) {
          SparseMatrix s(dim_, dim_);
          s.reserve(Eigen::VectorXi::Constant(dim_, 1));
          for (Index i = 0; i < dim_; ++i)
            if (rep[i] != 0.0) s.insert(i, i) = rep[i];
          s.makeCompressed();
          return s;
        } else if constexpr (std::is_same_v<T, DenseMatrix>) {
          return rep.sparseView();
        } else {
          return to_dense().sparseView();
        }
      },
      rep_);
}

Vector Operator::diagonal_entries() const {
  return std::visit(
      [&](const auto& rep) -> Vector {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, Vector>) {
          return rep;
        } else if constexpr (std::is_same_v<T, DenseMatrix>) {
          return rep.diagonal();
        } else if constexpr (std::is_same_v<T, SparseMatrix>) {
          return rep.diagonal();
        } else {
          return to_dense().diagonal();
        }
      },
      rep_);
}

Operator Operator::operator+(const Operator& other) const {
  check_same_dim(*this, other);
  if (is_matrix_free() || other.is_matrix_free()) {
    Operator a = *this, b = other;
    return matrix_free(dim_, [a, b](const Vector& in, Vector& out) {
      a.apply_add(in, out);
      b.apply_add(in, out);
    });
  }
  if (is_diagonal() && other.is_diagonal())
    return diagonal(std::get<Vector>(rep_) + std::get<Vector>(other.rep_));
  if (is_dense() || other.is_dense()) return dense(to_dense() + other.to_dense());
  return sparse(to_sparse() + other.to_sparse());
}

Operator Operator::scaled(double factor) const {
  return std::visit(
      [&](const auto& rep) -> Operator {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, DenseMatrix>) {
          return dense(factor * rep);
        } else if constexpr (std::is_same_v<T, Vector>) {
          return diagonal(factor * rep);
        } else if constexpr (std::is_same_v<T, SparseMatrix>) {
          return sparse(factor * rep);
        } else {
          Applicator f = rep.apply;
          return matrix_free(dim_, [f, factor](const Vector& in, Vector& out) {
            Vector tmp = Vector::Zero(out.size());
            f(in, tmp);
            out += factor * tmp;
          });
        }
      },
      rep_);
}

Operator Operator::operator-(const Operator& other) const { return *this + other.scaled(-1.0); }

Operator Operator::shifted(double z) const { return *this + identity(dim_).scaled(-z); }

// --- BlockOperator ----------------------------------------------------------

BlockOperator::BlockOperator(std::size_t blocks, Index base_dim)
    : m_(blocks), d_(base_dim), entries_(blocks * blocks) {
  require(blocks >= 1 && base_dim >= 0, "block operator needs at least one block");
}

void BlockOperator::set(std::size_t row, std::size_t col, Operator op) {
  require(row < m_ && col < m_, "block index out of range");
  require(op.dimension() == d_, "block entry dimension " + std::to_string(op.dimension()) +
                                    " does not match base dimension " + std::to_string(d_));
  entries_[row * m_ + col] = std::move(op);
}

void BlockOperator::clear(std::size_t row, std::size_t col) {
  require(row < m_ && col < m_, "block index out of range");
  entries_[row * m_ + col].reset();
}

const std::optional<Operator>& BlockOperator::at(std::size_t row, std::size_t col) const {
  require(row < m_ && col < m_, "block index out of range");
  return entries_[row * m_ + col];
}

std::size_t BlockOperator::present_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_value(); }));
}

Vector BlockOperator::apply(const Vector& x) const {
  require(x.size() == dimension(), "block apply: vector length mismatch");
  Vector out = Vector::Zero(dimension());
  for (std::size_t i = 0; i < m_; ++i) {
    Vector row_out = Vector::Zero(d_);
    for (std::size_t j = 0; j < m_; ++j) {
      const auto& e = entries_[i * m_ + j];
      if (e) e->apply_add(x.segment(static_cast<Index>(j) * d_, d_), row_out);
    }
    out.segment(static_cast<Index>(i) * d_, d_) = row_out;
  }
  return out;
}

Operator flatten(const BlockOperator& block) {
  const std::size_t m = block.blocks();
  const Index d = block.base_dimension();
  const Index total = block.dimension();

  bool all_dense = static_cast<std::size_t>(total) <= dense_limit();
  for (std::size_t i = 0; i < m && all_dense; ++i)
    for (std::size_t j = 0; j < m && all_dense; ++j)
      if (block.present(i, j) && !block.at(i, j)->is_dense()) all_dense = false;

  if (all_dense) {
    DenseMatrix out = DenseMatrix::Zero(total, total);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (const auto& e = block.at(i, j))
          out.block(static_cast<Index>(i) * d, static_cast<Index>(j) * d, d, d) = e->to_dense();
    return Operator::dense(std::move(out));
  }

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (const auto& e = block.at(i, j)) {
        const Index r0 = static_cast<Index>(i) * d, c0 = static_cast<Index>(j) * d;
        for_each_nonzero(*e, [&](Index r, Index c, double v) {
          triplets.emplace_back(r0 + r, c0 + c, v);
        });
      }
  SparseMatrix s(total, total);
  s.setFromTriplets(triplets.begin(), triplets.end());
  return Operator::sparse(std::move(s));
}

BlockOperator block_diagonal(const std::vector<Operator>& entries) {
  require(!entries.empty(), "block_diagonal needs at least one entry");
  BlockOperator out(entries.size(), entries.front().dimension());
  for (std::size_t i = 0; i < entries.size(); ++i) out.set(i, i, entries[i]);
  return out;
}

// --- dense spectra -----------------------------------------------------------

std::vector<Complex> dense_eigenvalues(const Operator& op) {
  const auto d = static_cast<std::size_t>(op.dimension());
  if (d > dense_limit())
    fail(ErrorKind::TooLarge, "dense eigenvalues requested for dimension " + std::to_string(d) +
                                  " above dense limit " + std::to_string(dense_limit()));
  if (d == 0) return {};
  Eigen::EigenSolver<DenseMatrix> solver(op.to_dense(), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::SolverFailure,
         "Hessenberg-QR iteration did not converge (dimension " + std::to_string(d) + ")");
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  std::sort(out.begin(), out.end(), less_complex);
  return out;
}

SymmetricEigen dense_symmetric_eigen(const Operator& op) {
  const auto d = static_cast<std::size_t>(op.dimension());
  if (d > dense_limit())
    fail(ErrorKind::TooLarge, "dense symmetric eigen requested for dimension " +
                                  std::to_string(d) + " above dense limit " +
                                  std::to_string(dense_limit()));
  const DenseMatrix m = op.to_dense();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  require((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * scale,
          "dense_symmetric_eigen: operator is not symmetric");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::SolverFailure, "symmetric eigensolver did not converge");
  SymmetricEigen out{solver.eigenvalues(), solver.eigenvectors()};
  for (Index j = 0; j < out.vectors.cols(); ++j) {
    Vector v = out.vectors.col(j);
    const double sum = v.sum();
    if (sum < -1e-12)
      v = -v;
    else if (std::abs(sum) <= 1e-12)
      fix_sign(v);
    out.vectors.col(j) = v;
  }
  return out;
}

double multiset_match_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  require(a.size() == b.size(), "multiset match needs equal sizes (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
  struct Cand {
    double dist;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  cands.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) cands.push_back({std::abs(a[i] - b[j]), i, j});
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.dist != y.dist) return x.dist < y.dist;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
  });
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  double worst = 0.0;
  std::size_t matched = 0;
  for (const auto& c : cands) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = true;
    worst = std::max(worst, c.dist);
    if (++matched == a.size()) break;
  }
  return worst;
}

double max_nearest_distance(const std::vector<Complex>& points, const std::vector<Complex>& set) {
  if (points.empty()) return 0.0;
  require(!set.empty(), "nearest distance into an empty set");
  double worst = 0.0;
  for (const auto& p : points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : set) best = std::min(best, std::abs(p - s));
    worst = std::max(worst, best);
  }
  return worst;
}

// --- ShiftedSolver ---------------------------------------------------------

struct ShiftedSolver::Impl {
  Index dim = 0;
  bool dense = true;
  DenseMatrix dense_matrix;
  Eigen::PartialPivLU<DenseMatrix> dense_lu;
  SparseMatrix sparse_matrix;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> sparse_lu;
  double rcond = std::numeric_limits<double>::quiet_NaN();

  Vector raw_solve(const Vector& rhs) const {
    return dense ? Vector(dense_lu.solve(rhs)) : Vector(sparse_lu.solve(rhs));
  }
  Vector multiply(const Vector& x) const {
    return dense ? Vector(dense_matrix * x) : Vector(sparse_matrix * x);
  }
};

ShiftedSolver::ShiftedSolver(const Operator& a, double z, const Operator* b)
    : impl_(std::make_unique<Impl>()) {
  if (b) check_same_dim(a, *b);
  impl_->dim = a.dimension();
  const bool use_dense = static_cast<std::size_t>(a.dimension()) <= dense_limit() &&
                         (a.is_dense() || a.dimension() <= 1024);
  impl_->dense = use_dense;
  if (use_dense) {
    impl_->dense_matrix = a.to_dense();
    if (b)
      impl_->dense_matrix -= z * b->to_dense();
    else
      impl_->dense_matrix.diagonal().array() -= z;
    impl_->dense_lu.compute(impl_->dense_matrix);
    impl_->rcond = impl_->dense_lu.rcond();
    const auto pivots = impl_->dense_lu.matrixLU().diagonal().cwiseAbs();
    if (pivots.minCoeff() == 0.0) impl_->rcond = 0.0;
    if (!(impl_->rcond > 16 * std::numeric_limits<double>::epsilon()))
      fail(ErrorKind::SingularMatrix,
           "shifted operator singular to working precision (rcond=" +
               std::to_string(impl_->rcond) + ", z=" + std::to_string(z) + ")");
  } else {
    SparseMatrix m = a.to_sparse();
    if (b) {
      m -= z * b->to_sparse();
    } else {
      SparseMatrix eye(m.rows(), m.cols());
      eye.setIdentity();
      m -= z * eye;
    }
    m.makeCompressed();
    impl_->sparse_matrix = std::move(m);
    impl_->sparse_lu.analyzePattern(impl_->sparse_matrix);
    impl_->sparse_lu.factorize(impl_->sparse_matrix);
    if (impl_->sparse_lu.info() != Eigen::Success)
      fail(ErrorKind::SingularMatrix, "sparse LU of shifted operator failed at z=" +
                                          std::to_string(z) + ": " +
                                          impl_->sparse_lu.lastErrorMessage());
  }
}

ShiftedSolver::~ShiftedSolver() = default;
ShiftedSolver::ShiftedSolver(ShiftedSolver&&) noexcept = default;
ShiftedSolver& ShiftedSolver::operator=(ShiftedSolver&&) noexcept = default;

Index ShiftedSolver::dimension() const noexcept { return impl_->dim; }

double ShiftedSolver::rcond() const noexcept { return impl_->rcond; }

Vector ShiftedSolver::solve(const Vector& rhs) const {
  require(rhs.size() == impl_->dim, "solve: rhs length mismatch");
  Vector x = impl_->raw_solve(rhs);
  const Vector r = rhs - impl_->multiply(x);
  x += impl_->raw_solve(r);
  if (!x.allFinite()) fail(ErrorKind::SingularMatrix, "solve produced non-finite values");
  return x;
}

Vector linear_solve(const Operator& a, double z, const Vector& rhs) {
  return ShiftedSolver(a, z).solve(rhs);
}

// --- shift-invert ------------------------------------------------------------

double pencil_residual(const Operator& a, const Operator* b, double z, const Vector& x) {
  Vector r = a.apply(x);
  if (b)
    b->apply_add(x, r, -z);
  else
    r -= z * x;
  return r.norm() / x.norm();
}

namespace {

struct RitzPair {
  double value;
  Vector vector;
  double residual;
};

double pencil_quotient(const Operator& a, const Operator* b, const Vector& x) {
  const Vector ax = a.apply(x);
  const Vector bx = b ? b->apply(x) : x;
  const double den = bx.squaredNorm();
  return den > 0 ? bx.dot(ax) / den : std::numeric_limits<double>::quiet_NaN();
}

// Rayleigh-quotient iteration from (z, x). Returns the refined pair when it
// reaches the tolerance; otherwise the best pair seen.
RitzPair rqi_refine(const Operator& a, const Operator* b, RitzPair pair, double tol, int steps,
                    int& iterations) {
  for (int k = 0; k < steps && pair.residual > tol; ++k) {
    Vector y;
    try {
      ShiftedSolver solver(a, pair.value, b);
      y = solver.solve(b ? b->apply(pair.vector) : pair.vector);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SingularMatrix) break;  // shift is an eigenvalue
      throw;
    }
    ++iterations;
    const double norm = y.norm();
    if (!(norm > 0) || !y.allFinite()) break;
    y /= norm;
    const double z = pencil_quotient(a, b, y);
    if (!std::isfinite(z)) break;
    const double res = pencil_residual(a, b, z, y);
    if (res >= pair.residual) break;
    pair = RitzPair{z, std::move(y), res};
  }
  return pair;
}

}  // namespace

std::vector<EigenResult> shift_invert_eigenpairs(const Operator& a, const Operator* b,
                                                 double target, std::size_t count,
                                                 const ShiftInvertOptions& opts) {
  require(count >= 1, "shift-invert needs count >= 1");
  require(std::isfinite(target), "shift-invert target must be finite");
  if (b) check_same_dim(a, *b);
  const Index n = a.dimension();
  require(n >= 1, "shift-invert on an empty operator");

  std::optional<ShiftedSolver> solver;
  try {
    solver.emplace(a, target, b);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularMatrix)
      fail(ErrorKind::ShiftSingular, "shift target " + std::to_string(target) +
                                         " is singular for the pencil; perturb the target");
    throw;
  }

  const Index p = std::min<Index>(n, static_cast<Index>(std::max(opts.block_size, count + 2)));
  DenseMatrix q(n, p);
  StartVectorSource source(0x5EED5EEDull);
  q.col(0).setOnes();
  for (Index j = 1; j < p; ++j)
    for (Index i = 0; i < n; ++i) q(i, j) = source.next();
  q = Eigen::HouseholderQR<DenseMatrix>(q).householderQ() * DenseMatrix::Identity(n, p);

  const auto apply_t = [&](const DenseMatrix& x) {
    DenseMatrix y(n, x.cols());
    for (Index j = 0; j < x.cols(); ++j) {
      const Vector col = x.col(j);
      y.col(j) = solver->solve(b ? b->apply(col) : col);
    }
    return y;
  };

  const std::size_t wanted = std::min<std::size_t>(count, static_cast<std::size_t>(p));
  std::vector<RitzPair> ritz;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    const DenseMatrix y = apply_t(q);
    const DenseMatrix g = q.transpose() * y;
    Eigen::EigenSolver<DenseMatrix> small(g);
    if (small.info() != Eigen::Success) break;

    std::vector<Index> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), Index{0});
    const auto& mu = small.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&](Index i, Index j) { return std::abs(mu[i]) > std::abs(mu[j]); });

    ritz.clear();
    for (Index k : order) {
      if (std::abs(mu[k]) == 0.0) continue;
      if (std::abs(mu[k].imag()) > 1e-10 * std::abs(mu[k])) continue;
      Vector u = y * small.eigenvectors().col(k).real();
      const double norm = u.norm();
      if (!(norm > 0)) continue;
      u /= norm;
      const double z = pencil_quotient(a, b, u);
      if (!std::isfinite(z)) continue;
      ritz.push_back(RitzPair{z, std::move(u), 0.0});
      if (ritz.size() == wanted) break;
    }
    bool converged = ritz.size() == wanted;
    for (auto& r : ritz) {
      r.residual = pencil_residual(a, b, r.value, r.vector);
      if (r.residual > opts.tol) converged = false;
    }
    if (converged) {
      ++iter;
      break;
    }
    q = Eigen::HouseholderQR<DenseMatrix>(y).householderQ() * DenseMatrix::Identity(n, p);
  }

  int iterations = iter;
  std::vector<EigenResult> out;
  for (auto& r : ritz) {
    if (r.residual > opts.tol) r = rqi_refine(a, b, std::move(r), opts.tol, 12, iterations);
    if (r.residual > opts.tol) continue;
    fix_sign(r.vector);
    out.push_back(EigenResult{Complex(r.value, 0.0), std::move(r.vector), r.residual, iterations,
                              "shift-invert-subspace"});
  }
  if (out.empty())
    fail(ErrorKind::SolverFailure,
         "shift-invert found no eigenpair with residual <= " + std::to_string(opts.tol) +
             " near target " + std::to_string(target) + " after " + std::to_string(iterations) +
             " iterations");
  std::stable_sort(out.begin(), out.end(), [&](const EigenResult& x, const EigenResult& y) {
    return std::abs(x.eigenvalue.real() - target) < std::abs(y.eigenvalue.real() - target);
  });
  return out;
}

EigenResult shift_invert_eigenpair(const Operator& a, const Operator* b, double target,
                                   const ShiftInvertOptions& opts) {
  auto pairs = shift_invert_eigenpairs(a, b, target, 1, opts);
  return std::move(pairs.front());
}

void write_matrix_text(std::ostream& out, const DenseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[40];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace fy::blockops
