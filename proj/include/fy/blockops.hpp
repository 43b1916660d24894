#pragma once

// Linear operators over a common real base space, block operators built from
// them, and the eigen/solve kernels the decomposition modules consume.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace fy::blockops {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Complex = std::complex<double>;

/// Largest dimension for which dense materialization and dense eigenvalue
/// routines are permitted. Defaults to 4096; FY_DENSE_LIMIT overrides.
std::size_t dense_limit();
void set_dense_limit(std::size_t limit);

/// Square real operator. Immutable once built.
class Operator {
 public:
  using Applicator = std::function<void(const Vector& in, Vector& out)>;

  struct MatrixFree {
    Index dim = 0;
    Applicator apply;
  };

  Operator();  // 0x0 zero operator

  static Operator dense(DenseMatrix m);
  static Operator diagonal(Vector diag);
  static Operator sparse(SparseMatrix m);
  static Operator matrix_free(Index dim, Applicator apply);
  static Operator identity(Index dim);
  static Operator zero(Index dim);

  Index dimension() const noexcept { return dim_; }
  bool is_dense() const noexcept { return std::holds_alternative<DenseMatrix>(rep_); }
  bool is_diagonal() const noexcept { return std::holds_alternative<Vector>(rep_); }
  bool is_sparse() const noexcept { return std::holds_alternative<SparseMatrix>(rep_); }
  bool is_matrix_free() const noexcept { return std::holds_alternative<MatrixFree>(rep_); }

  Vector apply(const Vector& x) const;
  /// out += scale * (this * x)
  void apply_add(const Vector& x, Vector& out, double scale = 1.0) const;

  /// Matrix-free operators are materialized column by column.
  DenseMatrix to_dense() const;
  SparseMatrix to_sparse() const;
  /// Diagonal of the operator (exact for every representation).
  Vector diagonal_entries() const;

  Operator operator+(const Operator& other) const;
  Operator operator-(const Operator& other) const;
  Operator scaled(double factor) const;
  /// this - z * I
  Operator shifted(double z) const;

 private:
  using Rep = std::variant<DenseMatrix, Vector, SparseMatrix, MatrixFree>;
  Operator(Index dim, Rep rep) : dim_(dim), rep_(std::move(rep)) {}

  Index dim_ = 0;
  Rep rep_;
};

/// m x m grid of optional entries over a common base dimension d. Absent
/// entries are exact zeros.
class BlockOperator {
 public:
  BlockOperator(std::size_t blocks, Index base_dim);

  std::size_t blocks() const noexcept { return m_; }
  Index base_dimension() const noexcept { return d_; }
  Index dimension() const noexcept { return static_cast<Index>(m_) * d_; }

  void set(std::size_t row, std::size_t col, Operator op);
  void clear(std::size_t row, std::size_t col);
  const std::optional<Operator>& at(std::size_t row, std::size_t col) const;
  bool present(std::size_t row, std::size_t col) const { return at(row, col).has_value(); }
  std::size_t present_count() const;

  Vector apply(const Vector& x) const;

 private:
  std::size_t m_;
  Index d_;
  std::vector<std::optional<Operator>> entries_;
};

/// Single (m*d)^2 operator with entry (i,j) in block position (i,j). Dense
/// when every present entry is dense and m*d fits the dense limit, sparse
/// otherwise.
Operator flatten(const BlockOperator& block);

/// Block-diagonal operator with the given entries.
BlockOperator block_diagonal(const std::vector<Operator>& entries);

/// All eigenvalues, ordered by (real, imag). Throws TooLarge above the dense
/// limit and SolverFailure when the QR iteration does not converge.
std::vector<Complex> dense_eigenvalues(const Operator& op);

struct SymmetricEigen {
  Vector values;       // ascending
  DenseMatrix vectors; // columns, unit norm
};

/// Dense symmetric diagonalization; the operator must be exactly symmetric.
SymmetricEigen dense_symmetric_eigen(const Operator& op);

/// Greedy minimal-distance matching of two eigenvalue multisets of equal
/// size; returns the largest matched distance.
double multiset_match_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Largest distance from a point of `points` to its nearest member of `set`.
double max_nearest_distance(const std::vector<Complex>& points, const std::vector<Complex>& set);

struct EigenResult {
  Complex eigenvalue{};
  Vector eigenvector;
  double residual_norm = 0.0;  // ||(A - zB)x|| / ||x||
  int iterations = 0;
  std::string method;
};

/// Factorization of A - z*B (B = I when absent) reused across solves. Dense
/// LU with partial pivoting up to the dense limit, sparse LU above it.
class ShiftedSolver {
 public:
  ShiftedSolver(const Operator& a, double z, const Operator* b = nullptr);
  ~ShiftedSolver();
  ShiftedSolver(ShiftedSolver&&) noexcept;
  ShiftedSolver& operator=(ShiftedSolver&&) noexcept;

  Index dimension() const noexcept;
  /// One step of iterative refinement is applied to every solve.
  Vector solve(const Vector& rhs) const;
  /// Reciprocal condition estimate (dense path); NaN for the sparse path.
  double rcond() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// x with (A - zI)x = rhs. Throws SingularMatrix if A - zI is singular to
/// working precision.
Vector linear_solve(const Operator& a, double z, const Vector& rhs);

struct ShiftInvertOptions {
  double tol = 1e-10;
  int max_iter = 500;
  std::size_t block_size = 4;  // subspace width for the inverse iteration
};

/// Eigenpair of the pencil (A, B) nearest `target`, via block inverse
/// iteration on (A - target B)^{-1} B with Rayleigh-Ritz extraction and
/// Rayleigh-quotient refinement. Real eigenvalues only.
EigenResult shift_invert_eigenpair(const Operator& a, const Operator* b, double target,
                                   const ShiftInvertOptions& opts = {});

/// Up to `count` converged real eigenpairs nearest `target`, ordered by
/// distance to the target.
std::vector<EigenResult> shift_invert_eigenpairs(const Operator& a, const Operator* b,
                                                 double target, std::size_t count,
                                                 const ShiftInvertOptions& opts = {});

/// ||(A - zB)x|| / ||x||, recomputed from the operators.
double pencil_residual(const Operator& a, const Operator* b, double z, const Vector& x);

/// Row-major text dump: a "rows cols" header line followed by one line per
/// row, entries separated by single spaces in %.17g.
void write_matrix_text(std::ostream& out, const DenseMatrix& m);

}  // namespace fy::blockops
