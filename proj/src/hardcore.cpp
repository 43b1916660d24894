#include "fy/hardcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

#include "fy/error.hpp"

namespace fy::hardcore {

using blockops::Complex;
using blockops::DenseMatrix;
using blockops::Operator;
using blockops::ShiftedSolver;
using blockops::SparseMatrix;
using combinatorics::PairIndex;

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Sites carrying a constraint for `pair`: the whole core, or only its
// boundary shell (separation exactly c) in surface mode.
std::vector<Index> constrained_sites(const LatticeModel& model, const PairIndex& pair,
                                     bool surface_only) {
  std::vector<Index> out;
  if (!model.core_radius) return out;
  const int c = *model.core_radius;
  for (Index idx = 0; idx < model.dimension(); ++idx) {
    const auto x = lattice::coordinates(model, idx);
    const int r = lattice::separation(model, x, pair);
    if (surface_only ? r == c : r <= c) out.push_back(idx);
  }
  return out;
}

std::vector<bool> constrained_mask(const LatticeModel& model, bool surface_only) {
  std::vector<bool> mask(static_cast<std::size_t>(model.dimension()), false);
  for (const auto& pair : combinatorics::enumerate_pairs_or_empty(model.particles))
    for (Index s : constrained_sites(model, pair, surface_only))
      mask[static_cast<std::size_t>(s)] = true;
  return mask;
}

double masked_max(const Vector& v, const std::vector<bool>& mask) {
  double m = 0.0;
  for (Index i = 0; i < v.size(); ++i)
    if (mask[static_cast<std::size_t>(i)]) m = std::max(m, std::abs(v[i]));
  return m;
}

Vector zero_masked(Vector v, const std::vector<bool>& mask) {
  for (Index i = 0; i < v.size(); ++i)
    if (mask[static_cast<std::size_t>(i)]) v[i] = 0.0;
  return v;
}

double masked_residual(const Operator& h, const std::vector<bool>& mask, double z,
                       const Vector& psi) {
  const Vector p = zero_masked(psi, mask);
  const double n = p.norm();
  if (n == 0.0) return std::numeric_limits<double>::infinity();
  const Vector r = zero_masked(h.apply(p) - z * p, mask);
  return r.norm() / n;
}

Vector sum_segments(const Vector& x, std::size_t m, Index d) {
  Vector s = Vector::Zero(d);
  for (std::size_t k = 0; k < m; ++k) s += x.segment(static_cast<Index>(k) * d, d);
  return s;
}

// Deterministic start block: constant column plus SplitMix64 uniforms.
DenseMatrix start_block(Index d, Index p, const std::vector<bool>& mask) {
  DenseMatrix q(d, p);
  std::uint64_t state = 0xC0FFEE11ull;
  for (Index j = 0; j < p; ++j)
    for (Index i = 0; i < d; ++i) {
      if (j == 0) {
        q(i, j) = 1.0;
        continue;
      }
      state += 0x9E3779B97F4A7C15ull;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      z ^= z >> 31;
      q(i, j) = static_cast<double>(z >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    }
  for (Index i = 0; i < d; ++i)
    if (mask[static_cast<std::size_t>(i)]) q.row(i).setZero();
  Eigen::HouseholderQR<DenseMatrix> qr(q);
  return qr.householderQ() * DenseMatrix::Identity(d, p);
}

}  // namespace

CoreRegion core_region(const LatticeModel& model, const PairIndex& pair) {
  model.validate();
  return CoreRegion{pair, constrained_sites(model, pair, false)};
}

std::vector<bool> core_mask(const LatticeModel& model) {
  model.validate();
  return constrained_mask(model, false);
}

HardcorePencil assemble_hardcore3_pencil(const LatticeModel& model, const PencilOptions& opts) {
  model.validate();
  require(model.particles == 3, "hard-core pencil needs 3 particles");
  const auto split = lattice::build_split(model);
  const auto pairs = combinatorics::enumerate_pairs(3);
  const Index d = model.dimension();
  const std::size_t m = pairs.size();

  HardcorePencil out{BlockOperator(m, d), BlockOperator(m, d), {}, 0, 0};

  // Owner of each constrained site: first pair in canonical order.
  std::vector<std::vector<bool>> owned(m, std::vector<bool>(static_cast<std::size_t>(d), false));
  std::vector<bool> taken(static_cast<std::size_t>(d), false);
  for (std::size_t a = 0; a < m; ++a) {
    for (Index s : constrained_sites(model, pairs[a], opts.surface_only)) {
      ++out.core_incidences;
      if (taken[static_cast<std::size_t>(s)]) {
        ++out.duplicate_incidences;
        continue;
      }
      taken[static_cast<std::size_t>(s)] = true;
      owned[a][static_cast<std::size_t>(s)] = true;
      out.constraint_rows.emplace(std::make_pair(a, s), static_cast<Index>(a) * d + s);
    }
  }

  const SparseMatrix h0 = split.h0.to_sparse();
  for (std::size_t a = 0; a < m; ++a) {
    const Vector v = split.potentials[a].diagonal_entries();
    const auto& own = owned[a];

    Triplets diag_t, off_t, b_t;
    for (Index col = 0; col < h0.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(h0, col); it; ++it)
        if (!own[static_cast<std::size_t>(it.row())])
          diag_t.emplace_back(it.row(), it.col(), it.value());
    for (Index s = 0; s < d; ++s) {
      if (own[static_cast<std::size_t>(s)]) {
        diag_t.emplace_back(s, s, 1.0);
        off_t.emplace_back(s, s, 1.0);
      } else {
        if (v[s] != 0.0) {
          diag_t.emplace_back(s, s, v[s]);
          off_t.emplace_back(s, s, v[s]);
        }
        b_t.emplace_back(s, s, 1.0);
      }
    }
    SparseMatrix diag(d, d), off(d, d), b(d, d);
    diag.setFromTriplets(diag_t.begin(), diag_t.end());
    off.setFromTriplets(off_t.begin(), off_t.end());
    b.setFromTriplets(b_t.begin(), b_t.end());
    diag.prune(0.0);

    out.a.set(a, a, Operator::sparse(std::move(diag)));
    const Operator off_op = Operator::sparse(std::move(off));
    for (std::size_t c = 0; c < m; ++c)
      if (c != a) out.a.set(a, c, off_op);
    out.b.set(a, a, Operator::sparse(std::move(b)));
  }
  return out;
}

double restricted_residual(const LatticeModel& model, double z, const Vector& psi) {
  model.validate();
  require(psi.size() == model.dimension(), "Psi length does not match dimension");
  return masked_residual(lattice::build_hamiltonian(model), core_mask(model), z, psi);
}

HardcoreSolution solve_hardcore3(const LatticeModel& model, double target,
                                 const HardcoreOptions& opts) {
  require(opts.count >= 1, "count must be at least 1");
  const HardcorePencil pencil = assemble_hardcore3_pencil(model, opts.pencil);
  const Operator a = blockops::flatten(pencil.a);
  const Operator b = blockops::flatten(pencil.b);
  const Operator h = lattice::build_hamiltonian(model);
  const std::size_t m = pencil.a.blocks();
  const Index d = model.dimension();
  const auto mask = constrained_mask(model, opts.pencil.surface_only);
  const auto full_mask = core_mask(model);

  std::optional<ShiftedSolver> shifted;
  try {
    shifted.emplace(a, target, &b);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularMatrix) throw;
    fail(ErrorKind::ShiftSingular,
         "A - target B is singular at target=" + std::to_string(target));
  }

  // Psi -> S (A - target B)^{-1} B L Psi, with L placing Psi in component 1.
  // Directions with vanishing component sum never enter this map.
  auto reduced = [&](const Vector& psi) {
    Vector x = Vector::Zero(a.dimension());
    x.head(d) = psi;
    return zero_masked(sum_segments(shifted->solve(b.apply(x)), m, d), mask);
  };

  Index free_sites = 0;
  for (bool c : mask) free_sites += c ? 0 : 1;
  require(free_sites > 0, "every configuration lies inside the core");
  const auto want = static_cast<Index>(std::min<std::size_t>(opts.count, free_sites));
  const Index p = std::min<Index>(free_sites,
                                  std::max<Index>(static_cast<Index>(opts.solver.block_size),
                                                  2 * want + 2));

  DenseMatrix q = start_block(d, p, mask);
  Eigen::VectorXd mu;
  DenseMatrix ritz;
  int iter = 0;
  bool converged = false;
  for (; iter < opts.solver.max_iter && !converged; ++iter) {
    DenseMatrix y(d, p);
    for (Index j = 0; j < p; ++j) y.col(j) = reduced(q.col(j));
    DenseMatrix g = q.transpose() * y;
    g = 0.5 * (g + g.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(g);
    if (es.info() != Eigen::Success) fail(ErrorKind::SolverFailure, "Rayleigh-Ritz step failed");
    // Largest |mu| first: nearest to the target.
    std::vector<Index> order(static_cast<std::size_t>(p));
    for (Index j = 0; j < p; ++j) order[static_cast<std::size_t>(j)] = j;
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
      return std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[j]);
    });
    mu.resize(p);
    ritz.resize(d, p);
    for (Index j = 0; j < p; ++j) {
      mu[j] = es.eigenvalues()[order[static_cast<std::size_t>(j)]];
      ritz.col(j) = q * es.eigenvectors().col(order[static_cast<std::size_t>(j)]);
    }
    converged = true;
    for (Index j = 0; j < want && converged; ++j) {
      if (mu[j] == 0.0) {
        converged = false;
        break;
      }
      const double z = target + 1.0 / mu[j];
      converged = masked_residual(h, mask, z, ritz.col(j)) <= opts.solver.tol * (1.0 + std::abs(z));
    }
    if (!converged) {
      Eigen::HouseholderQR<DenseMatrix> qr(y);
      q = qr.householderQ() * DenseMatrix::Identity(d, p);
    }
  }

  HardcoreSolution sol;
  if (!converged)
    sol.warnings.push_back("reduced iteration reached max_iter=" +
                           std::to_string(opts.solver.max_iter));

  for (Index j = 0; j < want; ++j) {
    if (mu[j] == 0.0) continue;
    const double lambda = target + 1.0 / mu[j];
    const double delta = 1e-9 * (1.0 + std::abs(lambda));
    Vector x = Vector::Zero(a.dimension());
    x.head(d) = ritz.col(j);
    try {
      ShiftedSolver polish(a, lambda + delta, &b);
      for (int step = 0; step < 2; ++step) {
        x = polish.solve(b.apply(x));
        x /= x.norm();
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularMatrix) throw;
      sol.warnings.push_back("polish shift singular near z=" + std::to_string(lambda));
      continue;
    }
    const Vector ax = a.apply(x), bx = b.apply(x);
    const double z = bx.dot(ax) / bx.squaredNorm();

    HardcoreState st;
    st.pencil = blockops::EigenResult{Complex(z, 0.0), x, blockops::pencil_residual(a, &b, z, x),
                                      iter, "hardcore-reduced-shift-invert"};
    for (std::size_t k = 0; k < m; ++k)
      st.components.push_back(x.segment(static_cast<Index>(k) * d, d));
    st.psi = faddeev::component_sum(st.components);
    const double pn = st.psi.norm();
    if (pn <= 1e-8) {
      sol.warnings.push_back("spurious root rejected at z=" + std::to_string(z));
      continue;
    }
    st.core_max = masked_max(st.psi, full_mask) / pn;
    st.restricted_residual = masked_residual(h, mask, z, st.psi);
    if (!opts.pencil.surface_only && st.core_max > opts.vanish_tol) {
      sol.warnings.push_back("state at z=" + std::to_string(z) + " does not vanish on the core");
      continue;
    }
    if (st.restricted_residual > opts.restricted_tol) {
      sol.warnings.push_back("state at z=" + std::to_string(z) +
                             " fails the restricted equation");
      continue;
    }
    sol.states.push_back(std::move(st));
  }
  if (sol.states.empty())
    fail(ErrorKind::SolverFailure, "no physical hard-core eigenpair near target=" +
                                       std::to_string(target));
  std::stable_sort(sol.states.begin(), sol.states.end(), [&](const auto& l, const auto& r) {
    return std::abs(l.pencil.eigenvalue.real() - target) <
           std::abs(r.pencil.eigenvalue.real() - target);
  });
  return sol;
}

RestrictedSpectrum restricted_oracle(const LatticeModel& model, std::size_t k) {
  model.validate(static_cast<Index>(blockops::dense_limit()));
  const auto mask = core_mask(model);
  RestrictedSpectrum out;
  for (Index i = 0; i < model.dimension(); ++i)
    if (!mask[static_cast<std::size_t>(i)]) out.kept.push_back(i);
  if (out.kept.empty()) return out;

  const DenseMatrix h = lattice::build_hamiltonian(model).to_dense();
  const DenseMatrix sub = h(out.kept, out.kept);
  const auto eig = blockops::dense_symmetric_eigen(Operator::dense(sub));
  const Operator hr = Operator::dense(sub);
  const std::size_t count = std::min<std::size_t>(k, out.kept.size());
  for (std::size_t n = 0; n < count; ++n) {
    const auto col = static_cast<Index>(n);
    const double z = eig.values[col];
    const Vector v = eig.vectors.col(col);
    Vector full = Vector::Zero(model.dimension());
    for (std::size_t i = 0; i < out.kept.size(); ++i)
      full[out.kept[i]] = v[static_cast<Index>(i)];
    out.states.push_back(blockops::EigenResult{Complex(z, 0.0), std::move(full),
                                               blockops::pencil_residual(hr, nullptr, z, v), 0,
                                               "restricted-dense"});
  }
  return out;
}

Hardcore4Constraints::Hardcore4Constraints(const yakubovsky::YakubovskySystem& sys,
                                           const LatticeModel& model)
    : sys_(&sys) {
  model.validate();
  require(model.particles == 4, "four-body constraints need 4 particles");
  require(model.dimension() == sys.dimension(), "model and system dimensions differ");
  for (const auto& chain : sys.chains())
    sites_.push_back(constrained_sites(model, chain.pair, false));
}

std::size_t Hardcore4Constraints::constraint_sites() const noexcept {
  std::size_t n = 0;
  for (const auto& s : sites_) n += s.size();
  return n;
}

Hardcore4Defect Hardcore4Constraints::evaluate(const yakubovsky::YakubovskyComponents& comps) const {
  const auto& sys = *sys_;
  require(comps.components.size() == sys.chain_count(), "one component per chain required");
  Hardcore4Defect out;
  out.constraint_sites = constraint_sites();
  for (const auto& c : comps.components) out.component_scale = std::max(out.component_scale, c.norm());

  for (std::size_t c = 0; c < sys.chain_count(); ++c) {
    const std::size_t a = sys.partition_of(c);
    const std::size_t alpha = sys.pair_of(c);
    for (Index s : sites_[c]) {
      double own_all = 0.0, own_other = 0.0, cross = 0.0;
      for (std::size_t e = 0; e < sys.chain_count(); ++e) {
        const std::size_t beta = sys.pair_of(e);
        if (!sys.pair_in_partition(beta, a)) continue;
        const double val = comps.components[e][s];
        if (sys.partition_of(e) == a) {
          own_all += val;
          if (beta != alpha) own_other += val;
        } else if (beta != alpha) {
          cross += val;
        }
      }
      const double self = comps.components[c][s];
      out.max_defect = std::max(out.max_defect, std::abs(self + own_all + cross));
      out.max_defect_excluding_self =
          std::max(out.max_defect_excluding_self, std::abs(self + own_other + cross));
    }
  }
  return out;
}

Hardcore4Constraints assemble_hardcore4_constraints(const yakubovsky::YakubovskySystem& sys,
                                                    const LatticeModel& model) {
  return Hardcore4Constraints(sys, model);
}

}  // namespace fy::hardcore

namespace fy::hardcore {

namespace {

// Minimum-norm solve of (op - z) x = rhs. Flags the solve when the shifted
// operator is rank deficient.
class MinNormSolver {
 public:
  MinNormSolver(const Operator& op, double z) {
    DenseMatrix m = op.to_dense();
    m.diagonal().array() -= z;
    cod_.setThreshold(1e-12 * static_cast<double>(m.rows()));
    cod_.compute(m);
    singular_ = cod_.rank() < m.rows();
  }
  bool singular() const { return singular_; }
  Vector solve(const Vector& rhs) const {
    if (rhs.isZero(0.0)) return Vector::Zero(rhs.size());
    return cod_.solve(rhs);
  }

 private:
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix> cod_;
  bool singular_ = false;
};

}  // namespace

Hardcore4Components hardcore4_components(const yakubovsky::YakubovskySystem& sys, double z,
                                         const Vector& psi) {
  const auto& split = sys.split();
  require(psi.size() == sys.dimension(), "Psi length does not match dimension");
  if (static_cast<std::size_t>(sys.dimension()) > blockops::dense_limit())
    fail(ErrorKind::TooLarge, "hard-core component construction is dense; dimension " +
                                  std::to_string(sys.dimension()) + " exceeds the dense limit");
  Hardcore4Components out;
  out.faddeev.z = z;
  out.chains.z = z;

  const MinNormSolver free(split.h0, z);
  if (free.singular()) out.pseudo_inverse_channels.push_back(-1);
  for (std::size_t a = 0; a < split.channels(); ++a)
    out.faddeev.components.push_back(-free.solve(split.potentials[a].apply(psi)));

  std::vector<MinNormSolver> channel;
  for (std::size_t a = 0; a < split.channels(); ++a) {
    channel.emplace_back(split.channel(a), z);
    if (channel.back().singular()) out.pseudo_inverse_channels.push_back(static_cast<int>(a));
  }
  for (std::size_t c = 0; c < sys.chain_count(); ++c) {
    const std::size_t alpha = sys.pair_of(c);
    Vector source = Vector::Zero(sys.dimension());
    for (std::size_t beta = 0; beta < sys.pairs().size(); ++beta)
      if (beta != alpha && sys.pair_in_partition(beta, sys.partition_of(c)))
        source += out.faddeev.components[beta];
    out.chains.components.push_back(-channel[alpha].solve(split.potentials[alpha].apply(source)));
  }
  return out;
}

}  // namespace fy::hardcore
