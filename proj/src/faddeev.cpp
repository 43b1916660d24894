#include "fy/faddeev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "fy/error.hpp"

namespace fy::faddeev {

using blockops::Complex;
using blockops::Index;
using blockops::ShiftedSolver;

namespace {

constexpr double kTiny = 1e-300;

std::optional<ShiftedSolver> try_factor(const Operator& op, double z) {
  try {
    return ShiftedSolver(op, z);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularMatrix) return std::nullopt;
    throw;
  }
}

ShiftedSolver factor_h0(const FewBodySplit& split, double z) {
  auto solver = try_factor(split.h0, z);
  if (!solver)
    fail(ErrorKind::SpuriousEnergy,
         "H0 - z is singular at z=" + std::to_string(z) + ": z lies in the unperturbed spectrum");
  return std::move(*solver);
}

std::vector<ShiftedSolver> factor_channels(const FewBodySplit& split, double z) {
  std::vector<ShiftedSolver> out;
  out.reserve(split.channels());
  for (std::size_t a = 0; a < split.channels(); ++a) {
    auto solver = try_factor(split.channel(a), z);
    if (!solver)
      throw ChannelEnergyError(static_cast<int>(a),
                               "H0 + V_" + std::to_string(a + 1) + " - z is singular at z=" +
                                   std::to_string(z));
    out.push_back(std::move(*solver));
  }
  return out;
}

void check_components(const FewBodySplit& split, const std::vector<Vector>& comps) {
  require(comps.size() == split.channels(),
          "expected " + std::to_string(split.channels()) + " components, got " +
              std::to_string(comps.size()));
  for (const auto& c : comps)
    require(c.size() == split.dimension(), "component length does not match dimension");
}

// Portable uniform [-1, 1) stream.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : state_(seed * 0x2545F4914F6CDD1Dull + 1) {}
  double next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;
  }

 private:
  std::uint64_t state_;
};

blockops::DenseMatrix random_matrix(UniformStream& rng, Index d, bool symmetric) {
  blockops::DenseMatrix m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = symmetric ? i : 0; j < d; ++j) {
      m(i, j) = rng.next();
      if (symmetric) m(j, i) = m(i, j);
    }
  return m;
}

}  // namespace

void FewBodySplit::validate() const {
  require(potentials.size() >= 2, "a split needs at least two potentials");
  for (std::size_t a = 0; a < potentials.size(); ++a)
    require(potentials[a].dimension() == h0.dimension(),
            "potential " + std::to_string(a + 1) + " has dimension " +
                std::to_string(potentials[a].dimension()) + ", H0 has " +
                std::to_string(h0.dimension()));
}

Operator FewBodySplit::total() const {
  validate();
  Operator h = h0;
  for (const auto& v : potentials) h = h + v;
  return h;
}

Operator FewBodySplit::channel(std::size_t alpha) const {
  require(alpha < potentials.size(), "channel index out of range");
  return h0 + potentials[alpha];
}

Vector component_sum(const std::vector<Vector>& comps) {
  require(!comps.empty(), "component sum of an empty list");
  Vector s = Vector::Zero(comps.front().size());
  for (const auto& c : comps) s += c;
  return s;
}

double lippmann_schwinger_residual(const FewBodySplit& split, double z, const Vector& psi) {
  split.validate();
  require(psi.size() == split.dimension(), "Psi length does not match dimension");
  const double norm = psi.norm();
  require(norm > 0, "Psi must be nonzero");
  const auto solver = factor_h0(split, z);
  Vector vpsi = Vector::Zero(psi.size());
  for (const auto& v : split.potentials) v.apply_add(psi, vpsi);
  return (psi + solver.solve(vpsi)).norm() / norm;
}

FaddeevComponents faddeev_components(const FewBodySplit& split, double z, const Vector& psi,
                                     bool check_eigenpair) {
  split.validate();
  require(psi.size() == split.dimension(), "Psi length does not match dimension");
  if (check_eigenpair) {
    const double res = blockops::pencil_residual(split.total(), nullptr, z, psi);
    if (!(res <= kEigenpairTolerance * (1.0 + std::abs(z))))
      fail(ErrorKind::PreconditionViolation,
           "(z, Psi) is not an eigenpair of H: residual " + std::to_string(res));
  }
  const auto solver = factor_h0(split, z);
  FaddeevComponents out;
  out.z = z;
  out.rcond = solver.rcond();
  out.ill_conditioned = std::isfinite(out.rcond) && out.rcond * kConditionLimit < 1.0;
  out.components.reserve(split.channels());
  for (const auto& v : split.potentials) out.components.push_back(-solver.solve(v.apply(psi)));
  return out;
}

BlockOperator assemble_faddeev_operator(const FewBodySplit& split) {
  split.validate();
  const std::size_t n = split.channels();
  BlockOperator h(n, split.dimension());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      h.set(a, b, a == b ? split.channel(a) : split.potentials[a]);
  return h;
}

std::vector<double> faddeev_residual(const FewBodySplit& split, const FaddeevComponents& comps) {
  split.validate();
  check_components(split, comps.components);
  const Vector total = component_sum(comps.components);
  std::vector<double> out;
  out.reserve(split.channels());
  for (std::size_t a = 0; a < split.channels(); ++a) {
    const Vector& psi = comps.components[a];
    // (H0 + V_a - z) psi_a + V_a (total - psi_a) = (H0 - z) psi_a + V_a total
    Vector r = split.h0.apply(psi) - comps.z * psi;
    split.potentials[a].apply_add(total, r);
    out.push_back(r.norm() / std::max(psi.norm(), kTiny));
  }
  return out;
}

std::vector<Vector> faddeev_integral_map(const FewBodySplit& split, double z,
                                         const std::vector<Vector>& comps) {
  split.validate();
  check_components(split, comps);
  const auto solvers = factor_channels(split, z);
  const Vector total = component_sum(comps);
  std::vector<Vector> out;
  out.reserve(comps.size());
  for (std::size_t a = 0; a < comps.size(); ++a)
    out.push_back(-solvers[a].solve(split.potentials[a].apply(total - comps[a])));
  return out;
}

SpectrumUnionReport spectrum_union_check(const FewBodySplit& split, double tol) {
  split.validate();
  const auto faddeev_op = blockops::flatten(assemble_faddeev_operator(split));
  const auto sigma_f = blockops::dense_eigenvalues(faddeev_op);
  const auto sigma_h = blockops::dense_eigenvalues(split.total());
  const auto sigma_0 = blockops::dense_eigenvalues(split.h0);

  std::vector<Complex> united(sigma_h);
  united.insert(united.end(), sigma_0.begin(), sigma_0.end());

  SpectrumUnionReport report;
  report.channels = split.channels();
  report.dimension = split.dimension();
  report.tolerance = tol;
  report.max_matching_distance = blockops::max_nearest_distance(united, sigma_f);
  report.reverse_distance = blockops::max_nearest_distance(sigma_f, united);
  report.passed = report.max_matching_distance <= tol && report.reverse_distance <= tol;

  const double radius = std::max(100.0 * tol, 1e-6);
  std::vector<bool> taken(sigma_0.size(), false);
  for (std::size_t i = 0; i < sigma_0.size(); ++i) {
    if (taken[i]) continue;
    MultiplicityEntry entry;
    entry.point = sigma_0[i];
    for (std::size_t j = i; j < sigma_0.size(); ++j)
      if (!taken[j] && std::abs(sigma_0[j] - entry.point) <= radius) {
        taken[j] = true;
        ++entry.in_h0;
      }
    for (const auto& q : sigma_f)
      if (std::abs(q - entry.point) <= radius) ++entry.in_faddeev;
    for (const auto& q : sigma_h)
      if (std::abs(q - entry.point) <= radius) ++entry.in_h;
    report.multiplicity.push_back(entry);
  }
  return report;
}

FewBodySplit random_split(std::uint64_t seed, std::size_t n, Index d, bool hermitian) {
  require(n >= 2 && d >= 1, "random split needs n >= 2 and d >= 1");
  UniformStream rng(seed);
  FewBodySplit split{Operator::dense(random_matrix(rng, d, hermitian)), {}};
  for (std::size_t a = 0; a < n; ++a)
    split.potentials.push_back(Operator::dense(random_matrix(rng, d, hermitian)));
  return split;
}

}  // namespace fy::faddeev
