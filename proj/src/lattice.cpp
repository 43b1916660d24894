#include "fy/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "fy/error.hpp"

namespace fy::lattice {

const char* to_string(Boundary b) noexcept { return b == Boundary::Box ? "box" : "ring"; }

const char* to_string(PotentialKind k) noexcept {
  switch (k) {
    case PotentialKind::Table: return "table";
    case PotentialKind::OnSite: return "onsite";
    case PotentialKind::SquareWell: return "square";
    case PotentialKind::Gaussian: return "gaussian";
  }
  return "?";
}

Boundary parse_boundary(std::string_view s) {
  if (s == "box") return Boundary::Box;
  if (s == "ring") return Boundary::Ring;
  fail(ErrorKind::InvalidInput, "unknown boundary '" + std::string(s) + "' (box|ring)");
}

PotentialKind parse_potential_kind(std::string_view s) {
  if (s == "table") return PotentialKind::Table;
  if (s == "onsite") return PotentialKind::OnSite;
  if (s == "square") return PotentialKind::SquareWell;
  if (s == "gaussian") return PotentialKind::Gaussian;
  fail(ErrorKind::InvalidInput,
       "unknown potential kind '" + std::string(s) + "' (table|onsite|square|gaussian)");
}

double PairPotential::value(int r) const {
  switch (kind) {
    case PotentialKind::Table:
      return r < static_cast<int>(params.size()) ? params[static_cast<std::size_t>(r)] : 0.0;
    case PotentialKind::OnSite:
      return r == 0 ? params[0] : 0.0;
    case PotentialKind::SquareWell:
      return r <= static_cast<int>(params[1]) ? params[0] : 0.0;
    case PotentialKind::Gaussian: {
      const double x = r / params[1];
      return params[0] * std::exp(-x * x);
    }
  }
  return 0.0;
}

void PairPotential::validate() const {
  for (double p : params) require(std::isfinite(p), "potential parameters must be finite");
  switch (kind) {
    case PotentialKind::Table:
      require(!params.empty(), "table potential needs at least one value");
      break;
    case PotentialKind::OnSite:
      require(params.size() == 1, "onsite potential takes one parameter (g)");
      break;
    case PotentialKind::SquareWell:
      require(params.size() == 2 && params[1] >= 0,
              "square potential takes (depth, range >= 0)");
      break;
    case PotentialKind::Gaussian:
      require(params.size() == 2 && params[1] > 0, "gaussian potential takes (depth, width > 0)");
      break;
  }
}

Index LatticeModel::dimension() const {
  Index d = 1;
  for (int i = 0; i < particles; ++i) {
    d *= sites;
    if (d > (Index{1} << 40)) break;
  }
  return d;
}

void LatticeModel::validate(Index cap) const {
  require(particles >= 1 && particles <= 4,
          "lattice models support 1 to 4 particles, got " + std::to_string(particles));
  require(sites >= 1, "lattice needs at least one site");
  require(std::isfinite(hopping) && hopping >= 0, "hopping must be finite and >= 0");
  potential.validate();
  require(pair_scales.empty() || pair_scales.size() == pair_count(),
          "pair_scales needs one entry per pair");
  for (double s : pair_scales) require(std::isfinite(s), "pair scales must be finite");
  require(!core_radius || *core_radius >= 0, "core radius must be >= 0");
  if (dimension() > cap)
    fail(ErrorKind::TooLarge, "lattice dimension " + std::to_string(dimension()) +
                                  " exceeds cap " + std::to_string(cap));
}

LatticeModel preset(std::string_view name) {
  LatticeModel m;
  if (name == "tiny3") {
    m.particles = 3;
    m.sites = 6;
    m.potential = PairPotential{PotentialKind::Gaussian, {-4.0, 1.0}};
  } else if (name == "tiny4") {
    m.particles = 4;
    m.sites = 4;
    m.potential = PairPotential{PotentialKind::OnSite, {-6.0}};
  } else {
    fail(ErrorKind::InvalidInput, "unknown preset '" + std::string(name) + "'");
  }
  m.boundary = Boundary::Box;
  m.hopping = 1.0;
  return m;
}

std::vector<std::string> preset_names() { return {"tiny3", "tiny4"}; }

std::vector<int> coordinates(const LatticeModel& model, Index config) {
  std::vector<int> x(static_cast<std::size_t>(model.particles));
  for (int i = model.particles - 1; i >= 0; --i) {
    x[static_cast<std::size_t>(i)] = static_cast<int>(config % model.sites);
    config /= model.sites;
  }
  return x;
}

Index config_index(const LatticeModel& model, std::span<const int> coords) {
  Index idx = 0;
  for (int c : coords) idx = idx * model.sites + c;
  return idx;
}

int separation(const LatticeModel& model, std::span<const int> coords, const PairIndex& pair) {
  const int r = std::abs(coords[static_cast<std::size_t>(pair.members[0] - 1)] -
                         coords[static_cast<std::size_t>(pair.members[1] - 1)]);
  return model.boundary == Boundary::Ring ? std::min(r, model.sites - r) : r;
}

double pair_value(const LatticeModel& model, std::size_t pair_position, int r) {
  if (model.core_radius && r <= *model.core_radius) return 0.0;
  const double scale = model.pair_scales.empty() ? 1.0 : model.pair_scales[pair_position];
  return scale * model.potential.value(r);
}

Operator build_h0(const LatticeModel& model) {
  model.validate();
  const Index d = model.dimension();
  const double t = model.hopping;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(2 * model.particles + 1));
  Index stride = d;
  for (int p = 0; p < model.particles && t != 0.0; ++p) {
    stride /= model.sites;
    for (Index idx = 0; idx < d; ++idx) {
      triplets.emplace_back(idx, idx, 2.0 * t);
      const int x = static_cast<int>((idx / stride) % model.sites);
      for (int step : {-1, 1}) {
        int y = x + step;
        if (model.boundary == Boundary::Ring) {
          y = (y + model.sites) % model.sites;
        } else if (y < 0 || y >= model.sites) {
          continue;
        }
        triplets.emplace_back(idx, idx + static_cast<Index>(y - x) * stride, -t);
      }
    }
  }
  blockops::SparseMatrix h(d, d);
  h.setFromTriplets(triplets.begin(), triplets.end());
  h.prune(0.0);
  return Operator::sparse(std::move(h));
}

Operator build_pair_potential(const LatticeModel& model, const PairIndex& pair) {
  model.validate();
  const auto pairs = combinatorics::enumerate_pairs(model.particles);
  const std::size_t position = combinatorics::index_of(pairs, pair);
  const Index d = model.dimension();
  Vector diag(d);
  for (Index idx = 0; idx < d; ++idx) {
    const auto x = coordinates(model, idx);
    diag[idx] = pair_value(model, position, separation(model, x, pair));
  }
  return Operator::diagonal(std::move(diag));
}

faddeev::FewBodySplit build_split(const LatticeModel& model) {
  faddeev::FewBodySplit split{build_h0(model), {}};
  for (const auto& pair : combinatorics::enumerate_pairs(model.particles))
    split.potentials.push_back(build_pair_potential(model, pair));
  return split;
}

Operator build_hamiltonian(const LatticeModel& model) {
  Operator h = build_h0(model);
  for (const auto& pair : combinatorics::enumerate_pairs_or_empty(model.particles))
    h = h + build_pair_potential(model, pair);
  return h;
}

std::vector<EigenResult> dense_oracle_spectrum(const LatticeModel& model, std::size_t k) {
  model.validate(static_cast<Index>(blockops::dense_limit()));
  const Operator h = build_hamiltonian(model);
  const auto eig = blockops::dense_symmetric_eigen(h);
  const std::size_t count = std::min<std::size_t>(k, static_cast<std::size_t>(eig.values.size()));
  std::vector<EigenResult> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto col = static_cast<Index>(i);
    Vector v = eig.vectors.col(col);
    const double z = eig.values[col];
    out.push_back(EigenResult{blockops::Complex(z, 0.0), v,
                              blockops::pencil_residual(h, nullptr, z, v), 0, "dense-symmetric"});
  }
  return out;
}

PermutationOperator::PermutationOperator(Permutation perm, std::vector<Index> image)
    : perm_(std::move(perm)), image_(std::move(image)) {}

Vector PermutationOperator::apply(const Vector& f) const {
  require(f.size() == dimension(), "permutation apply: length mismatch");
  Vector out(f.size());
  for (Index x = 0; x < f.size(); ++x) out[image_[static_cast<std::size_t>(x)]] = f[x];
  return out;
}

Vector PermutationOperator::apply_inverse(const Vector& f) const {
  require(f.size() == dimension(), "permutation apply: length mismatch");
  Vector out(f.size());
  for (Index x = 0; x < f.size(); ++x) out[x] = f[image_[static_cast<std::size_t>(x)]];
  return out;
}

blockops::SparseMatrix PermutationOperator::matrix() const {
  const Index d = dimension();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(image_.size());
  for (Index x = 0; x < d; ++x) t.emplace_back(image_[static_cast<std::size_t>(x)], x, 1.0);
  blockops::SparseMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

PermutationOperator build_permutation(const LatticeModel& model, const Permutation& perm) {
  model.validate();
  require(combinatorics::is_permutation(perm, model.particles),
          "permutation does not act on " + std::to_string(model.particles) + " labels");
  const Index d = model.dimension();
  std::vector<Index> image(static_cast<std::size_t>(d));
  std::vector<int> y(static_cast<std::size_t>(model.particles));
  for (Index idx = 0; idx < d; ++idx) {
    const auto x = coordinates(model, idx);
    for (std::size_t i = 0; i < x.size(); ++i) y[static_cast<std::size_t>(perm[i] - 1)] = x[i];
    image[static_cast<std::size_t>(idx)] = config_index(model, y);
  }
  return PermutationOperator(perm, std::move(image));
}

}  // namespace fy::lattice
