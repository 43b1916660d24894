// fy: batch front-end over the few-body toolkit.
//
// Exit codes: 0 success, 1 solver failure, 2 config or usage error,
// 3 theorem or precondition violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "fy/config.hpp"
#include "fy/error.hpp"
#include "fy/hardcore.hpp"
#include "fy/yakubovsky.hpp"

namespace {

using namespace fy;
using blockops::Index;
using blockops::Vector;
using config::OutputFormat;
using config::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitSolver = 1;
constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::TooLarge:
    case ErrorKind::Config:
      return kExitConfig;
    case ErrorKind::PreconditionViolation:
    case ErrorKind::InternalConsistency:
      return kExitViolation;
    default:
      return kExitSolver;
  }
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// One cell of a report row. Doubles carry their own printf format so that the
// table and jsonl renderings stay in step.
struct Cell {
  std::variant<std::string, long long, double, bool> value;
  const char* format = "%.12f";

  Cell(std::string s) : value(std::move(s)) {}
  Cell(const char* s) : value(std::string(s)) {}
  Cell(int v) : value(static_cast<long long>(v)) {}
  Cell(long v) : value(static_cast<long long>(v)) {}
  Cell(long long v) : value(v) {}
  Cell(std::size_t v) : value(static_cast<long long>(v)) {}
  Cell(bool v) : value(v) {}
  Cell(double v, const char* f = "%.12f") : value(v), format(f) {}

  std::string text() const {
    if (auto s = std::get_if<std::string>(&value)) return *s;
    if (auto i = std::get_if<long long>(&value)) return std::to_string(*i);
    if (auto b = std::get_if<bool>(&value)) return *b ? "true" : "false";
    return fmt(format, std::get<double>(value));
  }

  nlohmann::json json() const {
    if (auto s = std::get_if<std::string>(&value)) return *s;
    if (auto i = std::get_if<long long>(&value)) return *i;
    if (auto b = std::get_if<bool>(&value)) return *b;
    const double d = std::get<double>(value);
    if (!std::isfinite(d)) return text();
    // Round-trip through the printed form keeps jsonl and table consistent.
    return std::stod(text());
  }
};

class Report {
 public:
  Report(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}

  void header(const std::string& command, const RunConfig& cfg, bool has_config) {
    if (format_ == OutputFormat::Jsonl) {
      nlohmann::ordered_json j;
      j["record"] = "header";
      j["tool"] = "fy";
      j["version"] = FY_VERSION;
      j["command"] = command;
      j["config"] = has_config ? config::echo(cfg) : std::string();
      out_ << j.dump() << "\n";
      return;
    }
    out_ << "# fy " << FY_VERSION << "\n# command: " << command << "\n";
    if (has_config) {
      out_ << "# config:\n";
      std::istringstream lines(config::echo(cfg));
      for (std::string line; std::getline(lines, line);) out_ << "#   " << line << "\n";
    }
  }

  void table(const std::string& name, const std::vector<std::string>& columns,
             const std::vector<std::vector<Cell>>& rows) {
    if (format_ == OutputFormat::Jsonl) {
      for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["record"] = name;
        for (std::size_t c = 0; c < columns.size(); ++c) j[columns[c]] = row[c].json();
        out_ << j.dump() << "\n";
      }
      return;
    }
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
    std::vector<std::vector<std::string>> text;
    for (const auto& row : rows) {
      text.emplace_back();
      for (std::size_t c = 0; c < columns.size(); ++c) {
        text.back().push_back(row[c].text());
        width[c] = std::max(width[c], text.back().back().size());
      }
    }
    out_ << "\n[" << name << "]\n";
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        out_ << (c ? "  " : "");
        out_ << std::string(width[c] - cells[c].size(), ' ') << cells[c];
      }
      out_ << "\n";
    };
    line(columns);
    for (const auto& t : text) line(t);
  }

  void summary(const std::string& name, const std::vector<std::pair<std::string, Cell>>& kv) {
    if (format_ == OutputFormat::Jsonl) {
      nlohmann::ordered_json j;
      j["record"] = name;
      for (const auto& [k, v] : kv) j[k] = v.json();
      out_ << j.dump() << "\n";
      return;
    }
    out_ << "\n[" << name << "]\n";
    for (const auto& [k, v] : kv) out_ << k << ": " << v.text() << "\n";
  }

 private:
  std::ostream& out_;
  OutputFormat format_;
};

struct Globals {
  std::string config_path;
  std::string output;
  std::string format;
  std::uint64_t seed = 1;
  bool quiet = false;
  std::string dump_matrix;
};

struct Context {
  RunConfig cfg;
  bool has_config = false;
  Globals g;
  std::ofstream file;
  std::ostream* out = &std::cout;

  void warn(const std::string& msg) const {
    if (!g.quiet) std::cerr << "fy: warning: " << msg << "\n";
  }
};

void open_context(Context& ctx) {
  if (!ctx.g.config_path.empty()) {
    ctx.cfg = config::load_config(ctx.g.config_path);
    ctx.has_config = true;
  }
  if (!ctx.g.format.empty()) ctx.cfg.output.format = config::parse_format(ctx.g.format);
  if (!ctx.g.output.empty()) ctx.cfg.output.path = ctx.g.output;
  blockops::set_dense_limit(ctx.cfg.solver.dense_limit);
  if (!ctx.cfg.output.path.empty()) {
    ctx.file.open(ctx.cfg.output.path);
    if (!ctx.file) fail(ErrorKind::Config, "cannot write output file '" + ctx.cfg.output.path + "'");
    ctx.out = &ctx.file;
  }
}

void require_config(const Context& ctx, const std::string& command) {
  if (!ctx.has_config) fail(ErrorKind::Config, command + " requires --config <file>");
}

void require_particles(const RunConfig& cfg, int n, const std::string& command) {
  if (cfg.model.particles != n)
    fail(ErrorKind::Config, command + " needs model.N = " + std::to_string(n) + ", config has " +
                                std::to_string(cfg.model.particles));
}

blockops::ShiftInvertOptions solver_options(const RunConfig& cfg) {
  blockops::ShiftInvertOptions o;
  o.tol = cfg.solver.tol;
  o.max_iter = cfg.solver.max_iter;
  return o;
}

void dump_matrix(const Context& ctx, const blockops::Operator& op) {
  if (ctx.g.dump_matrix.empty()) return;
  if (static_cast<std::size_t>(op.dimension()) > blockops::dense_limit())
    fail(ErrorKind::TooLarge, "--dump-matrix: dimension " + std::to_string(op.dimension()) +
                                  " exceeds the dense limit");
  std::ofstream f(ctx.g.dump_matrix);
  if (!f) fail(ErrorKind::Config, "cannot write matrix file '" + ctx.g.dump_matrix + "'");
  blockops::write_matrix_text(f, op.to_dense());
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

// ---------------------------------------------------------------- commands

int cmd_chains(Context& ctx, int n) {
  Report rep(*ctx.out, ctx.cfg.output.format);
  rep.header("chains", ctx.cfg, ctx.has_config);
  const auto chains = combinatorics::enumerate_chains(n);
  const auto orbits = combinatorics::chain_orbits(n);
  std::vector<std::vector<Cell>> rows;
  for (std::size_t i = 0; i < chains.size(); ++i)
    rows.push_back({i + 1, combinatorics::format(chains[i]),
                    combinatorics::format(chains[i].partition),
                    combinatorics::format(chains[i].pair),
                    combinatorics::to_string(chains[i].partition.kind()), orbits.orbit_of[i]});
  rep.table("chains", {"index", "chain", "partition", "pair", "kind", "orbit"}, rows);
  rep.summary("chains-summary", {{"n", n}, {"chains", chains.size()}, {"orbits", orbits.orbits.size()}});
  return kExitOk;
}

int cmd_yak_pattern(Context& ctx) {
  Report rep(*ctx.out, ctx.cfg.output.format);
  rep.header("yak-pattern", ctx.cfg, ctx.has_config);
  // The pattern depends only on the chain structure: assemble over a 1x1 base.
  faddeev::FewBodySplit unit{blockops::Operator::zero(1), {}};
  for (int i = 0; i < 6; ++i) unit.potentials.push_back(blockops::Operator::identity(1));
  const yakubovsky::YakubovskySystem sys(unit);
  const auto m = yakubovsky::assemble_yakubovsky_operator(sys);
  const auto& chains = sys.chains();

  std::size_t off = 0;
  std::vector<std::string> columns{"row", "chain"};
  for (std::size_t c = 0; c < chains.size(); ++c) columns.push_back(std::to_string(c + 1));
  std::vector<std::vector<Cell>> rows;
  for (std::size_t r = 0; r < chains.size(); ++r) {
    std::vector<Cell> row{r + 1, combinatorics::format(chains[r])};
    for (std::size_t c = 0; c < chains.size(); ++c) {
      std::string cell = ".";
      if (r == c) {
        cell = "D";
      } else if (m.present(r, c)) {
        cell = combinatorics::format(chains[r].pair);
        ++off;
      }
      row.emplace_back(cell);
    }
    rows.push_back(std::move(row));
  }
  rep.table("yak-pattern", columns, rows);
  rep.summary("yak-pattern-summary", {{"chains", chains.size()},
                                      {"diagonal_blocks", chains.size()},
                                      {"offdiagonal_blocks", off}});
  return kExitOk;
}

int cmd_spectrum_check(Context& ctx, std::optional<int> n, std::optional<int> dim,
                       std::optional<std::size_t> seeds, bool hermitian) {
  auto& chk = ctx.cfg.check;
  if (n) chk.n = *n;
  if (dim) chk.dim = *dim;
  if (seeds) chk.seeds = *seeds;
  if (hermitian) chk.hermitian = true;
  if (chk.n < 2) fail(ErrorKind::InvalidInput, "--n must be >= 2");
  if (chk.dim < 1) fail(ErrorKind::InvalidInput, "--dim must be >= 1");
  if (chk.seeds < 1) fail(ErrorKind::InvalidInput, "--seeds must be >= 1");

  Report rep(*ctx.out, ctx.cfg.output.format);
  rep.header("spectrum-check", ctx.cfg, ctx.has_config);
  std::vector<std::vector<Cell>> rows;
  double worst = 0.0;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < chk.seeds; ++i) {
    const std::uint64_t seed = ctx.g.seed + i;
    const auto split = faddeev::random_split(seed, static_cast<std::size_t>(chk.n), chk.dim,
                                             chk.hermitian);
    const auto r = faddeev::spectrum_union_check(split);
    worst = std::max({worst, r.max_matching_distance, r.reverse_distance});
    if (!r.passed) ++failed;
    rows.push_back({static_cast<long long>(seed), Cell(r.max_matching_distance, "%.3e"),
                    Cell(r.reverse_distance, "%.3e"), r.passed ? "PASS" : "FAIL"});
  }
  rep.table("spectrum-check", {"seed", "max_match", "reverse", "verdict"}, rows);
  rep.summary("spectrum-check-summary",
              {{"n", chk.n},
               {"dim", chk.dim},
               {"hermitian", chk.hermitian},
               {"instances", chk.seeds},
               {"failed", failed},
               {"worst_distance", Cell(worst, "%.3e")},
               {"tolerance", Cell(1e-8, "%.1e")},
               {"verdict", failed ? "FAIL" : "PASS"}});
  return failed ? kExitViolation : kExitOk;
}

int cmd_oracle(Context& ctx, std::size_t k) {
  require_config(ctx, "oracle");
  Report rep(*ctx.out, ctx.cfg.output.format);
  rep.header("oracle", ctx.cfg, ctx.has_config);
  const auto states = lattice::dense_oracle_spectrum(ctx.cfg.model, k);
  std::vector<std::vector<Cell>> rows;
  for (std::size_t i = 0; i < states.size(); ++i)
    rows.push_back({i, Cell(states[i].eigenvalue.real()), Cell(states[i].residual_norm, "%.3e")});
  rep.table("oracle", {"level", "eigenvalue", "residual"}, rows);
  return kExitOk;
}

int cmd_solve3(Context& ctx) {
  require_config(ctx, "solve3");
  require_particles(ctx.cfg, 3, "solve3");
  const auto split = lattice::build_split(ctx.cfg.model);
  const auto flat = blockops::flatten(faddeev::assemble_faddeev_operator(split));
  dump_matrix(ctx, flat);
  const auto res =
      blockops::shift_invert_eigenpair(flat, nullptr, ctx.cfg.solver.target, solver_options(ctx.cfg));
  const Index d = split.dimension();
  faddeev::FaddeevComponents comps;
  comps.z = res.eigenvalue.real();
  for (std::size_t a = 0; a < split.channels(); ++a)
    comps.components.push_back(res.eigenvector.segment(static_cast<Index>(a) * d, d));
  const Vector psi = faddeev::component_sum(comps.components);
  const double psi_norm = psi.norm();

  Report rep(*ctx.out, ctx.cfg.output.format);
  rep.header("solve3", ctx.cfg, ctx.has_config);
  const auto fres = faddeev::faddeev_residual(split, comps);
  std::vector<std::vector<Cell>> rows;
  const auto pairs = combinatorics::enumerate_pairs(3);
  for (std::size_t a = 0; a < pairs.size(); ++a)
    rows.push_back({combinatorics::format(pairs[a]),
                    Cell(comps.components[a].norm() / std::max(psi_norm, 1e-300), "%.10f"),
                    Cell(fres[a], "%.3e")});
  rep.table("components", {"pair", "norm_over_psi", "residual"}, rows);

  const bool spurious = psi_norm <= 1e-8 * res.eigenvector.norm();
  const double schr = spurious ? INFINITY
                               : blockops::pencil_residual(split.total(), nullptr, comps.z, psi);
  rep.summary("solve3", {{"eigenvalue", Cell(comps.z)},
                         {"operator_residual", Cell(res.residual_norm, "%.3e")},
                         {"schrodinger_residual", Cell(schr, "%.3e")},
                         {"iterations", res.iterations},
                         {"spurious", spurious}});
  if (spurious) {
    ctx.warn("eigenpair near target has vanishing component sum (spurious root)");
    return kExitSolver;
  }
  return kExitOk;
}

int cmd_solve4(Context& ctx) {
  require_config(ctx, "solve4");
  require_particles(ctx.cfg, 4, "solve4");
  const yakubovsky::YakubovskySystem sys(lattice::build_split(ctx.cfg.model));
  if (!ctx.g.dump_matrix.empty())
    dump_matrix(ctx, blockops::flatten(yakubovsky::assemble_yakubovsky_operator(sys)));
  yakubovsky::FourBodyOptions opts;
  opts.solver = solver_options(ctx.cfg);
  const auto sol = yakubovsky::solve_fourbody_ground_state(sys, ctx.cfg.solver.target, opts);
  for (const auto& w : sol.warnings) ctx.warn(w);

  Report rep(*ctx.out, ctx.cfg.output.format);
  rep.header("solve4", ctx.cfg, ctx.has_config);
  const auto residuals = yakubovsky::yakubovsky_residual(sys, sol.components);
  const double psi_norm = std::max(sol.psi.norm(), 1e-300);
  std::vector<std::vector<Cell>> rows;
  for (std::size_t c = 0; c < sys.chain_count(); ++c)
    rows.push_back({c + 1, combinatorics::format(sys.chains()[c]),
                    Cell(sol.components.components[c].norm() / psi_norm, "%.10f"),
                    Cell(residuals[c], "%.3e")});
  rep.table("chains", {"index", "chain", "norm_over_psi", "residual"}, rows);

  double chain_sum = INFINITY;
  bool spurious = !std::isfinite(sol.schrodinger_residual);
  if (!spurious) {
    const auto fc = faddeev::faddeev_components(sys.split(), sol.components.z, sol.psi, false);
    chain_sum = max_of(yakubovsky::chain_sum_consistency(sys, sol.components, fc).per_pair);
  }
  rep.summary("solve4", {{"eigenvalue", Cell(sol.components.z)},
                         {"operator_residual", Cell(sol.result.residual_norm, "%.3e")},
                         {"schrodinger_residual", Cell(sol.schrodinger_residual, "%.3e")},
                         {"max_chain_residual", Cell(max_of(residuals), "%.3e")},
                         {"max_chain_sum_defect", Cell(chain_sum, "%.3e")},
                         {"iterations", sol.result.iterations},
                         {"spurious", spurious}});
  return spurious ? kExitSolver : kExitOk;
}

struct CoreRun {
  int core = 0;
  std::optional<hardcore::HardcoreSolution> sol;
  double oracle = NAN;
  bool empty = false;
  std::string error;
  ErrorKind kind = ErrorKind::SolverFailure;
};

int cmd_hardcore3(Context& ctx, std::optional<int> core, std::vector<int> sweep, bool surface_only) {
  require_config(ctx, "hardcore3");
  require_particles(ctx.cfg, 3, "hardcore3");
  if (core && sweep.empty()) ctx.cfg.model.core_radius = *core;
  if (sweep.empty()) {
    if (core) sweep.push_back(*core);
    else if (ctx.cfg.model.core_radius) sweep.push_back(*ctx.cfg.model.core_radius);
    else fail(ErrorKind::Config, "hardcore3 needs --core, --sweep or model.core_radius");
  }
  std::sort(sweep.begin(), sweep.end());
  sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
  for (int c : sweep)
    if (c < 0) fail(ErrorKind::InvalidInput, "core radius must be >= 0");

  const double target = ctx.cfg.solver.target;
  std::vector<CoreRun> runs(sweep.size());
  auto work = [&](std::size_t i) {
    CoreRun& run = runs[i];
    run.core = sweep[i];
    auto model = ctx.cfg.model;
    model.core_radius = run.core;
    try {
      const auto mask = hardcore::core_mask(model);
      if (std::all_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
        run.empty = true;
        return;
      }
      hardcore::HardcoreOptions opts;
      opts.solver = solver_options(ctx.cfg);
      opts.solver.block_size = 8;
      opts.pencil.surface_only = surface_only;
      run.sol = hardcore::solve_hardcore3(model, target, opts);
      const auto ro = hardcore::restricted_oracle(model, model.dimension());
      double best = INFINITY;
      for (const auto& s : ro.states)
        if (std::abs(s.eigenvalue.real() - target) < best) {
          best = std::abs(s.eigenvalue.real() - target);
          run.oracle = s.eigenvalue.real();
        }
    } catch (const Error& e) {
      run.error = e.what();
      run.kind = e.kind();
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(sweep.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < sweep.size();) work(i);
    });
  for (auto& t : pool) t.join();

  if (!ctx.g.dump_matrix.empty()) {
    auto model = ctx.cfg.model;
    model.core_radius = sweep.front();
    hardcore::PencilOptions po{surface_only};
    dump_matrix(ctx, blockops::flatten(hardcore::assemble_hardcore3_pencil(model, po).a));
  }

  Report rep(*ctx.out, ctx.cfg.output.format);
  rep.header("hardcore3", ctx.cfg, ctx.has_config);
  std::vector<std::vector<Cell>> rows;
  int code = kExitOk;
  bool monotone = true;
  double prev = -INFINITY;
  for (const auto& run : runs) {
    if (run.empty) {
      rows.push_back({run.core, "inf", "inf", "", "", "", "EMPTY"});
      prev = INFINITY;
      continue;
    }
    if (!run.sol) {
      ctx.warn("core " + std::to_string(run.core) + ": " + run.error);
      rows.push_back({run.core, "error", "", "", "", "", to_string(run.kind)});
      code = std::max(code, exit_code(run.kind));
      continue;
    }
    for (const auto& w : run.sol->warnings) ctx.warn("core " + std::to_string(run.core) + ": " + w);
    const auto& st = run.sol->states.front();
    const double z = st.pencil.eigenvalue.real();
    const double diff = z - run.oracle;
    const bool ok = std::abs(diff) <= 1e-8 && st.core_max <= 1e-10;
    if (!ok && !surface_only) code = std::max(code, kExitViolation);
    if (z < prev - 1e-8) monotone = false;
    prev = z;
    rows.push_back({run.core, Cell(z), Cell(run.oracle), Cell(diff, "%.3e"),
                    Cell(st.core_max, "%.3e"), Cell(st.restricted_residual, "%.3e"),
                    ok ? "PASS" : (surface_only ? "MEASURED" : "FAIL")});
  }
  rep.table("hardcore3",
            {"core", "pencil_eigenvalue", "restricted_eigenvalue", "difference", "max_core_psi",
             "restricted_residual", "verdict"},
            rows);
  rep.summary("hardcore3-summary", {{"target", Cell(target)},
                                    {"surface_only", surface_only},
                                    {"monotone_in_core", monotone}});
  return code;
}

int cmd_hardcore4_check(Context& ctx, std::optional<int> core) {
  require_config(ctx, "hardcore4-check");
  require_particles(ctx.cfg, 4, "hardcore4-check");
  if (core) ctx.cfg.model.core_radius = *core;
  const auto& model = ctx.cfg.model;

  Report rep(*ctx.out, ctx.cfg.output.format);
  const yakubovsky::YakubovskySystem sys(lattice::build_split(model));
  const auto constraints = hardcore::assemble_hardcore4_constraints(sys, model);
  hardcore::Hardcore4Defect defect;
  double z = NAN;
  std::string pinv;
  if (constraints.constraint_sites() == 0) {
    yakubovsky::YakubovskyComponents zero;
    zero.components.assign(sys.chain_count(), Vector::Zero(sys.dimension()));
    defect = constraints.evaluate(zero);
  } else {
    const auto ro = hardcore::restricted_oracle(model, 1);
    if (ro.states.empty()) {
      ctx.warn("restricted space is empty; evaluating zero components");
      yakubovsky::YakubovskyComponents zero;
      zero.components.assign(sys.chain_count(), Vector::Zero(sys.dimension()));
      defect = constraints.evaluate(zero);
    } else {
      z = ro.states.front().eigenvalue.real();
      const auto comps = hardcore::hardcore4_components(sys, z, ro.states.front().eigenvector);
      for (int ch : comps.pseudo_inverse_channels)
        pinv += (pinv.empty() ? "" : ",") + std::to_string(ch);
      defect = constraints.evaluate(comps.chains);
    }
  }
  rep.header("hardcore4-check", ctx.cfg, ctx.has_config);
  rep.summary("hardcore4-check",
              {{"core", model.core_radius ? std::to_string(*model.core_radius) : "none"},
               {"restricted_ground", Cell(z)},
               {"constraint_sites", constraints.constraint_sites()},
               {"pseudo_inverse_channels", pinv.empty() ? std::string("none") : pinv},
               {"component_scale", Cell(defect.component_scale, "%.6e")},
               {"max_defect", Cell(defect.max_defect, "%.6e")},
               {"max_defect_excluding_self", Cell(defect.max_defect_excluding_self, "%.6e")},
               {"finite", std::isfinite(defect.max_defect)}});
  return std::isfinite(defect.max_defect) ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faddeev and Yakubovsky component toolkit for few-body lattice models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("fy ") + FY_VERSION);
  app.fallthrough();

  Context ctx;
  app.add_option("--config", ctx.g.config_path, "YAML run configuration");
  app.add_option("--output", ctx.g.output, "write results to this file instead of stdout");
  app.add_option("--format", ctx.g.format, "table or jsonl")->check(CLI::IsMember({"table", "jsonl"}));
  app.add_option("--seed", ctx.g.seed, "base seed for seeded instances");
  app.add_flag("--quiet", ctx.g.quiet, "suppress warnings on stderr");
  app.add_option("--dump-matrix", ctx.g.dump_matrix, "write the assembled matrix as row-major text");

  int chain_n = 4;
  auto* chains = app.add_subcommand("chains", "list chains of two-cluster partitions");
  chains->add_option("--n", chain_n, "particle count (3 or 4)")->check(CLI::Range(3, 4));

  auto* pattern = app.add_subcommand("yak-pattern", "18x18 block sparsity of the four-body operator");

  std::optional<int> sc_n, sc_dim;
  std::optional<std::size_t> sc_seeds;
  bool sc_herm = false;
  auto* spectrum = app.add_subcommand("spectrum-check", "seeded check of sigma(H_F) = sigma(H) u sigma(H0)");
  spectrum->add_option("--n", sc_n, "number of potentials");
  spectrum->add_option("--dim", sc_dim, "base dimension");
  spectrum->add_option("--seeds", sc_seeds, "number of seeded instances");
  spectrum->add_flag("--hermitian", sc_herm, "symmetric instances");

  std::size_t oracle_k = 5;
  auto* oracle = app.add_subcommand("oracle", "lowest eigenvalues by dense diagonalization");
  oracle->add_option("--k", oracle_k, "number of levels");

  auto* solve3 = app.add_subcommand("solve3", "three-body eigenpair of the Faddeev operator");
  auto* solve4 = app.add_subcommand("solve4", "four-body eigenpair of the 18-chain operator");

  std::optional<int> hc_core;
  std::vector<int> hc_sweep;
  bool hc_surface = false;
  auto* hc3 = app.add_subcommand("hardcore3", "three-body hard-core pencil against the restricted oracle");
  hc3->add_option("--core", hc_core, "core radius");
  hc3->add_option("--sweep", hc_sweep, "comma-separated core radii")->delimiter(',');
  hc3->add_flag("--surface-only", hc_surface, "constrain only the core surface (measured)");

  std::optional<int> hc4_core;
  auto* hc4 = app.add_subcommand("hardcore4-check", "four-body hard-core chain constraint defect");
  hc4->add_option("--core", hc4_core, "core radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    open_context(ctx);
    int rc = kExitOk;
    if (*chains) rc = cmd_chains(ctx, chain_n);
    else if (*pattern) rc = cmd_yak_pattern(ctx);
    else if (*spectrum) rc = cmd_spectrum_check(ctx, sc_n, sc_dim, sc_seeds, sc_herm);
    else if (*oracle) rc = cmd_oracle(ctx, oracle_k);
    else if (*solve3) rc = cmd_solve3(ctx);
    else if (*solve4) rc = cmd_solve4(ctx);
    else if (*hc3) rc = cmd_hardcore3(ctx, hc_core, hc_sweep, hc_surface);
    else if (*hc4) rc = cmd_hardcore4_check(ctx, hc4_core);
    ctx.out->flush();
    return rc;
  } catch (const Error& e) {
    std::cerr << "fy: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "fy: internal error: " << e.what() << "\n";
    return kExitSolver;
  }
}
