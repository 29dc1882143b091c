// wickbridge: kernels, propagation, sampling, partition functions and the
// verification suite from the command line.
//
// Exit codes: 0 success, 1 numerical or verification failure, 2 usage error.

#include "wick/closed_form.hpp"
#include "wick/errors.hpp"
#include "wick/lattice.hpp"
#include "wick/master.hpp"
#include "wick/observables.hpp"
#include "wick/spec_io.hpp"
#include "wick/splitstep.hpp"
#include "wick/stochastic.hpp"
#include "wick/verification.hpp"
#include "wick/wick_maps.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

namespace fs = std::filesystem;
using namespace wick;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Times typed on the command line carry about nine significant digits, so the
// kernel command treats |sin(w t)| below this as a caustic.
constexpr double kCommandLineCausticTolerance = 1e-8;

fs::path resolve_output(const std::string& out) {
  fs::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("WICKBRIDGE_OUT_DIR"); dir && *dir) p = fs::path(dir) / p;
  }
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

/// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& out) {
    if (!out.empty()) {
      path_ = resolve_output(out);
      file_ = std::make_unique<std::ofstream>(path_);
      if (!*file_) throw std::runtime_error("cannot open output file " + path_.string());
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  fs::path path_;
  std::unique_ptr<std::ofstream> file_;
};

Json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open spec file " + path);
  try {
    return Json::parse(is);
  } catch (const Json::exception& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
}

Grid1D parse_grid(const std::string& text) {
  std::istringstream is(text);
  double lo = 0, hi = 0;
  long long n = 0;
  char c1 = 0, c2 = 0;
  if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ',' || c2 != ',') {
    throw UsageError("--grid expects XMIN,XMAX,N, got '" + text + "'");
  }
  try {
    return Grid1D(lo, hi, static_cast<Eigen::Index>(n));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
}

std::vector<double> parse_numbers(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": not a number list: '" + text + "'");
    }
  }
  return out;
}

/// Generator for lattice / Crank-Nicolson / sampling: generator documents as
/// given, Hamiltonians through their attached Wick mode (SWR by default).
GeneratorSpec generator_from(const Json& doc) {
  const SystemDocument sys = parse_system(doc);
  if (const auto* g = std::get_if<GeneratorSpec>(&sys)) return *g;
  if (const auto* h = std::get_if<HamiltonianSpec>(&sys)) {
    return gwr_map(*h, attached_wick_mode(doc).value_or(WickMode{SwrMicro{}}));
  }
  throw UsageError("this command needs a hamiltonian or generator document");
}

RealField initial_density(const Grid1D& grid, const std::string& init) {
  const auto colon = init.find(':');
  const std::string kind = init.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : parse_numbers(init.substr(colon + 1), "--init");
  if (kind == "delta" && args.size() == 1) return delta_on_grid(grid, args[0]);
  if (kind == "mollified" && args.size() == 1) return mollify_delta(grid, args[0]);
  if (kind == "gaussian" && args.size() == 2) return gaussian_field(grid, args[0], args[1]);
  throw UsageError("--init expects delta:X0, mollified:X0 or gaussian:MEAN,SIGMA");
}

ComplexField initial_amplitude(const Grid1D& grid, const std::string& init, double mu_h) {
  const auto colon = init.find(':');
  const std::string kind = init.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : parse_numbers(init.substr(colon + 1), "--init");
  if (kind == "packet" && args.size() == 3) {
    return ComplexField::sample(grid, [&](double x) { return free_packet(x, 0.0, mu_h, args[1], args[0], args[2]); });
  }
  throw UsageError("--engine splitstep expects --init packet:X0,SIGMA,K0");
}

// ---------------------------------------------------------------------------

struct KernelArgs {
  std::string spec, grid = "-10,10,401", out;
  double xa = 0.0;
  std::optional<double> t, tau, omega;
  bool continued = false;
};

int cmd_kernel(const KernelArgs& a) {
  const Json doc = read_json_file(a.spec);
  SystemDocument sys = parse_system(doc);
  if (const auto* h = std::get_if<HamiltonianSpec>(&sys)) {
    auto q = classify(*h);
    if (!q) throw UsageError("hamiltonian has no closed-form kernel");
    sys = *q;
  } else if (const auto* g = std::get_if<GeneratorSpec>(&sys)) {
    auto e = classify(*g);
    if (!e) throw UsageError("generator has no closed-form kernel");
    sys = *e;
  }
  if (a.omega) {
    if (auto* q = std::get_if<QuantumKernelSpec>(&sys); q && std::holds_alternative<HarmonicOscillator>(*q)) {
      std::get<HarmonicOscillator>(*q).omega = *a.omega;
    } else if (auto* e = std::get_if<EuclideanKernelSpec>(&sys); e && std::holds_alternative<HarmonicEuclid>(*e)) {
      std::get<HarmonicEuclid>(*e).omega = *a.omega;
    } else {
      throw UsageError("--omega applies only to harmonic specs");
    }
  }
  const Grid1D grid = parse_grid(a.grid);
  Sink sink(a.out);
  std::ostream& os = sink.stream();
  os << std::setprecision(17);

  if (const auto* q = std::get_if<QuantumKernelSpec>(&sys)) {
    validate(*q);
    if (a.continued) {
      if (!a.tau) throw UsageError("--continued needs --tau");
      const RealField k = RealField::sample(
          grid, [&](double x) { return quantum_kernel(*q, x, a.xa, Complex(0.0, -*a.tau)).real(); });
      write_csv(os, k);
      return kOk;
    }
    if (!a.t) throw UsageError("quantum kernel needs --t (or --continued --tau)");
    if (const auto* h = std::get_if<HarmonicOscillator>(q);
        h && std::abs(std::sin(h->omega * *a.t)) < kCommandLineCausticTolerance) {
      throw CausticError("caustic: sin(omega t) vanishes at omega t = " + std::to_string(h->omega * *a.t));
    }
    write_csv(os, ComplexField::sample(grid, [&](double x) { return quantum_kernel(*q, x, a.xa, Complex(*a.t)); }));
    return kOk;
  }
  const auto& e = std::get<EuclideanKernelSpec>(sys);
  validate(e);
  if (a.continued) throw UsageError("--continued applies to quantum specs");
  const std::optional<double> t = a.t ? a.t : a.tau;
  if (!t) throw UsageError("euclidean kernel needs --t");
  write_csv(os, RealField::sample(grid, [&](double x) { return euclid_kernel(e, x, a.xa, *t); }));
  return kOk;
}

struct PropagateArgs {
  std::string spec, engine = "lattice", init, grid = "-10,10,401", out, kernel_csv, drift_rule = "jacobian";
  double t0 = 0.0, t1 = 1.0;
  long long steps = 100;
  long long snapshots = 0;
};

int cmd_propagate(const PropagateArgs& a) {
  const Json doc = read_json_file(a.spec);
  const Grid1D grid = parse_grid(a.grid);
  if (a.steps < 1) throw UsageError("--steps must be positive");
  const TimeSlicing slicing = [&] {
    try {
      return TimeSlicing::with_steps(a.t0, a.t1, a.steps);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  Sink sink(a.out);
  std::ostream& os = sink.stream();
  os << std::setprecision(17);

  if (a.engine == "splitstep") {
    const SystemDocument sys = parse_system(doc);
    const auto* h = std::get_if<HamiltonianSpec>(&sys);
    if (!h) throw UsageError("--engine splitstep needs a hamiltonian document");
    const ComplexField init = initial_amplitude(grid, a.init, h->mu_h);
    os << "t,x,re,im\n";
    auto dump = [&](double t, const ComplexField& psi) {
      for (Eigen::Index i = 0; i < grid.size(); ++i) {
        os << t << ',' << grid.node(i) << ',' << psi[i].real() << ',' << psi[i].imag() << '\n';
      }
    };
    dump(a.t0, init);
    const ComplexField last = splitstep_quantum_propagate(
        init, *h, slicing, SplittingOrder::kStrang, [&](Eigen::Index n, const ComplexField& psi) {
          if (a.snapshots > 0 && n % a.snapshots == 0 && n != slicing.steps()) dump(slicing.time(n), psi);
        });
    dump(a.t1, last);
    return kOk;
  }
  if (a.engine != "lattice" && a.engine != "cn") throw UsageError("--engine must be lattice, cn or splitstep");

  const SystemDocument sys = parse_system(doc);
  if (!std::holds_alternative<GeneratorSpec>(sys) && !std::holds_alternative<HamiltonianSpec>(sys)) {
    throw UsageError("--engine " + a.engine + " needs a generator or hamiltonian document");
  }
  const GeneratorSpec g = generator_from(doc);
  const RealField init = initial_density(grid, a.init);
  os << "t,x,value\n";
  auto dump = [&](double t, const RealField& p) {
    for (Eigen::Index i = 0; i < grid.size(); ++i) os << t << ',' << grid.node(i) << ',' << p[i] << '\n';
  };
  dump(a.t0, init);

  if (a.engine == "cn") {
    const double dt = slicing.dt();
    const CrankNicolsonResult r = evolve_crank_nicolson(
        init, fokker_planck_for(g), a.t0, a.t1, SolverConfig{dt},
        [&](Eigen::Index n, double t, const RealField& p) {
          if (n != slicing.steps()) dump(t, p);
        },
        a.snapshots);
    dump(a.t1, r.density);
    return kOk;
  }

  DriftRule rule = DriftRule::kJacobian;
  if (a.drift_rule == "literal") rule = DriftRule::kLiteral;
  else if (a.drift_rule != "jacobian") throw UsageError("--drift-rule must be jacobian or literal");
  const TransferMatrix T = build_transfer_matrix(grid, slicing.dt(), g, a.t0, rule);
  Eigen::VectorXd p = init.values();
  for (Eigen::Index n = 1; n <= slicing.steps(); ++n) {
    p = g.time_dependent() ? Eigen::VectorXd(build_transfer_matrix(grid, slicing.dt(), g, slicing.time(n), rule).entries * p)
                           : Eigen::VectorXd(T.entries * p);
    if (a.snapshots > 0 && n % a.snapshots == 0 && n != slicing.steps()) dump(slicing.time(n), RealField(grid, p));
  }
  dump(a.t1, RealField(grid, p));
  if (!a.kernel_csv.empty()) {
    std::ofstream ks(resolve_output(a.kernel_csv));
    if (!ks) throw std::runtime_error("cannot open " + a.kernel_csv);
    write_kernel_csv(ks, euclid_kernel_matrix(g, grid, slicing, rule));
  }
  return kOk;
}

struct SampleArgs {
  std::string spec, out, format = "json", record;
  std::optional<std::uint64_t> seed;
  double y0 = 0.0, t = 1.0, xa = 0.0, xb = 0.0, tau = 1.0;
  long long steps = 1000, paths = 10000, samples = 10000;
};

int cmd_langevin(const SampleArgs& a) {
  const GeneratorSpec g = generator_from(read_json_file(a.spec));
  const auto* d = std::get_if<DriftForm>(&g.form);
  if (!d) throw UnsupportedSpecError("langevin sampling needs a drift-form generator");
  if (a.steps < 1 || a.paths < 2) throw UsageError("--steps must be positive and --paths at least 2");
  const LangevinSpec spec{d->Vprime.scaled(-1.0 / d->m_gamma), Potential::polynomial({1.0}), g.diffusion()};
  std::vector<Eigen::Index> record;
  if (!a.record.empty()) {
    for (double s : parse_numbers(a.record, "--record")) record.push_back(static_cast<Eigen::Index>(s));
  } else if (a.format == "json") {
    record = {a.steps};
  }
  const PathEnsemble e = simulate_ensemble(spec, a.y0, a.t, a.steps, a.paths, *a.seed, record);
  Sink sink(a.out);
  if (a.format == "csv") {
    write_ensemble_csv(sink.stream(), e);
  } else if (a.format == "json") {
    sink.stream() << ensemble_summary_json(e).dump(2) << '\n';
  } else {
    throw UsageError("--format must be json or csv");
  }
  return kOk;
}

int cmd_feynman_kac(const SampleArgs& a) {
  const GeneratorSpec g = generator_from(read_json_file(a.spec));
  if (a.steps < 1 || a.samples < 1) throw UsageError("--steps and --samples must be positive");
  const FKEstimate est = feynman_kac_estimate(a.xa, a.xb, a.tau, g, a.steps, a.samples, *a.seed);
  Sink sink(a.out);
  sink.stream() << std::setprecision(17) << to_json(est).dump(2) << '\n';
  return kOk;
}

struct PartitionArgs {
  double mu = 1.0, omega = 1.0, beta_hbar = 2.0;
  std::string method = "closed", grid = "-10,10,1001", steps = "25,50,100,200", out;
};

int cmd_partition(const PartitionArgs& a) {
  const Grid1D grid = parse_grid(a.grid);
  const double exact = harmonic_partition_exact(a.omega, a.beta_hbar);
  Json j{{"mu", a.mu}, {"omega", a.omega}, {"beta_hbar", a.beta_hbar}, {"exact", exact}, {"method", a.method}};
  if (a.method == "closed") {
    j["Z"] = partition_function(a.mu, a.omega, a.beta_hbar, grid);
  } else if (a.method == "lattice") {
    std::vector<Eigen::Index> steps;
    for (double s : parse_numbers(a.steps, "--steps")) {
      if (s < 1) throw UsageError("--steps entries must be positive");
      steps.push_back(static_cast<Eigen::Index>(s));
    }
    const auto rows = partition_refinement(a.mu, a.omega, a.beta_hbar, grid, steps);
    j["Z"] = rows.back().value;
    j["refinement"] = to_json(rows);
  } else {
    throw UsageError("--method must be closed or lattice");
  }
  Sink sink(a.out);
  sink.stream() << std::setprecision(17) << j.dump(2) << '\n';
  return kOk;
}

struct VerifyArgs {
  std::vector<std::string> scenarios;
  bool all = false, list = false;
  std::string out, artifacts;
  std::optional<std::uint64_t> seed;
};

int cmd_verify(const VerifyArgs& a) {
  const Registry& reg = default_registry();
  Sink sink(a.out);
  std::ostream& os = sink.stream();
  if (a.list) {
    for (const auto& name : reg.names()) os << describe(reg.find(name)).dump() << '\n';
    return kOk;
  }
  if (a.all == !a.scenarios.empty()) throw UsageError("verify needs exactly one of --scenario or --all");
  for (const auto& name : a.scenarios) reg.find(name);

  Overrides o;
  o.seed = a.seed;
  if (!a.artifacts.empty()) {
    o.artifact_dir = resolve_output(a.artifacts);
  } else if (const char* dir = std::getenv("WICKBRIDGE_OUT_DIR"); dir && *dir) {
    o.artifact_dir = fs::path(dir);
  }
  const std::vector<std::string> names = a.all ? reg.names() : a.scenarios;
  bool ok = true;
  for (const auto& name : names) {
    const VerificationReport r = reg.run(name, o);
    ok = ok && r.passed;
    os << to_json(r).dump() << '\n' << std::flush;
  }
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum and diffusion kernels related by Wick rotation"};
  app.require_subcommand(1);
  int status = kOk;

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "Closed-form kernel over a grid for fixed x_a");
  kernel->add_option("--spec", ka.spec, "JSON system document")->required();
  kernel->add_option("--xa", ka.xa, "Start point x_a");
  kernel->add_option("--t", ka.t, "Real time");
  kernel->add_option("--tau", ka.tau, "Imaginary-time extent for --continued");
  kernel->add_flag("--continued", ka.continued, "Evaluate a quantum kernel at t = -i tau");
  kernel->add_option("--omega", ka.omega, "Override the oscillator frequency");
  kernel->add_option("--grid", ka.grid, "XMIN,XMAX,N");
  kernel->add_option("--out", ka.out, "Output CSV (stdout if omitted)");
  kernel->callback([&] { status = cmd_kernel(ka); });

  PropagateArgs pa;
  auto* propagate = app.add_subcommand("propagate", "Evolve an initial field");
  propagate->add_option("--spec", pa.spec, "JSON system document")->required();
  propagate->add_option("--engine", pa.engine, "lattice | cn | splitstep");
  propagate->add_option("--init", pa.init,
                        "delta:X0 | mollified:X0 | gaussian:MEAN,SIGMA | packet:X0,SIGMA,K0 (splitstep)")
      ->required();
  propagate->add_option("--grid", pa.grid, "XMIN,XMAX,N");
  propagate->add_option("--t0", pa.t0, "Start time");
  propagate->add_option("--t1", pa.t1, "End time");
  propagate->add_option("--steps", pa.steps, "Number of time steps");
  propagate->add_option("--snapshots", pa.snapshots, "Write every k-th step as well");
  propagate->add_option("--drift-rule", pa.drift_rule, "jacobian | literal (lattice, drift form)");
  propagate->add_option("--kernel-csv", pa.kernel_csv, "Also write the lattice kernel matrix (lattice engine)");
  propagate->add_option("--out", pa.out, "Output CSV (stdout if omitted)");
  propagate->callback([&] { status = cmd_propagate(pa); });

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Monte Carlo sampling");
  sample->require_subcommand(1);
  auto* langevin = sample->add_subcommand("langevin", "Euler-Maruyama ensemble of a drift-form generator");
  langevin->add_option("--spec", sa.spec, "JSON generator or hamiltonian document")->required();
  langevin->add_option("--seed", sa.seed, "RNG seed")->required();
  langevin->add_option("--y0", sa.y0, "Start point");
  langevin->add_option("--t", sa.t, "Final time");
  langevin->add_option("--steps", sa.steps, "Time steps");
  langevin->add_option("--paths", sa.paths, "Number of paths");
  langevin->add_option("--record", sa.record, "Comma-separated step indices to keep");
  langevin->add_option("--format", sa.format, "json (moments) | csv (path_id,step,x)");
  langevin->add_option("--out", sa.out, "Output file (stdout if omitted)");
  langevin->callback([&] { status = cmd_langevin(sa); });
  auto* fk = sample->add_subcommand("feynman-kac", "Bridge-sampled Euclidean kernel estimate");
  fk->add_option("--spec", sa.spec, "JSON generator or hamiltonian document")->required();
  fk->add_option("--seed", sa.seed, "RNG seed")->required();
  fk->add_option("--xa", sa.xa, "Start point");
  fk->add_option("--xb", sa.xb, "End point");
  fk->add_option("--tau", sa.tau, "Euclidean time");
  fk->add_option("--steps", sa.steps, "Time slices");
  fk->add_option("--samples", sa.samples, "Bridge samples");
  fk->add_option("--out", sa.out, "Output JSON (stdout if omitted)");
  fk->callback([&] { status = cmd_feynman_kac(sa); });

  PartitionArgs za;
  auto* partition = app.add_subcommand("partition", "Harmonic partition function");
  partition->add_option("--mu", za.mu, "mu");
  partition->add_option("--omega", za.omega, "omega");
  partition->add_option("--beta-hbar", za.beta_hbar, "Imaginary-time extent beta hbar");
  partition->add_option("--method", za.method, "closed | lattice");
  partition->add_option("--grid", za.grid, "XMIN,XMAX,N");
  partition->add_option("--steps", za.steps, "Slice counts for the lattice refinement table");
  partition->add_option("--out", za.out, "Output JSON (stdout if omitted)");
  partition->callback([&] { status = cmd_partition(za); });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run verification scenarios");
  verify->add_option("--scenario", va.scenarios, "Scenario name (repeatable)");
  verify->add_flag("--all", va.all, "Run every scenario");
  verify->add_flag("--list", va.list, "List scenarios");
  verify->add_option("--seed", va.seed, "Override the published seed");
  verify->add_option("--artifacts", va.artifacts, "Directory for CSV/JSON artifacts");
  verify->add_option("--out", va.out, "Output JSON lines (stdout if omitted)");
  verify->callback([&] { status = cmd_verify(va); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const CausticError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return status;
}
