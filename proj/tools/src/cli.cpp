#include "resolvent_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "resolvent/conductivity.hpp"
#include "resolvent/dense.hpp"
#include "resolvent/fourier.hpp"
#include "resolvent/phase_map.hpp"
#include "resolvent/schemes.hpp"
#include "resolvent/spectra.hpp"
#include "resolvent/trace_io.hpp"

namespace resolvent::cli {

using nlohmann::json;

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["z_re"] = cfg.z_re;
  j["z_im"] = cfg.z_im;
  j["interval"] = cfg.interval ? json::array({(*cfg.interval)[0], (*cfg.interval)[1]}) : json(nullptr);
  j["scheme"] = cfg.scheme;
  j["tol"] = cfg.tol;
  j["max_iter"] = cfg.max_iter;
  j["seed"] = cfg.seed;
  j["n"] = cfg.n;
  j["rank_q"] = cfg.rank_q;
  j["rank_gamma"] = cfg.rank_gamma;
  j["spectrum"] = cfg.spectrum;
  j["instance"] = cfg.instance;
  j["grid"] = cfg.grid;
  j["phase_file"] = cfg.phase_file;
  j["generator"] = cfg.generator;
  j["sigma_re"] = cfg.sigma_re;
  j["sigma_im"] = cfg.sigma_im;
  j["e_bar"] = cfg.e_bar;
  j["full_tensor"] = cfg.full_tensor;
  j["iters"] = cfg.iters;
  j["trace_path"] = cfg.trace_path;
  j["output_path"] = cfg.output_path;
  j["text"] = cfg.text;
  return j.dump(2);
}

namespace {

template <class T>
void take(const json& j, const char* key, T& field) {
  if (j.contains(key)) j.at(key).get_to(field);
}

}  // namespace

RunConfig apply_config_json(const std::string& text, RunConfig base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  try {
    take(j, "command", base.command);
    take(j, "z_re", base.z_re);
    take(j, "z_im", base.z_im);
    if (j.contains("interval")) {
      const json& iv = j.at("interval");
      if (iv.is_null()) {
        base.interval.reset();
      } else {
        if (!iv.is_array() || iv.size() != 2) throw std::invalid_argument("config: interval needs two numbers");
        base.interval = std::array<double, 2>{iv[0].get<double>(), iv[1].get<double>()};
      }
    }
    take(j, "scheme", base.scheme);
    take(j, "tol", base.tol);
    take(j, "max_iter", base.max_iter);
    take(j, "seed", base.seed);
    take(j, "n", base.n);
    take(j, "rank_q", base.rank_q);
    take(j, "rank_gamma", base.rank_gamma);
    take(j, "spectrum", base.spectrum);
    take(j, "instance", base.instance);
    take(j, "grid", base.grid);
    take(j, "phase_file", base.phase_file);
    take(j, "generator", base.generator);
    take(j, "sigma_re", base.sigma_re);
    take(j, "sigma_im", base.sigma_im);
    take(j, "e_bar", base.e_bar);
    take(j, "full_tensor", base.full_tensor);
    take(j, "iters", base.iters);
    take(j, "trace_path", base.trace_path);
    take(j, "output_path", base.output_path);
    take(j, "text", base.text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return base;
}

namespace {

/// Rounds to the 15 significant digits used for all output.
json num(double x) { return std::stod(format_number(x)); }

json num(Complex c) { return {{"re", num(c.real())}, {"im", num(c.imag())}}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Opens `path` for writing, or hands back `fallback` when the path is empty or "-".
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emit(const RunConfig& cfg, const json& j, std::ostream& out) {
  Sink sink(cfg.output_path, out);
  sink.get() << j.dump(2) << '\n';
}

void write_trace(const std::string& path, const IterationTrace& trace, std::ostream& out) {
  if (path.empty()) return;
  Sink sink(path, out);
  write_trace_csv(sink.get(), trace);
}

Complex z_of(const RunConfig& cfg) { return {cfg.z_re, cfg.z_im}; }

std::optional<SpectralInterval> interval_of(const RunConfig& cfg) {
  if (!cfg.interval) return std::nullopt;
  return SpectralInterval((*cfg.interval)[0], (*cfg.interval)[1]);
}

struct DenseSetup {
  DenseOperator q;
  DenseOperator gamma;
};

DenseSetup make_dense_setup(const RunConfig& cfg) {
  if (cfg.n == 0) throw std::invalid_argument("n must be positive");
  if (!cfg.spectrum.empty()) {
    auto pair = make_dense_pair_with_spectrum(cfg.spectrum, cfg.n, cfg.seed);
    return {std::move(pair.q), std::move(pair.gamma)};
  }
  if (cfg.rank_q > cfg.n || cfg.rank_gamma > cfg.n) throw std::invalid_argument("ranks must not exceed n");
  return {make_dense_projection(cfg.n, cfg.rank_q, 2 * cfg.seed + 1),
          make_dense_projection(cfg.n, cfg.rank_gamma, 2 * cfg.seed + 2)};
}

/// laminate:<fraction>[:<axis>], inclusion:<radius> or uniform:<0|1>.
PhaseMap generate_phase(const GridSpec& grid, const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  const auto bad = [&spec]() { return std::invalid_argument("bad phase generator '" + spec + "'"); };
  if (parts.size() < 2) throw bad();
  try {
    if (parts[0] == "laminate" && parts.size() <= 3) {
      const int axis = parts.size() == 3 ? std::stoi(parts[2]) : 0;
      if (axis < 0 || axis >= grid.dimension()) throw bad();
      return make_laminate(grid, std::stod(parts[1]), axis);
    }
    if (parts[0] == "inclusion" && parts.size() == 2) return make_inclusion(grid, std::stod(parts[1]));
    if (parts[0] == "uniform" && parts.size() == 2 && (parts[1] == "0" || parts[1] == "1")) {
      return make_uniform(grid, parts[1] == "1");
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  throw bad();
}

PhaseMap phase_of(const RunConfig& cfg) {
  if (!cfg.phase_file.empty()) return load_phase_map(cfg.phase_file);
  return generate_phase(GridSpec(cfg.grid), cfg.generator);
}

double bound_for(const Scheme& scheme, const RateBundle& r) {
  switch (scheme.kind) {
    case SchemeKind::PowerSeries: return r.mu0;
    case SchemeKind::Richardson:
      return scheme.reference == ReferenceChoice::Optimal ? r.mu2 : r.mu1_refined;
    case SchemeKind::Accelerated: return r.mu3;
    case SchemeKind::Lifted: return r.mu4;
  }
  return r.mu0;
}

json warnings_of(const IterationTrace& trace) { return trace.warnings; }

int cmd_rates(const RunConfig& cfg, std::ostream& out) {
  const Complex z = z_of(cfg);
  const SpectralInterval iv = interval_of(cfg).value_or(SpectralInterval::unit());
  const RateBundle r = rate_bounds(z, iv);
  const Complex sigma = sigma_of_z(z);
  const Complex sigma_u = sigma_underline_of_z(z, iv);
  const Complex v = v_of_z(z, iv);
  const bool real_z = z.imag() == 0.0;
  const double cg = real_z ? cg_rate(z.real(), iv) : 0.0;

  if (cfg.text) {
    Sink sink(cfg.output_path, out);
    std::ostream& os = sink.get();
    const auto line = [&os](const char* name, double x) { os << name << ' ' << format_number(x, 6) << '\n'; };
    line("mu0", r.mu0);
    line("mu1", r.mu1);
    line("mu1_refined", r.mu1_refined);
    line("mu2", r.mu2);
    line("mu3", r.mu3);
    line("mu4", r.mu4);
    if (real_z) line("cg_rate", cg);
    if (!r.mu3_guaranteed) os << "note: sigma in the left half-plane, mu3 is not a guaranteed bound\n";
    return kExitOk;
  }

  json j;
  j["z"] = num(z);
  j["interval"] = {num(iv.lower()), num(iv.upper())};
  j["mu0"] = num(r.mu0);
  j["mu1"] = num(r.mu1);
  j["mu1_refined"] = num(r.mu1_refined);
  j["mu2"] = num(r.mu2);
  j["mu3"] = num(r.mu3);
  j["mu3_guaranteed"] = r.mu3_guaranteed;
  j["mu4"] = num(r.mu4);
  j["cg_rate"] = real_z ? num(cg) : json(nullptr);
  j["v"] = num(v);
  j["sigma"] = num(sigma);
  j["sigma_underline"] = num(sigma_u);
  emit(cfg, j, out);
  return kExitOk;
}

int cmd_solve_dense(const RunConfig& cfg, std::ostream& out) {
  const Scheme scheme = parse_scheme(cfg.scheme);
  const DenseSetup setup = make_dense_setup(cfg);
  const Complex z = z_of(cfg);
  const auto [lo, hi] = cfg.interval ? std::pair{(*cfg.interval)[0], (*cfg.interval)[1]}
                                     : dense_eigen_bounds(setup.q, setup.gamma);
  const SpectralInterval iv(lo, hi);
  if (iv.on_cut(z)) throw SpectralCutError();

  const Operator q = setup.q.to_operator();
  const Operator gamma = setup.gamma.to_operator();
  const Field h = gamma.apply(random_field(cfg.n, cfg.seed + 0x9e3779b97f4a7c15ULL));

  SolveConfig sc;
  sc.tol = cfg.tol;
  sc.max_iter = cfg.max_iter;
  sc.record_trace = true;
  sc.oracle = DenseOperator(dense_series_oracle(setup.q, setup.gamma, z)).to_operator();
  const SolveResult result = solve(q, gamma, z, h, scheme, iv, sc);
  write_trace(cfg.trace_path, result.trace, out);

  const auto slope = fitted_log_slope(result.trace, 1e-13);
  const double mu = bound_for(scheme, rate_bounds(z, iv));
  json j;
  j["scheme"] = to_string(scheme);
  j["status"] = to_string(result.trace.status);
  j["iters"] = result.trace.iterations;
  j["final_residual"] = num(result.trace.final_residual);
  j["final_error"] = result.trace.records.empty() || !result.trace.records.back().error
                         ? json(nullptr)
                         : num(*result.trace.records.back().error);
  j["fitted_slope"] = slope ? num(*slope) : json(nullptr);
  j["mu_bound"] = num(mu);
  j["log_mu_bound"] = num(std::log(mu));
  j["interval"] = {num(iv.lower()), num(iv.upper())};
  j["warnings"] = warnings_of(result.trace);
  emit(cfg, j, out);
  return kExitOk;
}

std::string column_trace_path(const std::string& path, std::size_t column) {
  if (path.empty() || path == "-") return path;
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + std::to_string(column) + p.extension().string())).string();
}

int cmd_solve_conduct(const RunConfig& cfg, std::ostream& out) {
  const Scheme scheme = parse_scheme(cfg.scheme);
  const PhaseMap phase = phase_of(cfg);
  const GridSpec& grid = phase.grid;
  const auto dim = static_cast<std::size_t>(grid.dimension());
  const Complex sigma(cfg.sigma_re, cfg.sigma_im);

  SolveConfig sc;
  sc.tol = cfg.tol;
  sc.max_iter = cfg.max_iter;
  sc.record_trace = true;

  std::vector<std::vector<Complex>> applied;
  if (cfg.full_tensor) {
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<Complex> unit(dim);
      unit[k] = 1.0;
      applied.push_back(std::move(unit));
    }
  } else {
    if (cfg.e_bar.size() != dim) {
      throw std::invalid_argument("e_bar needs " + std::to_string(dim) + " components for this grid");
    }
    applied.emplace_back(cfg.e_bar.begin(), cfg.e_bar.end());
  }

  json columns = json::array();
  json iters = json::array();
  json statuses = json::array();
  json warnings = json::array();
  bool swapped = false;
  for (std::size_t k = 0; k < applied.size(); ++k) {
    const ConductivityResult r = conductivity_solve(grid, phase, sigma, applied[k], scheme, interval_of(cfg), sc);
    write_trace(cfg.full_tensor ? column_trace_path(cfg.trace_path, k) : cfg.trace_path, r.trace, out);
    json column = json::array();
    for (const Complex c : r.effective_column) column.push_back(num(c));
    columns.push_back(std::move(column));
    iters.push_back(r.trace.iterations);
    statuses.push_back(to_string(r.trace.status));
    for (const auto& w : r.trace.warnings) warnings.push_back(w);
    swapped = r.phases_swapped;
  }

  json j;
  j["scheme"] = to_string(scheme);
  j["grid"] = grid.dims();
  j["volume_fraction"] = num(phase.volume_fraction());
  j["sigma"] = num(sigma);
  j["phases_swapped"] = swapped;
  if (cfg.full_tensor) {
    j["effective_tensor"] = columns;
    j["iters"] = iters;
    j["status"] = statuses;
  } else {
    j["effective_column"] = columns[0];
    j["iters"] = iters[0];
    j["status"] = statuses[0];
  }
  j["warnings"] = warnings;
  emit(cfg, j, out);
  return kExitOk;
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.iters < 1) throw std::invalid_argument("iters must be >= 1");
  BoundEstimate est;
  if (cfg.instance == "dense") {
    const DenseSetup setup = make_dense_setup(cfg);
    est = estimate_bounds(setup.q.to_operator(), setup.gamma.to_operator(), cfg.iters, cfg.seed);
  } else if (cfg.instance == "grid") {
    const PhaseMap phase = phase_of(cfg);
    const Operator gamma = fourier_gamma_conductivity(phase.grid);
    const Operator q = phase_operator(phase, phase.grid.dimension());
    est = estimate_bounds(q, gamma, cfg.iters, cfg.seed);
  } else {
    throw std::invalid_argument("instance must be 'dense' or 'grid'");
  }
  const SpectralInterval widened = est.widened_interval();
  json j;
  j["z_minus_e"] = num(est.z_minus_e);
  j["z_plus_e"] = num(est.z_plus_e);
  j["iterations_used"] = est.iterations_used;
  j["residual_gap"] = num(est.residual_gap);
  j["widened_interval"] = {num(widened.lower()), num(widened.upper())};
  emit(cfg, j, out);
  return kExitOk;
}

/// Flag values that need post-processing before they land in RunConfig.
struct Scratch {
  std::optional<double> z;
  std::vector<double> interval;
  std::string config_path;
  std::string save_config_path;
};

void add_shared(CLI::App& sub, RunConfig& cfg, Scratch& s) {
  sub.add_option("--config", s.config_path, "JSON config; its keys override flags");
  sub.add_option("--save-config", s.save_config_path, "write the effective config as JSON");
  sub.add_option("--output,-o", cfg.output_path, "JSON output path (default stdout)");
  sub.add_option("--seed", cfg.seed, "random seed");
}

void add_z(CLI::App& sub, RunConfig& cfg, Scratch& s) {
  auto* z = sub.add_option("--z", s.z, "real spectral parameter");
  auto* re = sub.add_option("--z-re", cfg.z_re, "real part of z");
  auto* im = sub.add_option("--z-im", cfg.z_im, "imaginary part of z");
  z->excludes(re)->excludes(im);
  sub.add_option("--interval", s.interval, "spectral interval z- z+")->expected(2);
}

void add_solver(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--scheme", cfg.scheme, "power, richardson, richardson-optimal, accelerated, lifted");
  sub.add_option("--tol", cfg.tol, "relative residual tolerance");
  sub.add_option("--max-iter", cfg.max_iter, "iteration cap");
  sub.add_option("--trace", cfg.trace_path, "CSV trace path ('-' for stdout)");
}

void add_dense(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--n", cfg.n, "dimension");
  sub.add_option("--rank-q", cfg.rank_q, "rank of Q");
  sub.add_option("--rank-gamma", cfg.rank_gamma, "rank of Gamma");
  sub.add_option("--spectrum", cfg.spectrum, "prescribed eigenvalues of Gamma Q Gamma on range(Gamma)")
      ->delimiter(',');
}

void add_grid(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--grid", cfg.grid, "cells per axis (2 or 3 values)");
  sub.add_option("--phase-file", cfg.phase_file, "phase map file of 0/1 rows");
  sub.add_option("--generator", cfg.generator, "laminate:<f>[:<axis>], inclusion:<r> or uniform:<0|1>");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Scratch s;

  CLI::App app{"Resolvent series solvers for projection operators"};
  app.require_subcommand(1);

  auto* rates = app.add_subcommand("rates", "convergence-rate bounds at z");
  add_shared(*rates, cfg, s);
  add_z(*rates, cfg, s);
  rates->add_flag("--text", cfg.text, "rounded human-readable output");

  auto* dense = app.add_subcommand("solve-dense", "solve on a seeded dense instance against the direct inverse");
  add_shared(*dense, cfg, s);
  add_z(*dense, cfg, s);
  add_solver(*dense, cfg);
  add_dense(*dense, cfg);

  auto* conduct = app.add_subcommand("solve-conduct", "effective conductivity of a periodic two-phase composite");
  add_shared(*conduct, cfg, s);
  add_solver(*conduct, cfg);
  add_grid(*conduct, cfg);
  conduct->add_option("--interval", s.interval, "spectral interval of Gamma chi Gamma")->expected(2);
  conduct->add_option("--sigma", cfg.sigma_re, "conductivity of phase 1 (phase 2 is 1)");
  conduct->add_option("--sigma-im", cfg.sigma_im, "imaginary part of sigma");
  conduct->add_option("--e-bar", cfg.e_bar, "applied average field");
  conduct->add_flag("--full-tensor", cfg.full_tensor, "solve for every unit applied field");

  auto* estimate = app.add_subcommand("estimate", "Rayleigh-Ritz estimates of the spectral interval");
  add_shared(*estimate, cfg, s);
  add_dense(*estimate, cfg);
  add_grid(*estimate, cfg);
  estimate->add_option("--instance", cfg.instance, "dense or grid");
  estimate->add_option("--iters", cfg.iters, "block power iterations");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    if (s.z) {
      cfg.z_re = *s.z;
      cfg.z_im = 0.0;
    }
    if (!s.interval.empty()) cfg.interval = std::array<double, 2>{s.interval[0], s.interval[1]};
    if (!s.config_path.empty()) cfg = apply_config_json(read_file(s.config_path), cfg);
    cfg.command = chosen->get_name();
    if (!s.save_config_path.empty()) {
      std::ofstream file(s.save_config_path);
      if (!file) throw std::invalid_argument("cannot write " + s.save_config_path);
      file << config_to_json(cfg) << '\n';
    }

    if (chosen == rates) return cmd_rates(cfg, out);
    if (chosen == dense) return cmd_solve_dense(cfg, out);
    if (chosen == conduct) return cmd_solve_conduct(cfg, out);
    return cmd_estimate(cfg, out);
  } catch (const std::logic_error& e) {
    // Cut errors, bad parameters and unreadable inputs.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace resolvent::cli
