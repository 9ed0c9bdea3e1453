#include "kglab/runner/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>

#include "kglab/dynamics/halfwave.hpp"
#include "kglab/dynamics/initial_data.hpp"
#include "kglab/harness/bilinear.hpp"
#include "kglab/harness/exponents.hpp"
#include "kglab/harness/record.hpp"
#include "kglab/harness/resonance_checks.hpp"
#include "kglab/harness/shell.hpp"
#include "kglab/nonlinear/system.hpp"
#include "kglab/spectral/multipliers.hpp"
#include "kglab/util/parallel.hpp"
#include "kglab/util/random.hpp"
#include "kglab/variation/pvariation.hpp"

namespace kglab::runner {

namespace fs = std::filesystem;
using harness::Json;

const char* artifact_version() noexcept { return "kglab 0.1.0"; }

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names{
      "simulate",       "picard",          "verify-modulation", "verify-nonresonance",
      "verify-shell",   "verify-bilinear", "verify-trilinear",  "strichartz",
      "strauss",        "variation"};
  return names;
}

namespace {

// Collects the files one command writes so the manifest can list them.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    files_.push_back(name);
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    return out;
  }
  fs::path claim(const std::string& name) {
    files_.push_back(name);
    return dir_ / name;
  }
  const std::vector<std::string>& files() const { return files_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

struct Outcome {
  Json summary = Json::object();
  bool pass = true;
};

void write_records(OutputSet& out, const std::vector<harness::VerificationRecord>& records) {
  auto jsonl = out.open("records.jsonl");
  auto csv = out.open("records.csv");
  csv << "name,pass,seed,bound\n";
  for (const auto& r : records) {
    jsonl << r.to_line() << '\n';
    csv << r.name << ',' << (r.pass ? "true" : "false") << ',' << r.seed << ",\"" << r.bound << "\"\n";
  }
}

Outcome summarize_records(const std::vector<harness::VerificationRecord>& records) {
  Outcome o;
  Json rows = Json::array();
  for (const auto& r : records) {
    rows.push_back({{"name", r.name}, {"pass", r.pass}, {"observed", r.observed}});
    o.pass = o.pass && r.pass;
  }
  o.summary["records"] = rows;
  o.summary["all_pass"] = o.pass;
  return o;
}

// ---------------------------------------------------------------------------
// shared setup for the dynamics commands

struct DynamicsSetup {
  spectral::LatticePtr lattice;
  nonlinear::MassSystem system = nonlinear::MassSystem::linear({1.0});
  std::string system_text;
  double sobolev = 0.5;
  double width = 1.0;
};

DynamicsSetup dynamics_setup(const RunConfig& cfg) {
  DynamicsSetup s;
  spectral::GridSpec grid;
  grid.dim = static_cast<int>(cfg.integer("dim", 2));
  grid.box_length = cfg.real("box_length", 64.0);
  grid.points_per_axis = static_cast<int>(cfg.integer("points", 64));
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  s.lattice = spectral::FrequencyLattice::make(grid);
  if (cfg.has("system")) {
    try {
      s.system = nonlinear::load_system_file(cfg.path("system"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else {
    const double mass = cfg.real("mass", 1.0);
    const std::string kind = cfg.text("nonlinearity", "square");
    if (kind == "square")
      s.system = nonlinear::MassSystem::scalar_square(mass, cfg.real("coefficient", 1.0));
    else if (kind == "none")
      s.system = nonlinear::MassSystem::linear({mass});
    else
      throw ConfigError("config: nonlinearity must be 'square' or 'none'");
  }
  s.system_text = nonlinear::format_system(s.system);
  s.sobolev = cfg.real("sobolev_index", 0.5);
  s.width = cfg.real("width", 1.0);
  return s;
}

dynamics::CauchyData make_data(const DynamicsSetup& s, double amplitude) {
  return dynamics::gaussian_data(s.lattice, s.system.masses(), amplitude, s.width, s.sobolev);
}

Outcome cmd_simulate(const RunConfig& cfg, OutputSet& out) {
  const auto setup = dynamics_setup(cfg);
  const double amplitude = cfg.real("amplitude", 1e-3);
  const double horizon = cfg.real("T", 10.0);
  const double dt = cfg.real("dt", 0.01);
  dynamics::EvolveOptions opt;
  opt.sample_every = static_cast<int>(cfg.integer("sample_every", 10));
  opt.sobolev_index = setup.sobolev;
  const auto data = make_data(setup, amplitude);
  const auto result = dynamics::evolve(data, setup.system, horizon, dt, opt);

  {
    auto csv = out.open("series.csv");
    csv << "time,component,hs_norm,energy,scattering_increment\n";
    for (const auto& r : result.series)
      csv << sci(r.time) << ',' << r.component << ',' << sci(r.hs_norm) << ',' << sci(r.energy)
          << ',' << sci(r.scattering_increment) << '\n';
  }
  if (cfg.flag("save_trajectory", false))
    dynamics::write_trajectory(result.trajectory, out.claim("trajectory.bin"));

  Outcome o;
  Json& sm = o.summary;
  sm["system"] = setup.system_text;
  sm["amplitude"] = amplitude;
  sm["initial_norm"] = result.initial_norm;
  sm["max_norm"] = result.max_norm;
  sm["growth"] = result.initial_norm > 0.0 ? result.max_norm / result.initial_norm : 1.0;

  double first = 0.0, second = 0.0;
  for (const auto& r : result.series)
    (r.time <= 0.5 * horizon ? first : second) += r.scattering_increment;
  sm["increment_sum_first_half"] = first;
  sm["increment_sum_second_half"] = second;

  if (dynamics::has_conserved_energy(setup.system) && !result.series.empty()) {
    const double e0 = result.series.front().energy;
    double drift = 0.0;
    for (const auto& r : result.series) drift = std::max(drift, std::abs(r.energy - e0));
    sm["energy_initial"] = e0;
    sm["energy_max_relative_drift"] = e0 != 0.0 ? drift / std::abs(e0) : drift;
  }
  if (setup.system.is_linear() && !result.trajectory.states.empty()) {
    double worst = 0.0;
    for (std::size_t j = 0; j < result.trajectory.times.size(); ++j) {
      const auto exact = dynamics::linear_exact(data, setup.system.masses(), result.trajectory.times[j]);
      const auto got = dynamics::to_cauchy(result.trajectory.states[j]);
      for (int c = 0; c < exact.components(); ++c)
        worst = std::max(worst, spectral::sobolev_norm(got.position[c] - exact.position[c], 1.0,
                                                        setup.system.mass(c)));
    }
    sm["linear_match_h1_error"] = worst;
  }

  if (cfg.has("threshold_low")) {
    const auto report = dynamics::stability_threshold(
        [&](double a) { return make_data(setup, a); }, setup.system, horizon, dt,
        cfg.real("threshold_low"), cfg.real("threshold_high"),
        static_cast<int>(cfg.integer("threshold_bisections", 6)), cfg.real("envelope", 2.0),
        setup.sobolev);
    Json probes = Json::array();
    for (const auto& p : report.probes)
      probes.push_back({{"amplitude", p.amplitude},
                        {"growth", std::isfinite(p.growth) ? Json(p.growth) : Json("abort")},
                        {"stable", p.stable}});
    sm["stability_threshold"] = {{"stable_amplitude", report.stable_amplitude},
                                 {"unstable_amplitude", report.unstable_amplitude},
                                 {"probes", probes}};
  }
  return o;
}

Outcome cmd_picard(const RunConfig& cfg, OutputSet& out) {
  const auto setup = dynamics_setup(cfg);
  const double amplitude = cfg.real("amplitude", 1e-3);
  const double horizon = cfg.real("T", 5.0);
  const double dt = cfg.real("dt", 0.01);
  const int iters = static_cast<int>(cfg.integer("iters", 8));
  const auto data = make_data(setup, amplitude);
  dynamics::PicardOptions popt;
  popt.sobolev_index = setup.sobolev;
  const auto report = dynamics::picard_iterate(data, setup.system, horizon, dt, iters, popt);

  dynamics::EvolveOptions eopt;
  eopt.sobolev_index = setup.sobolev;
  const auto reference = dynamics::evolve(data, setup.system, horizon, dt, eopt);
  const auto& fixed = report.iterates.back();
  double agreement = 0.0;
  for (std::size_t j = 0; j < fixed.states.size() && j < reference.trajectory.states.size(); ++j)
    agreement = std::max(agreement, dynamics::state_distance(fixed.states[j],
                                                             reference.trajectory.states[j], setup.sobolev));
  {
    auto csv = out.open("series.csv");
    csv << "iteration,distance\n";
    for (std::size_t k = 0; k < report.successive_distances.size(); ++k)
      csv << k + 1 << ',' << sci(report.successive_distances[k]) << '\n';
  }
  Outcome o;
  o.summary = {{"system", setup.system_text},
               {"amplitude", amplitude},
               {"iterations", report.iterations},
               {"successive_distances", report.successive_distances},
               {"contraction_factor", report.contraction_factor},
               {"diverged", report.diverged},
               {"agreement_with_evolve", agreement}};
  o.pass = !report.diverged;
  return o;
}

Outcome cmd_modulation(const RunConfig& cfg, OutputSet& out) {
  harness::ResonanceSweep sweep;
  sweep.max_norm = cfg.real("max_norm", 1024.0);
  sweep.seed = cfg.seed.value_or(1);
  std::vector<harness::VerificationRecord> records;
  for (double n : cfg.reals("dims", {2, 3}))
    records.push_back(harness::verify_modulation_bound(cfg.real("mass", 1.0), static_cast<int>(n), sweep));
  write_records(out, records);
  return summarize_records(records);
}

Outcome cmd_nonresonance(const RunConfig& cfg, OutputSet& out) {
  const auto m = cfg.reals("masses", {1, 1, 1});
  if (m.size() != 3) throw ConfigError("config: masses expects three values");
  harness::ResonanceSweep sweep;
  sweep.max_norm = cfg.real("max_norm", 1024.0);
  sweep.seed = cfg.seed.value_or(1);
  auto rec = harness::verify_nonresonance_bound({m[0], m[1], m[2]},
                                                static_cast<int>(cfg.integer("dim", 3)), sweep);
  write_records(out, {rec});
  return summarize_records({rec});
}

Outcome cmd_shell(const RunConfig& cfg, OutputSet& out) {
  const auto seed = cfg.require_seed();
  std::vector<harness::ShellSpec> cases;
  for (double tube : cfg.sweep_reals("tube", {4, 8, 16}))
    for (double delta : cfg.sweep_reals("delta", {0.05, 0.1}))
      for (double radius : cfg.sweep_reals("radius", {32, 64}))
        for (double factor : cfg.sweep_reals("xi0_factor", {1.5, 2.0})) {
          harness::ShellSpec s;
          s.dim = static_cast<int>(cfg.integer("dim", 3));
          s.r = s.R = radius;
          s.delta = s.Delta = delta;
          s.tube = tube;
          s.xi0_norm = factor * radius;
          cases.push_back(s);
        }
  const auto samples = static_cast<std::uint64_t>(cfg.integer("samples", 2000000));
  auto rec = harness::shell_sweep(cases, samples, seed, cfg.real("slack", 4.0));
  write_records(out, {rec});
  return summarize_records({rec});
}

std::vector<spectral::Sign> parse_signs(const std::string& text, std::size_t count) {
  std::vector<spectral::Sign> out;
  for (char c : text) {
    if (c == '+') out.push_back(spectral::Sign::plus);
    else if (c == '-') out.push_back(spectral::Sign::minus);
    else if (c != ' ' && c != ',') throw ConfigError("config: signs must be '+' or '-'");
  }
  if (out.size() != count) throw ConfigError("config: expected " + std::to_string(count) + " signs");
  return out;
}

spectral::DyadicIndex dyadic(double v) {
  try {
    return spectral::DyadicIndex(static_cast<unsigned long long>(v));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Outcome cmd_bilinear(const RunConfig& cfg, OutputSet& out) {
  const auto seed = cfg.require_seed();
  const std::string mode = cfg.text("mode", "separated");
  harness::BilinearResolution res;
  res.grid_points = static_cast<int>(cfg.integer("grid_points", 32));
  res.time_points = static_cast<int>(cfg.integer("time_points", 193));
  std::vector<harness::BilinearCase> cases;
  for (double scale : cfg.sweep_reals("scales", mode == "comparable" ? std::vector<double>{8, 16, 32, 64, 128}
                                                                     : std::vector<double>{2, 4, 8, 16, 32, 64})) {
    harness::BilinearCase c;
    c.trials = static_cast<int>(cfg.integer("trials", 2));
    c.seed = util::mix_seed(seed, cases.size());
    if (mode == "comparable") {
      const auto signs = parse_signs(cfg.text("signs", "+-"), 2);
      c.M = c.N = dyadic(scale);
      c.O = dyadic(cfg.real("O", 2.0));
      c.sign_u = signs[0];
      c.sign_v = signs[1];
    } else if (mode == "separated") {
      const auto signs = parse_signs(cfg.text("signs", "++"), 2);
      c.M = dyadic(scale);
      c.N = c.O = dyadic(scale * cfg.real("separation", 16.0));
      c.sign_u = signs[0];
      c.sign_v = signs[1];
    } else {
      throw ConfigError("config: mode must be 'comparable' or 'separated'");
    }
    cases.push_back(c);
  }
  auto rec = harness::bilinear_sweep("bilinear_" + mode, cases, res, cfg.real("slack", 4.0),
                                     static_cast<int>(cfg.integer("min_scales", 5)));
  rec.seed = seed;
  write_records(out, {rec});
  return summarize_records({rec});
}

Outcome cmd_trilinear(const RunConfig& cfg, OutputSet& out) {
  const auto seed = cfg.require_seed();
  const auto signs = parse_signs(cfg.text("signs", "+++"), 3);
  std::vector<harness::TrilinearCase> cases;
  for (double l : cfg.sweep_reals("L", {1, 2, 4, 8})) {
    harness::TrilinearCase c;
    c.H = c.H_prime = dyadic(cfg.real("H", 8.0));
    c.L = dyadic(l);
    c.signs = {signs[0], signs[1], signs[2]};
    c.horizon = cfg.real("horizon", 4.0);
    c.trials = static_cast<int>(cfg.integer("trials", 2));
    c.grid_points = static_cast<int>(cfg.integer("grid_points", 32));
    c.seed = util::mix_seed(seed, cases.size());
    cases.push_back(c);
  }
  auto rec = harness::verify_trilinear(cases, cfg.real("slack", 4.0));
  rec.seed = seed;
  write_records(out, {rec});
  return summarize_records({rec});
}

harness::Exponent exponent_from(const std::string& text) {
  if (text == "inf" || text == "infinity") return harness::Exponent::infinite();
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return harness::Exponent::of(std::stoll(text));
    return harness::Exponent::of(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ConfigError("config: bad exponent '" + text + "'");
  }
}

Outcome cmd_strichartz(const RunConfig& cfg, OutputSet& out) {
  const int n = static_cast<int>(cfg.integer("dim", 3));
  const std::string fam = cfg.text("family", "kg");
  if (fam != "kg" && fam != "wave") throw ConfigError("config: family must be 'kg' or 'wave'");
  const auto family = fam == "kg" ? harness::DispersionFamily::klein_gordon : harness::DispersionFamily::wave;
  const auto r = exponent_from(cfg.text("r"));
  const auto q = cfg.has("q") ? exponent_from(cfg.text("q")) : harness::strichartz_solve_q(n, r, family);
  const auto res = harness::strichartz_admissible(n, q, r, family);
  harness::VerificationRecord rec;
  rec.name = "strichartz";
  rec.parameters = {{"dim", n}, {"family", fam}, {"q", q.str()}, {"r", r.str()}};
  rec.observed = {{"valid", res.valid},
                  {"loss", std::to_string(res.loss.numerator()) + "/" + std::to_string(res.loss.denominator())},
                  {"loss_value", res.loss_value()},
                  {"reason", res.reason}};
  rec.bound = fam == "kg" ? "2/q + n/r = n/2" : "2/q + (n-1)/r = (n-1)/2";
  rec.pass = res.valid;
  write_records(out, {rec});
  return summarize_records({rec});
}

Outcome cmd_strauss(const RunConfig& cfg, OutputSet& out) {
  const int top = static_cast<int>(cfg.integer("n_max", 6));
  auto csv = out.open("strauss.csv");
  csv << "n,gamma,residual,lower,upper\n";
  Outcome o;
  Json rows = Json::array();
  for (int n = 1; n <= top; ++n) {
    const double g = harness::strauss_exponent(n);
    const double res = harness::strauss_residual(n, g);
    const bool sandwich = 1.0 + 2.0 / n < g && g < 1.0 + 4.0 / n;
    csv << n << ',' << sci(g) << ',' << sci(res) << ',' << sci(1.0 + 2.0 / n) << ',' << sci(1.0 + 4.0 / n) << '\n';
    rows.push_back({{"n", n}, {"gamma", g}, {"residual", res}, {"sandwich", sandwich}});
    o.pass = o.pass && sandwich && std::abs(res) < 1e-12;
  }
  o.summary["table"] = rows;
  return o;
}

Outcome cmd_variation(const RunConfig& cfg, OutputSet& out) {
  const auto traj = dynamics::read_trajectory(cfg.path("trajectory"));
  const double s = cfg.real("sobolev_index", 0.5);
  auto csv = out.open("variation.csv");
  csv << "component,v2_plus,v2_minus,xs_proxy\n";
  Json rows = Json::array();
  for (int c = 0; c < traj.components(); ++c) {
    const double vp = variation::v2_pm_norm(traj, c, spectral::Sign::plus);
    const double vm = variation::v2_pm_norm(traj, c, spectral::Sign::minus);
    const double xs = variation::xs_proxy_norm(traj, c, s);
    csv << c << ',' << sci(vp) << ',' << sci(vm) << ',' << sci(xs) << '\n';
    rows.push_back({{"component", c}, {"v2_plus", vp}, {"v2_minus", vm}, {"xs_proxy", xs}});
  }
  Outcome o;
  o.summary = {{"samples", traj.times.size()}, {"sobolev_index", s}, {"components", rows}};
  return o;
}

Json config_echo(const RunConfig& cfg) {
  Json j = Json::object();
  j["command"] = cfg.command;
  Json values = Json::object();
  for (const auto& [k, v] : cfg.values) values[k] = v;
  j["values"] = values;
  Json sweep = Json::object();
  for (const auto& [k, v] : cfg.sweep) sweep[k] = v;
  j["sweep"] = sweep;
  j["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
  return j;
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
  static const std::map<std::string, std::function<Outcome(const RunConfig&, OutputSet&)>> table{
      {"simulate", cmd_simulate},         {"picard", cmd_picard},
      {"verify-modulation", cmd_modulation}, {"verify-nonresonance", cmd_nonresonance},
      {"verify-shell", cmd_shell},        {"verify-bilinear", cmd_bilinear},
      {"verify-trilinear", cmd_trilinear}, {"strichartz", cmd_strichartz},
      {"strauss", cmd_strauss},           {"variation", cmd_variation}};

  const auto it = table.find(config.command);
  if (it == table.end()) {
    log << "error: unknown command '" << config.command << "'\n";
    return exit_config_error;
  }
  util::set_thread_count(config.threads);
  const auto started = std::chrono::steady_clock::now();
  try {
    OutputSet out(config.output_dir);
    Outcome outcome = it->second(config, out);
    {
      auto f = out.open("summary.json");
      Json s = Json::object();
      s["command"] = config.command;
      s["pass"] = outcome.pass;
      s["summary"] = outcome.summary;
      f << s.dump(2) << '\n';
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    out.claim("manifest.json");
    Json manifest = Json::object();
    manifest["version"] = artifact_version();
    manifest["config"] = config_echo(config);
    manifest["files"] = out.files();
    manifest["pass"] = outcome.pass;
    manifest["wall_clock_seconds"] = seconds;
    std::ofstream(out.dir() / "manifest.json") << manifest.dump(2) << '\n';
    log << config.command << ": " << (outcome.pass ? "ok" : "verification failed") << " ("
        << out.dir().string() << ")\n";
    return outcome.pass ? exit_ok : exit_verification_failed;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const dynamics::NumericalAbort& e) {
    log << "numerical abort at t=" << e.time() << ": " << e.what() << '\n';
    return exit_numerical_abort;
  } catch (const std::invalid_argument& e) {
    log << "invalid parameters: " << e.what() << '\n';
    return exit_config_error;
  }
}

}  // namespace kglab::runner
