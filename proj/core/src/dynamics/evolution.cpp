#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "kglab/dynamics/halfwave.hpp"
#include "kglab/spectral/multipliers.hpp"

namespace kglab::dynamics {

using spectral::japanese_bracket;

namespace {

long step_count(double horizon, double dt) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("time horizon must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  const long steps = std::lround(horizon / dt);
  if (steps < 1) throw std::invalid_argument("dt exceeds the time horizon");
  return steps;
}

}  // namespace

HalfWaveState unrotate(const HalfWaveState& state, double t) {
  HalfWaveState out = state;
  for (auto& pair : out) {
    pair.plus = spectral::free_propagate(pair.plus, -t, pair.mass, spectral::Sign::plus);
    pair.minus = spectral::free_propagate(pair.minus, -t, pair.mass, spectral::Sign::minus);
  }
  return out;
}

EvolveResult evolve(const CauchyData& data, const MassSystem& system, double horizon, double dt,
                    const EvolveOptions& options) {
  if (options.sample_every < 1) throw std::invalid_argument("evolve: sample_every must be >= 1");
  const long steps = step_count(horizon, dt);
  const double h = horizon / static_cast<double>(steps);
  const double s = options.sobolev_index;

  HalfWaveState state = initial_pair(data, system);
  LawsonStepper stepper(system, state.front().plus.lattice_ptr(), h);

  EvolveResult result;
  result.trajectory.step_size = h * options.sample_every;
  result.initial_norm = state_norm(state, s);
  result.max_norm = result.initial_norm;

  const bool with_energy = has_conserved_energy(system);
  HalfWaveState previous_profile = state;
  auto record = [&](double t) {
    const double e = with_energy ? energy(state, system) : std::nan("");
    HalfWaveState profile = unrotate(state, t);
    for (std::size_t c = 0; c < state.size(); ++c) {
      TimeSeriesRecord rec;
      rec.time = t;
      rec.component = static_cast<int>(c);
      rec.hs_norm = position_norm(state[c], s);
      rec.energy = e;
      rec.scattering_increment = state_distance({profile[c]}, {previous_profile[c]}, s);
      result.series.push_back(rec);
    }
    previous_profile = std::move(profile);
    result.trajectory.times.push_back(t);
    if (options.store_states) result.trajectory.states.push_back(state);
  };

  record(0.0);
  for (long n = 1; n <= steps; ++n) {
    const double t = h * static_cast<double>(n);
    try {
      stepper.step(state);
    } catch (const NumericalAbort& e) {
      throw NumericalAbort(e.what(), t);
    }
    const double norm = state_norm(state, s);
    result.max_norm = std::max(result.max_norm, norm);
    if (result.initial_norm > 0.0 && norm > options.abort_factor * result.initial_norm)
      throw NumericalAbort("norm exceeded abort threshold (" + std::to_string(norm) + ")", t);
    if (n % options.sample_every == 0) record(t);
  }
  return result;
}

// ---------------------------------------------------------------------------

PicardReport picard_iterate(const CauchyData& data, const MassSystem& system, double horizon,
                            double dt, int iters, const PicardOptions& options) {
  if (iters < 2) throw std::invalid_argument("picard_iterate: iters must be >= 2");
  const long steps = step_count(horizon, dt);
  const double h = horizon / static_cast<double>(steps);
  const double s = options.sobolev_index;
  const HalfWaveState start = initial_pair(data, system);
  const int k = system.components();
  const auto& lattice = start.front().plus.lattice();
  const std::size_t nodes = lattice.size();

  std::vector<std::vector<double>> omega(k), inv2(k);
  for (int c = 0; c < k; ++c) {
    omega[c].resize(nodes);
    inv2[c].resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
      omega[c][i] = japanese_bracket(system.mass(c), lattice.norm_squared(i));
      inv2[c][i] = 0.5 / omega[c][i];
    }
  }

  Trajectory current;
  current.step_size = h;
  for (long j = 0; j <= steps; ++j) {
    const double t = h * static_cast<double>(j);
    current.times.push_back(t);
    HalfWaveState st = start;
    for (auto& pair : st) {
      pair.plus = spectral::free_propagate(pair.plus, t, pair.mass, spectral::Sign::plus);
      pair.minus = spectral::free_propagate(pair.minus, t, pair.mass, spectral::Sign::minus);
    }
    current.states.push_back(std::move(st));
  }

  PicardReport report;
  if (options.keep_all_iterates) report.iterates.push_back(current);
  int rising = 0;
  for (int it = 1; it <= iters; ++it) {
    Trajectory next = current;
    // rotated Duhamel integrands g^{+/-}(t) = exp(-/+ i t<D>) (-/+ i) F / (2<D>)
    std::vector<HalfWaveState> integrand(current.states.size(), start);
    for (std::size_t j = 0; j < current.states.size(); ++j) {
      const double t = current.times[j];
      std::vector<SpectralField> u;
      for (const auto& pair : current.states[j]) u.push_back(pair.plus + pair.minus);
      auto f = nonlinear::evaluate_nonlinearity(system, u);
      for (int c = 0; c < k; ++c) {
        auto& g = integrand[j][c];
        for (std::size_t i = 0; i < nodes; ++i) {
          const Complex rot = std::polar(1.0, -t * omega[c][i]);
          const Complex v = Complex{0.0, -inv2[c][i]} * f[c][i];
          g.plus[i] = rot * v;
          g.minus[i] = -std::conj(rot) * v;
        }
      }
    }
    double distance = 0.0, scale = 0.0;
    HalfWaveState accumulated = start;
    for (std::size_t j = 0; j < current.states.size(); ++j) {
      const double t = current.times[j];
      if (j > 0)
        for (int c = 0; c < k; ++c) {
          accumulated[c].plus.axpy(0.5 * h, integrand[j - 1][c].plus);
          accumulated[c].plus.axpy(0.5 * h, integrand[j][c].plus);
          accumulated[c].minus.axpy(0.5 * h, integrand[j - 1][c].minus);
          accumulated[c].minus.axpy(0.5 * h, integrand[j][c].minus);
        }
      HalfWaveState& st = next.states[j];
      for (int c = 0; c < k; ++c) {
        st[c].plus = spectral::free_propagate(accumulated[c].plus, t, st[c].mass, spectral::Sign::plus);
        st[c].minus =
            spectral::free_propagate(accumulated[c].minus, t, st[c].mass, spectral::Sign::minus);
        if (!st[c].plus.all_finite() || !st[c].minus.all_finite())
          throw NumericalAbort("picard iterate became non-finite", t);
      }
      distance = std::max(distance, state_distance(st, current.states[j], s));
      double size2 = 0.0;
      for (const auto& pair : st) {
        const double a = spectral::sobolev_norm(pair.plus, s, pair.mass);
        const double b = spectral::sobolev_norm(pair.minus, s, pair.mass);
        size2 += a * a + b * b;
      }
      scale = std::max(scale, std::sqrt(size2));
    }
    report.successive_distances.push_back(distance);
    report.iterations = it;
    current = std::move(next);
    if (options.keep_all_iterates) report.iterates.push_back(current);

    const auto& d = report.successive_distances;
    if (d.size() >= 2) {
      const double prev = d[d.size() - 2];
      if (prev > 0.0) report.contraction_factor = std::max(report.contraction_factor, distance / prev);
      rising = distance > prev ? rising + 1 : 0;
      if (rising >= 3) {
        report.diverged = true;
        break;
      }
    }
    if (distance <= options.relative_floor * scale) break;
  }
  if (!options.keep_all_iterates) report.iterates.push_back(std::move(current));
  return report;
}

// ---------------------------------------------------------------------------

ScatteringResult scattering_state(const Trajectory& traj, double s) {
  traj.validate();
  ScatteringResult out;
  if (traj.states.empty()) return out;
  HalfWaveState previous;
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    HalfWaveState w = unrotate(traj.states[j], traj.times[j]);
    out.times.push_back(traj.times[j]);
    out.increments.push_back(j == 0 ? 0.0 : state_distance(w, previous, s));
    previous = std::move(w);
  }
  out.final_profile = std::move(previous);
  return out;
}

// ---------------------------------------------------------------------------
// binary trajectory files: little-endian host layout, versioned magic

namespace {

constexpr char kMagic[8] = {'K', 'G', 'T', 'R', 'A', 'J', '0', '1'};

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("trajectory file truncated");
  return v;
}

}  // namespace

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
  traj.validate();
  if (traj.states.empty()) throw std::invalid_argument("write_trajectory: empty trajectory");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto& grid = traj.states.front().front().plus.lattice().grid();
  out.write(kMagic, sizeof kMagic);
  put<std::int32_t>(out, grid.dim);
  put<std::int32_t>(out, grid.points_per_axis);
  put<double>(out, grid.box_length);
  put<std::int32_t>(out, traj.components());
  for (const auto& pair : traj.states.front()) put<double>(out, pair.mass);
  put<double>(out, traj.step_size);
  put<std::uint64_t>(out, traj.states.size());
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    put<double>(out, traj.times[j]);
    for (const auto& pair : traj.states[j])
      for (const auto* f : {&pair.plus, &pair.minus})
        out.write(reinterpret_cast<const char*>(f->coefficients().data()),
                  static_cast<std::streamsize>(f->size() * sizeof(Complex)));
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error(path.string() + " is not a trajectory file");
  spectral::GridSpec grid;
  grid.dim = get<std::int32_t>(in);
  grid.points_per_axis = get<std::int32_t>(in);
  grid.box_length = get<double>(in);
  auto lattice = spectral::FrequencyLattice::make(grid);
  const int k = get<std::int32_t>(in);
  if (k < 1) throw std::runtime_error("trajectory file: bad component count");
  std::vector<double> masses(k);
  for (auto& m : masses) m = get<double>(in);
  Trajectory traj;
  traj.step_size = get<double>(in);
  const auto count = get<std::uint64_t>(in);
  for (std::uint64_t j = 0; j < count; ++j) {
    traj.times.push_back(get<double>(in));
    HalfWaveState st;
    for (int c = 0; c < k; ++c) {
      std::vector<Complex> plus(lattice->size()), minus(lattice->size());
      in.read(reinterpret_cast<char*>(plus.data()), static_cast<std::streamsize>(plus.size() * sizeof(Complex)));
      in.read(reinterpret_cast<char*>(minus.data()), static_cast<std::streamsize>(minus.size() * sizeof(Complex)));
      if (!in) throw std::runtime_error("trajectory file truncated");
      st.push_back({SpectralField(lattice, std::move(plus)), SpectralField(lattice, std::move(minus)), masses[c]});
    }
    traj.states.push_back(std::move(st));
  }
  traj.validate();
  return traj;
}

}  // namespace kglab::dynamics
