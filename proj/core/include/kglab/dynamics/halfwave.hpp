#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "kglab/nonlinear/system.hpp"
#include "kglab/spectral/field.hpp"

namespace kglab::dynamics {

using nonlinear::MassSystem;
using spectral::Complex;
using spectral::LatticePtr;
using spectral::SpectralField;

// Position and velocity per component.
struct CauchyData {
  std::vector<SpectralField> position;
  std::vector<SpectralField> velocity;

  int components() const noexcept { return static_cast<int>(position.size()); }
  void validate() const;
};

// u = plus + minus, u_t = i<D>(plus - minus).
struct HalfWavePair {
  SpectralField plus;
  SpectralField minus;
  double mass = 1.0;
};

using HalfWaveState = std::vector<HalfWavePair>;

struct PositionVelocity {
  SpectralField position;
  SpectralField velocity;
};

HalfWavePair decompose(const SpectralField& u, const SpectralField& u_t, double mass);
PositionVelocity reconstruct(const HalfWavePair& pair);
HalfWaveState initial_pair(const CauchyData& data, const MassSystem& system);
CauchyData to_cauchy(const HalfWaveState& state);

// exact solution of the linear Klein-Gordon flow at time t
CauchyData linear_exact(const CauchyData& data, const std::vector<double>& masses, double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<HalfWaveState> states;
  double step_size = 0.0;  // spacing between stored samples

  int components() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
  void validate() const;
};

// Thrown when a run goes non-finite or its norm exceeds the abort threshold.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

// H^s norm of the physical field u = plus + minus
double position_norm(const HalfWavePair& pair, double s);
// (sum over components of position_norm^2)^(1/2)
double state_norm(const HalfWaveState& state, double s);
// H^s distance between two states, both halves, all components
double state_distance(const HalfWaveState& a, const HalfWaveState& b, double s);

/**
 * Conserved energy of the Galerkin-truncated system.  The quadratic part
 * sum_i 1/2 (|u_t|^2 + |grad u|^2 + m^2 |u|^2) is always included; for a
 * scalar system N(u) = c u^2 with real c the potential -c/3 int u^3 is added.
 */
double energy(const HalfWaveState& state, const MassSystem& system);
bool has_conserved_energy(const MassSystem& system);

/**
 * Lawson fourth-order integrator in half-wave variables.  The linear flow
 * exp(+/- i dt <D>) is applied exactly; RK4 integrates the rotated forcing
 * -/+ i N(u) / (2<D>).
 */
class LawsonStepper {
 public:
  LawsonStepper(const MassSystem& system, const LatticePtr& lattice, double dt);

  void step(HalfWaveState& state) const;
  double dt() const noexcept { return dt_; }

 private:
  using Stage = std::vector<SpectralField>;  // plus_0, minus_0, plus_1, ...

  Stage forcing(const Stage& y) const;
  void rotate(Stage& y, const std::vector<std::vector<Complex>>& phase) const;

  const MassSystem* system_;
  LatticePtr lattice_;
  double dt_;
  std::vector<std::vector<Complex>> full_;  // per component exp(i dt <xi>)
  std::vector<std::vector<Complex>> half_;  // per component exp(i dt/2 <xi>)
  std::vector<std::vector<double>> inv_two_bracket_;
};

HalfWaveState step_exponential(const HalfWaveState& state, const MassSystem& system, double dt);

struct TimeSeriesRecord {
  double time = 0.0;
  int component = 0;
  double hs_norm = 0.0;
  double energy = 0.0;
  double scattering_increment = 0.0;
};

struct EvolveOptions {
  int sample_every = 1;
  double sobolev_index = 0.5;
  double abort_factor = 1e6;
  bool store_states = true;
};

struct EvolveResult {
  Trajectory trajectory;
  std::vector<TimeSeriesRecord> series;
  double initial_norm = 0.0;
  double max_norm = 0.0;
};

// Integrates to T with round(T/dt) steps; samples every `sample_every` steps
// (the endpoint is sampled only if it falls on the stride).
EvolveResult evolve(const CauchyData& data, const MassSystem& system, double horizon, double dt,
                    const EvolveOptions& options = {});

struct PicardOptions {
  double sobolev_index = 0.5;
  // stop once successive distances fall below this fraction of the iterate norm
  double relative_floor = 1e-13;
  bool keep_all_iterates = false;
};

struct PicardReport {
  std::vector<Trajectory> iterates;  // final iterate only unless keep_all_iterates
  std::vector<double> successive_distances;
  double contraction_factor = 0.0;
  bool diverged = false;
  int iterations = 0;
};

PicardReport picard_iterate(const CauchyData& data, const MassSystem& system, double horizon,
                            double dt, int iters, const PicardOptions& options = {});

struct ScatteringResult {
  std::vector<HalfWavePair> final_profile;  // w(T) per component
  std::vector<double> times;
  std::vector<double> increments;  // increments[j] = |w(t_j) - w(t_{j-1})|, increments[0] = 0
};

// w^+/-(t) = exp(-/+ i t <D>) u^+/-(t)
HalfWaveState unrotate(const HalfWaveState& state, double t);
ScatteringResult scattering_state(const Trajectory& traj, double s = 0.5);

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path);
Trajectory read_trajectory(const std::filesystem::path& path);

}  // namespace kglab::dynamics
