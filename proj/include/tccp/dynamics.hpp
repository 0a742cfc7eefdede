// Copyright 2026 The tccp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tccp/device.hpp"
#include "tccp/spectrum.hpp"
#include "tccp/tomography.hpp"

namespace tccp {

using SparseH = Eigen::SparseMatrix<double>;

struct Trajectory {
  enum class Kind { Constant, CosineRamp };
  Kind kind = Kind::Constant;
  double from = 0.0;
  double to = 0.0;  // ignored for Constant

  static Trajectory constant(double v) { return {Kind::Constant, v, v}; }
  static Trajectory cosine_ramp(double a, double b) {
    return {Kind::CosineRamp, a, b};
  }
  // s in [0, 1] is the fraction of the segment elapsed.
  double at(double s) const;
  double start() const { return from; }
  double end() const { return kind == Kind::Constant ? from : to; }
};

struct Segment {
  double duration = 0.0;  // ns
  std::map<std::string, Trajectory> flux;
};

struct PulseSchedule {
  std::vector<Segment> segments;
  double dt = 0.01;  // ns

  double total_duration() const;
  FluxAssignment flux_at(double t, const FluxAssignment& base = {}) const;
  // Highest frequency in the flux trajectories, GHz. A cosine ramp of length
  // T counts as 1 / (2 T).
  double max_frequency() const;
  // Durations > 0, continuity at boundaries, dt <= 1 / (50 max_frequency).
  void validate() const;
};

// Real symmetric Hamiltonian (GHz) as a function of time (ns).
using HamiltonianFn = std::function<SparseH(double)>;

struct EvolveResult {
  Eigen::MatrixXcd state;               // columns evolve independently
  std::vector<double> times;            // segment boundaries
  std::vector<Eigen::MatrixXcd> trajectory;  // state at each boundary
};

// Propagates the columns of psi0 through the schedule with exponential
// midpoint steps. Segments whose trajectories are all constant are applied
// exactly through one eigendecomposition.
EvolveResult evolve(const HamiltonianFn& h, const Eigen::MatrixXcd& psi0,
                    const PulseSchedule& schedule);

// exp(-i 2 pi H dt) applied to the columns of psi (in place).
void expmv(const SparseH& h, double dt, Eigen::MatrixXcd& psi);

// Sparse three-mode Hamiltonian, same content as build_hamiltonian.
class ThreeModeOperators {
 public:
  explicit ThreeModeOperators(int levels);
  int levels() const { return levels_; }
  SparseH hamiltonian(const HamiltonianParams& p) const;
  SparseH hamiltonian(const ModeSet& m) const;

 private:
  int levels_;
  std::array<Eigen::VectorXi, 3> occupation_;
  SparseH x1c_, x2c_, x12_;
};

// Index of the first qubit state |q1 q2> in the three-mode basis.
int computational_index(int q1, int q2, int levels);

struct ChevronMap {
  std::vector<double> flux;
  std::vector<double> delay;  // ns
  Eigen::MatrixXd p;          // rows: flux, cols: delay
};

ChevronMap swap_chevron(const QuantizedCircuit& circuit,
                        const FluxAssignment& base, const std::string& excite,
                        const std::vector<double>& coupler_flux,
                        const std::vector<double>& delay,
                        int levels = kDefaultLevels);

// Dominant nonzero frequency of a uniformly sampled signal (same unit as
// 1/spacing): mean removal, Hann window, 16x zero padding, parabolic peak
// refinement. Empty when nothing rises above the floor.
std::optional<double> dominant_frequency(const std::vector<double>& signal,
                                         double spacing);

// Per-flux g_eff estimate in MHz (peak frequency / 2).
std::vector<std::optional<double>> chevron_fft(const ChevronMap& map);

struct RamseyResult {
  double fringe0 = 0.0;  // MHz, control in |0>
  double fringe1 = 0.0;  // MHz, control in |1>
  double zz = 0.0;       // MHz
  double detuning = 0.0; // MHz, virtual detuning used
};

// Fringe frequency of the target qubit with the control prepared in
// `control_state`. The frame runs `detuning` MHz below the dressed target
// transition for control |0>.
double ramsey_fringe(const QuantizedCircuit& circuit,
                     const FluxAssignment& flux, const std::string& control,
                     int control_state, const std::vector<double>& times,
                     double detuning, int levels = kDefaultLevels);

// Both fringes and their difference. A detuning <= 0 picks one with ten
// fringes over the span plus twice the expected |ZZ|.
RamseyResult ramsey_zz(const QuantizedCircuit& circuit,
                       const FluxAssignment& flux, const std::string& control,
                       const std::vector<double>& times, double detuning = 0.0,
                       int levels = kDefaultLevels);

struct CZResult {
  Mat4c raw;        // dressed computational block
  Mat4c corrected;  // after the single-qubit Z frame change
  double leakage = 0.0;
  double cond_phase = 0.0;  // rad, wrapped to [0, 2 pi)
  double fidelity = 0.0;
  double hold = 0.0;  // ns
};

struct CZOptions {
  int levels = 4;
  double dt = 0.01;  // ns
};

// Flat-top pulse on the coupler flux: cosine ramp idle -> gate, hold,
// cosine ramp back. Qubit biases come from `idle`.
CZResult adiabatic_cz(const QuantizedCircuit& circuit,
                      const FluxAssignment& idle, double gate_flux,
                      double ramp_ns, double hold_ns,
                      const CZOptions& opts = {});

// Smallest hold in [0, hold_max] giving conditional phase pi.
CZResult tune_cz_hold(const QuantizedCircuit& circuit,
                      const FluxAssignment& idle, double gate_flux,
                      double ramp_ns, double hold_max,
                      const CZOptions& opts = {});

}  // namespace tccp
