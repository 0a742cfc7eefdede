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

#include <optional>
#include <string>
#include <vector>

#include "tccp/device.hpp"
#include "tccp/quantizer.hpp"

namespace tccp {

// Returns MHz. e_jk, E_J and E_C in GHz.
double pairwise_g(double e_jk, const ModeParams& mode_j,
                  const ModeParams& mode_k, double ej_j, double ej_k,
                  double ec_j, double ec_k);

struct CouplingInputs {
  double g12 = 0.0, g1c = 0.0, g2c = 0.0;  // MHz
  double omega1 = 0.0, omega2 = 0.0, omegac = 0.0;  // GHz
};

struct CouplingReport {
  double g12 = 0.0, g1c = 0.0, g2c = 0.0;  // MHz
  double omega1 = 0.0, omega2 = 0.0, omegac = 0.0;  // GHz
  double delta1 = 0.0, delta2 = 0.0;  // GHz, omegac - omega_k
  double sigma1 = 0.0, sigma2 = 0.0;  // GHz, omegac + omega_k
  double g_eff = 0.0;                 // MHz
  double omega1_eff = 0.0, omega2_eff = 0.0;  // GHz
};

CouplingReport effective_coupling(const CouplingInputs& in);
CouplingInputs coupling_inputs(const ModeSet& m);

struct OffPoint {
  double flux = 0.0;
  double omegac = 0.0;  // GHz
  double g_eff = 0.0;   // MHz, residual at the returned point
  int iterations = 0;
};

// Root of flux -> g_eff (the SWT g_eff with every coupler quantity re-evaluated)
// between flux_lo and flux_hi. `base` supplies the qubit biases.
OffPoint coupler_off_point(const QuantizedCircuit& circuit,
                           const FluxAssignment& base, double flux_lo,
                           double flux_hi);

// Bracket [0, f] whose upper end puts the coupler two sweet-spot couplings
// above the higher qubit, where the SWT g_eff is strongly negative.
std::pair<double, double> default_off_bracket(const QuantizedCircuit& circuit,
                                              const FluxAssignment& base);

// Frozen-g variant: coupler frequency at which the SWT g_eff vanishes for fixed
// g12, g_QC (MHz) and equal qubit frequencies omega_q (GHz). The root is
// searched on (omega_q, omegac_hi].
double scalar_off_frequency(double g12, double gqc, double omega_q,
                            double omegac_hi);

struct FluxSweepRow {
  double flux = 0.0;
  double ejc = 0.0;     // GHz
  double omegac = 0.0;  // GHz
  double g1c = 0.0, g2c = 0.0, g_eff = 0.0;  // MHz
  std::optional<double> zz_pert;   // MHz
  std::optional<double> zz_exact;  // MHz
  bool valid = true;
};

struct SweepOptions {
  bool with_zz = false;
  int levels = 5;
};

// Sweeps the flux of `junction` over `grid` (strictly increasing); the other
// junctions stay at `base`.
std::vector<FluxSweepRow> sweep_flux(const QuantizedCircuit& circuit,
                                     const FluxAssignment& base,
                                     const std::string& junction,
                                     const std::vector<double>& grid,
                                     const SweepOptions& opts = {});

std::vector<double> linspace(double from, double to, int steps);

}  // namespace tccp
