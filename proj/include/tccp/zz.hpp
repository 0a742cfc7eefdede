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

#include <string>
#include <vector>

#include "tccp/device.hpp"

namespace tccp {

struct ZZReport {
  double zz2 = 0.0, zz3 = 0.0, zz4 = 0.0, zz_total = 0.0;  // MHz
  bool near_singular = false;
  std::string offending;  // name of the smallest flagged denominator
};

// Frequencies in GHz; anharmonicities are positive magnitudes in GHz;
// couplings in MHz. Delta_k = omegac - omega_k, Delta_12 = omega1 - omega2.
//
// The third-order term carries the +2 g12 g1C g2C / (Delta_1 Delta_2)
// contribution and is evaluated with the 1/Delta_12 pieces combined, so the
// qubit-resonant point is regular. The coupler anharmonicity lowers the
// two-excitation coupler level: the last fourth-order denominator is
// Delta_1 + Delta_2 - alphaC.
ZZReport zz_perturbative(double omega1, double omega2, double omegac,
                         double alpha1, double alpha2, double alphac,
                         double g12, double g1c, double g2c);

// Perturbative ZZ with the bare ladder of the truncated Hamiltonian as
// input: omega - E_C xi / 18 for the 0-1 transition and E_C (1 - xi / 6)
// for the anharmonicity.
ZZReport zz_perturbative(const ModeSet& m);

struct ZZCompareRow {
  double flux = 0.0;
  double zz_pert = 0.0;   // MHz
  double zz_exact = 0.0;  // MHz
  double rel_err = 0.0;
  bool near_singular = false;
  bool converged = true;
};

std::vector<ZZCompareRow> zz_compare(const QuantizedCircuit& circuit,
                                     const FluxAssignment& base,
                                     const std::vector<double>& coupler_flux,
                                     int levels = 5);

}  // namespace tccp
