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
#include <array>
#include <string>
#include <vector>

#include "tccp/device.hpp"

namespace tccp {

inline constexpr int kDefaultLevels = 5;

// Everything the truncated Hamiltonian needs, energies in GHz.
struct HamiltonianParams {
  std::array<double, 3> omega{};
  std::array<double, 3> ec{};
  std::array<double, 3> xi{};
  double g12 = 0.0, g1c = 0.0, g2c = 0.0;
};

HamiltonianParams hamiltonian_params(const ModeSet& m);

struct TruncatedHamiltonian {
  int levels = 0;
  Eigen::MatrixXd h;  // GHz, basis index (n1*L + nc)*L + n2
};

inline int basis_index(int n1, int nc, int n2, int levels) {
  return (n1 * levels + nc) * levels + n2;
}

// Diagonal ladder of a single mode at occupation n.
double ladder_energy(double omega, double ec, double xi, int n);

TruncatedHamiltonian build_hamiltonian(const HamiltonianParams& p, int levels);
TruncatedHamiltonian build_hamiltonian(const ModeSet& m, int levels);

struct Spectrum {
  int levels = 0;
  Eigen::VectorXd energies;  // GHz, ascending
  Eigen::MatrixXd vectors;   // columns are eigenvectors
  std::vector<int> labels;   // bare index of largest overlap per eigenvector
  std::vector<double> overlaps;
  bool ambiguous = false;
  double max_residual = 0.0;

  // Eigenvector index of the dressed state continuously connected to the
  // given bare state; throws LabelAmbiguityError below 0.5 overlap.
  int dressed_index(int bare) const;
  double energy_of(int n1, int nc, int n2) const;
};

Spectrum eigensolve(const TruncatedHamiltonian& h);

double zz_exact(const Spectrum& s);  // MHz

struct CheckedValue {
  double value = 0.0;      // at the requested truncation
  double reference = 0.0;  // one level higher
  bool converged = false;  // relative change < 1%
};

// ZZ at `levels` with a truncation check against levels + 1.
CheckedValue zz_exact_checked(const ModeSet& m, int levels);

struct DressedCoupling {
  double g_eff = 0.0;      // MHz, signed
  double ej2 = 0.0;        // tuned E_J of Q2, GHz
  double splitting = 0.0;  // MHz
};

// Tunes Q2's E_J so that the single-excitation dressed states are equal
// mixtures of |100> and |001>, then returns half their gap. The sign is
// positive when the upper state is the symmetric combination.
DressedCoupling dressed_geff(const ModeSet& m, int levels = kDefaultLevels);
DressedCoupling dressed_geff(const QuantizedCircuit& circuit,
                             const FluxAssignment& flux,
                             int levels = kDefaultLevels);

// Half the minimum of a hyperbola sqrt(a (x - x0)^2 + 4 g^2) fitted through
// the samples around the smallest gap. Gaps in MHz.
double fit_hyperbola_g(const std::vector<double>& x,
                       const std::vector<double>& gap);

struct AnticrossResult {
  double g_qc = 0.0;     // MHz
  double gap_min = 0.0;  // MHz, smallest sampled gap
  double flux_at_min = 0.0;
  std::vector<double> omegac;  // bare coupler frequency per grid point
  std::vector<double> gaps;    // MHz
};

AnticrossResult anticross_gqc(const QuantizedCircuit& circuit,
                              const FluxAssignment& base,
                              const std::string& qubit,
                              const std::vector<double>& coupler_flux_grid,
                              int levels = kDefaultLevels);

struct TransmonLevels {
  double omega01 = 0.0;  // GHz
  double alpha = 0.0;    // GHz, omega12 - omega01
};

TransmonLevels exact_transmon_levels(double ej, double ec, int cutoff);

}  // namespace tccp
