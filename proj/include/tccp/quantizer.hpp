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
#include <string>
#include <vector>

#include "tccp/netlist.hpp"

namespace tccp {

// e^2 / (2h) expressed in GHz * fF (exact SI values of e and h).
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kChargingConstant =
    kElementaryCharge * kElementaryCharge / (2.0 * kPlanck) * 1e6;

struct CapMatrix {
  std::vector<std::string> names;  // network node order
  Eigen::MatrixXd c;               // fF
};

struct InverseBlock {
  std::vector<std::string> names;  // junction nodes, network order
  Eigen::MatrixXd a;               // 1/fF
};

struct EnergyTable {
  std::vector<std::string> names;
  // Diagonal: E_C of each junction node. Off-diagonal: coupling charging
  // energy E_jk. GHz.
  Eigen::MatrixXd e;

  double ec(std::size_t j) const { return e(j, j); }
  double ejk(std::size_t j, std::size_t k) const { return e(j, k); }
  std::size_t index_of(const std::string& name) const;
};

struct JunctionState {
  double ej = 0.0;    // GHz
  double phi0 = 0.0;  // rad
};

struct ModeParams {
  double omega = 0.0;    // GHz
  double alpha = 0.0;    // GHz, equals -E_C
  double xi = 0.0;
  double n_zpf = 0.0;
  double phi_zpf = 0.0;  // rad
  bool low_ej_ec = false;  // E_J / E_C < 20
};

CapMatrix assemble_cap_matrix(const CircuitNetwork& network);

// Junction rows/cols of the inverse capacitance matrix. Also computes the
// Schur complement path and throws NumericError if the two disagree.
InverseBlock reduce_to_junction_block(const CapMatrix& cap,
                                      const CircuitNetwork& network);

// Inverse of the Schur complement of the passive block; exposed for tests.
Eigen::MatrixXd schur_junction_inverse(const Eigen::MatrixXd& c,
                                       const std::vector<std::size_t>& keep);

// Closed forms for the symmetric layouts. Junction order (Q1, C, Q2).
InverseBlock symmetric_two_pad_inverse(double cQG, double cPG, double cCG,
                                       double cQP, double cPC, double cP12);
InverseBlock symmetric_one_pad_inverse(double cQG, double cPG, double cCG,
                                       double cQP, double cPC);

EnergyTable energies_from_inverse(const InverseBlock& block);

JunctionState squid_effective_ej(double ejb, double ejs, double flux);

// Smallest flux in [0, 1/2] with squid_effective_ej(...).ej == ej.
double squid_flux_for_ej(double ejb, double ejs, double ej);

ModeParams mode_params(double ej, double ec);

double infer_ej_from_frequency(double omega_target, double ec);

}  // namespace tccp
