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

#include <array>
#include <optional>
#include <string>

#include "tccp/netlist.hpp"
#include "tccp/quantizer.hpp"

namespace tccp {

// Parameters of the three-mode (Q1, C, Q2) model at one bias point.
// Mode index 0 = Q1, 1 = C, 2 = Q2.
struct ModeSet {
  std::array<std::string, 3> names;
  std::array<double, 3> ej{};  // GHz
  std::array<double, 3> ec{};  // GHz
  std::array<ModeParams, 3> mode{};
  double e12 = 0.0, e1c = 0.0, e2c = 0.0;  // GHz
  double g12 = 0.0, g1c = 0.0, g2c = 0.0;  // MHz

  // Rebuilds mode parameters and couplings after ej/ec edits.
  void refresh();
};

// A parsed network with its charging energies. The three-mode view picks
// the coupler (by name, or the middle declared junction) and treats the
// other two junctions, in declaration order, as Q1 and Q2.
class QuantizedCircuit {
 public:
  explicit QuantizedCircuit(CircuitNetwork network,
                            std::optional<std::string> coupler = std::nullopt);

  const CircuitNetwork& network() const { return network_; }
  const CapMatrix& cap_matrix() const { return cap_; }
  const InverseBlock& inverse_block() const { return block_; }
  const EnergyTable& energies() const { return energies_; }

  bool has_three_modes() const { return three_modes_; }
  const std::array<std::string, 3>& mode_names() const;
  const std::string& coupler_name() const { return mode_names()[1]; }

  JunctionState junction_state(const std::string& name, double flux) const;
  // Fails on keys that are not junction nodes; missing keys mean flux 0.
  void check_flux(const FluxAssignment& flux) const;

  ModeSet modes(const FluxAssignment& flux) const;

  // Flux in [0, 1/2] that puts junction `name` at frequency omega (GHz).
  double flux_for_frequency(const std::string& name, double omega) const;

 private:
  CircuitNetwork network_;
  CapMatrix cap_;
  InverseBlock block_;
  EnergyTable energies_;
  bool three_modes_ = false;
  std::array<std::string, 3> names_;
  std::array<std::size_t, 3> energy_index_{};
};

}  // namespace tccp
