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

#include "tccp/device.hpp"

#include <cmath>

#include "tccp/coupling.hpp"
#include "tccp/errors.hpp"

namespace tccp {

void ModeSet::refresh() {
  for (std::size_t k = 0; k < 3; ++k) mode[k] = mode_params(ej[k], ec[k]);
  g1c = pairwise_g(e1c, mode[0], mode[1], ej[0], ej[1], ec[0], ec[1]);
  g2c = pairwise_g(e2c, mode[2], mode[1], ej[2], ej[1], ec[2], ec[1]);
  g12 = pairwise_g(e12, mode[0], mode[2], ej[0], ej[2], ec[0], ec[2]);
}

QuantizedCircuit::QuantizedCircuit(CircuitNetwork network,
                                   std::optional<std::string> coupler)
    : network_(std::move(network)) {
  validate_network(network_);
  cap_ = assemble_cap_matrix(network_);
  block_ = reduce_to_junction_block(cap_, network_);
  energies_ = energies_from_inverse(block_);

  auto junctions = network_.junction_names();
  if (junctions.size() != 3) {
    if (coupler) {
      throw std::invalid_argument(
          "a coupler was named but the network does not have three junctions");
    }
    return;
  }
  three_modes_ = true;
  std::string c = coupler.value_or(junctions[1]);
  std::vector<std::string> qubits;
  bool found = false;
  for (const auto& j : junctions) {
    if (j == c) {
      found = true;
    } else {
      qubits.push_back(j);
    }
  }
  if (!found) {
    throw std::invalid_argument("coupler '" + c + "' is not a junction node");
  }
  names_ = {qubits[0], c, qubits[1]};
  for (std::size_t k = 0; k < 3; ++k) {
    energy_index_[k] = energies_.index_of(names_[k]);
  }
}

const std::array<std::string, 3>& QuantizedCircuit::mode_names() const {
  if (!three_modes_) {
    throw std::invalid_argument(
        "operation needs a network with exactly three junction nodes");
  }
  return names_;
}

JunctionState QuantizedCircuit::junction_state(const std::string& name,
                                               double flux) const {
  const auto& node = network_.nodes[network_.index_of(name)];
  if (node.kind != NodeKind::Junction) {
    throw std::invalid_argument("node '" + name + "' is not a junction");
  }
  return squid_effective_ej(node.ejb, node.ejs, flux);
}

void QuantizedCircuit::check_flux(const FluxAssignment& flux) const {
  for (const auto& [name, value] : flux) {
    if (!network_.contains(name) ||
        network_.nodes[network_.index_of(name)].kind != NodeKind::Junction) {
      throw std::invalid_argument("flux given for '" + name +
                                  "', which is not a junction node");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("flux for '" + name + "' is not finite");
    }
  }
}

ModeSet QuantizedCircuit::modes(const FluxAssignment& flux) const {
  const auto& names = mode_names();
  check_flux(flux);
  ModeSet m;
  m.names = names;
  for (std::size_t k = 0; k < 3; ++k) {
    auto it = flux.find(names[k]);
    double f = it == flux.end() ? 0.0 : it->second;
    m.ej[k] = junction_state(names[k], f).ej;
    m.ec[k] = energies_.ec(energy_index_[k]);
    if (!(m.ej[k] > 0.0)) {
      throw NumericError("junction '" + names[k] +
                         "' has vanishing E_J at the requested flux");
    }
  }
  m.e1c = energies_.ejk(energy_index_[0], energy_index_[1]);
  m.e2c = energies_.ejk(energy_index_[2], energy_index_[1]);
  m.e12 = energies_.ejk(energy_index_[0], energy_index_[2]);
  m.refresh();
  return m;
}

double QuantizedCircuit::flux_for_frequency(const std::string& name,
                                            double omega) const {
  const auto& node = network_.nodes[network_.index_of(name)];
  if (node.kind != NodeKind::Junction) {
    throw std::invalid_argument("node '" + name + "' is not a junction");
  }
  double ec = energies_.ec(energies_.index_of(name));
  double ej = infer_ej_from_frequency(omega, ec);
  return squid_flux_for_ej(node.ejb, node.ejs, ej);
}

}  // namespace tccp
