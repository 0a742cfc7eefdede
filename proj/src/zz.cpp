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

#include "tccp/zz.hpp"

#include <algorithm>
#include <cmath>

#include "tccp/spectrum.hpp"

namespace tccp {

ZZReport zz_perturbative(double w1, double w2, double wc, double a1,
                         double a2, double ac, double g12_mhz, double g1c_mhz,
                         double g2c_mhz) {
  const double g12 = g12_mhz * 1e-3;
  const double g1 = g1c_mhz * 1e-3;
  const double g2 = g2c_mhz * 1e-3;
  const double d1 = wc - w1;
  const double d2 = wc - w2;
  const double d12 = w1 - w2;

  ZZReport r;
  const double gmax = std::max({std::abs(g12), std::abs(g1), std::abs(g2)});
  const std::pair<const char*, double> dens[] = {
      {"Delta12 - alpha1", d12 - a1}, {"Delta12 + alpha2", d12 + a2},
      {"Delta1", d1},                 {"Delta2", d2},
      {"Delta1 + Delta2 - alphaC", d1 + d2 - ac}};
  double smallest = INFINITY;
  for (const auto& [name, v] : dens) {
    if (std::abs(v) < 10.0 * gmax && std::abs(v) < smallest) {
      smallest = std::abs(v);
      r.near_singular = true;
      r.offending = name;
    }
  }

  r.zz2 = -2.0 * g12 * g12 * (a1 + a2) / ((d12 - a1) * (d12 + a2));

  const double g3 = g12 * g1 * g2;
  r.zz3 = 4.0 * g3 / (d1 * d2) - 4.0 * g3 / (d2 * (a1 - d12)) -
          4.0 * g3 / (d1 * (a2 + d12));

  const double g4 = g1 * g1 * g2 * g2;
  r.zz4 = g4 / (d1 * d1) * (2.0 / (a2 + d12) + 1.0 / d2) +
          g4 / (d2 * d2) * (2.0 / (a1 - d12) + 1.0 / d1) -
          g4 * (d1 + d2) / (d1 * d1 * d2 * d2) -
          2.0 * g4 / (d1 + d2 - ac) * std::pow(1.0 / d1 + 1.0 / d2, 2);

  r.zz2 *= 1e3;
  r.zz3 *= 1e3;
  r.zz4 *= 1e3;
  r.zz_total = r.zz2 + r.zz3 + r.zz4;
  return r;
}

ZZReport zz_perturbative(const ModeSet& m) {
  std::array<double, 3> w{}, a{};
  for (std::size_t k = 0; k < 3; ++k) {
    w[k] = m.mode[k].omega - m.ec[k] * m.mode[k].xi / 18.0;
    a[k] = m.ec[k] * (1.0 - m.mode[k].xi / 6.0);
  }
  return zz_perturbative(w[0], w[2], w[1], a[0], a[2], a[1], m.g12, m.g1c,
                         m.g2c);
}

std::vector<ZZCompareRow> zz_compare(const QuantizedCircuit& circuit,
                                     const FluxAssignment& base,
                                     const std::vector<double>& grid,
                                     int levels) {
  std::vector<ZZCompareRow> rows;
  FluxAssignment flux = base;
  const auto& coupler = circuit.coupler_name();
  for (double f : grid) {
    flux[coupler] = f;
    ModeSet m = circuit.modes(flux);
    ZZCompareRow row;
    row.flux = f;
    auto pert = zz_perturbative(m);
    auto exact = zz_exact_checked(m, levels);
    row.zz_pert = pert.zz_total;
    row.zz_exact = exact.value;
    row.near_singular = pert.near_singular;
    row.converged = exact.converged;
    row.rel_err = exact.value == 0.0
                      ? (pert.zz_total == 0.0 ? 0.0 : INFINITY)
                      : std::abs(pert.zz_total - exact.value) /
                            std::abs(exact.value);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tccp
