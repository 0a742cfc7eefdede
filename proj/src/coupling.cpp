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

#include "tccp/coupling.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "tccp/errors.hpp"
#include "tccp/spectrum.hpp"
#include "tccp/zz.hpp"

namespace tccp {

double pairwise_g(double e_jk, const ModeParams& mj, const ModeParams& mk,
                  double ej_j, double ej_k, double ec_j, double ec_k) {
  const double ratio = std::pow(ej_j * ej_k / (ec_j * ec_k), 0.25);
  const double g = e_jk / std::numbers::sqrt2 * ratio *
                   (1.0 - (mj.xi + mk.xi) / 8.0);
  return 1e3 * g;
}

CouplingReport effective_coupling(const CouplingInputs& in) {
  CouplingReport r;
  r.g12 = in.g12;
  r.g1c = in.g1c;
  r.g2c = in.g2c;
  r.omega1 = in.omega1;
  r.omega2 = in.omega2;
  r.omegac = in.omegac;
  r.delta1 = in.omegac - in.omega1;
  r.delta2 = in.omegac - in.omega2;
  r.sigma1 = in.omegac + in.omega1;
  r.sigma2 = in.omegac + in.omega2;
  if (std::abs(r.delta1) < 1e-6 || std::abs(r.delta2) < 1e-6) {
    throw ResonanceError("coupler is resonant with a qubit");
  }
  const double g1 = in.g1c * 1e-3, g2 = in.g2c * 1e-3;
  const double s1 = 1.0 / r.delta1 + 1.0 / r.sigma1;
  const double s2 = 1.0 / r.delta2 + 1.0 / r.sigma2;
  r.g_eff = in.g12 - 1e3 * 0.5 * g1 * g2 * (s1 + s2);
  r.omega1_eff = in.omega1 - g1 * g1 * s1;
  r.omega2_eff = in.omega2 - g2 * g2 * s2;
  return r;
}

CouplingInputs coupling_inputs(const ModeSet& m) {
  CouplingInputs in;
  in.g12 = m.g12;
  in.g1c = m.g1c;
  in.g2c = m.g2c;
  in.omega1 = m.mode[0].omega;
  in.omegac = m.mode[1].omega;
  in.omega2 = m.mode[2].omega;
  return in;
}

OffPoint coupler_off_point(const QuantizedCircuit& circuit,
                           const FluxAssignment& base, double flux_lo,
                           double flux_hi) {
  const auto& coupler = circuit.coupler_name();
  FluxAssignment flux = base;
  auto report = [&](double f) {
    flux[coupler] = f;
    return effective_coupling(coupling_inputs(circuit.modes(flux)));
  };
  auto lo_r = report(flux_lo);
  auto hi_r = report(flux_hi);
  if (lo_r.delta1 * hi_r.delta1 <= 0.0 || lo_r.delta2 * hi_r.delta2 <= 0.0) {
    throw ResonanceError("coupler crosses a qubit inside the bracket");
  }
  double a = flux_lo, b = flux_hi;
  double fa = lo_r.g_eff, fb = hi_r.g_eff;
  if (fa * fb > 0.0) {
    throw NumericError("g_eff does not change sign inside the bracket");
  }
  constexpr double kTol = 1e-3;  // MHz
  OffPoint out;
  // Secant through the bracket ends; every third step bisects so a
  // one-sided secant cannot stall.
  for (int it = 1; it <= 80; ++it) {
    double x = b - fb * (b - a) / (fb - fa);
    if (!(x > a && x < b) || it % 3 == 0) x = 0.5 * (a + b);
    auto r = report(x);
    if (r.delta1 * lo_r.delta1 <= 0.0 || r.delta2 * lo_r.delta2 <= 0.0) {
      throw ResonanceError("coupler crosses a qubit inside the bracket");
    }
    if (std::abs(r.g_eff) < kTol) {
      out.flux = x;
      out.omegac = r.omegac;
      out.g_eff = r.g_eff;
      out.iterations = it;
      return out;
    }
    if ((r.g_eff < 0.0) == (fa < 0.0)) {
      a = x;
      fa = r.g_eff;
    } else {
      b = x;
      fb = r.g_eff;
    }
  }
  throw NumericError("coupler off point did not converge in 80 iterations");
}

std::pair<double, double> default_off_bracket(const QuantizedCircuit& circuit,
                                              const FluxAssignment& base) {
  FluxAssignment flux = base;
  const auto& coupler = circuit.coupler_name();
  flux[coupler] = 0.0;
  ModeSet m = circuit.modes(flux);
  double wq = std::max(m.mode[0].omega, m.mode[2].omega);
  double g = 1e-3 * std::max(std::abs(m.g1c), std::abs(m.g2c));
  return {0.0, circuit.flux_for_frequency(coupler, wq + 2.0 * g)};
}

double scalar_off_frequency(double g12, double gqc, double omega_q,
                            double omegac_hi) {
  const double g = gqc * 1e-3;
  auto f = [&](double wc) {
    return g12 * 1e-3 - g * g * (1.0 / (wc - omega_q) + 1.0 / (wc + omega_q));
  };
  double lo = omega_q + 1e-9;
  if (!(omegac_hi > lo) || f(omegac_hi) < 0.0 || f(lo) > 0.0) {
    throw NumericError("g_eff does not change sign inside the bracket");
  }
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13 * b; };
  auto r = boost::math::tools::toms748_solve(f, lo, omegac_hi, tol, iters);
  return 0.5 * (r.first + r.second);
}

std::vector<double> linspace(double from, double to, int steps) {
  if (steps < 1) throw std::invalid_argument("grid needs at least one step");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] =
        steps == 1 ? from : from + (to - from) * i / (steps - 1);
  }
  return out;
}

std::vector<FluxSweepRow> sweep_flux(const QuantizedCircuit& circuit,
                                     const FluxAssignment& base,
                                     const std::string& junction,
                                     const std::vector<double>& grid,
                                     const SweepOptions& opts) {
  const auto& names = circuit.mode_names();
  if (!circuit.network().contains(junction) ||
      std::find(names.begin(), names.end(), junction) == names.end()) {
    throw std::invalid_argument("junction '" + junction + "' not found");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("flux grid must be strictly increasing");
    }
  }
  std::vector<FluxSweepRow> rows;
  rows.reserve(grid.size());
  FluxAssignment flux = base;
  for (double f : grid) {
    flux[junction] = f;
    FluxSweepRow row;
    row.flux = f;
    row.ejc = circuit.junction_state(names[1], flux.count(names[1])
                                                   ? flux.at(names[1])
                                                   : 0.0)
                  .ej;
    try {
      ModeSet m = circuit.modes(flux);
      auto r = effective_coupling(coupling_inputs(m));
      row.omegac = r.omegac;
      row.g1c = r.g1c;
      row.g2c = r.g2c;
      row.g_eff = r.g_eff;
      row.valid = std::abs(r.delta1) >= 3e-3 * std::abs(r.g1c) &&
                  std::abs(r.delta2) >= 3e-3 * std::abs(r.g2c);
      if (opts.with_zz) {
        row.zz_pert = zz_perturbative(m).zz_total;
        try {
          auto z = zz_exact_checked(m, opts.levels);
          row.zz_exact = z.value;
          if (!z.converged) row.valid = false;
        } catch (const LabelAmbiguityError&) {
          // Degenerate qubits have no unique |100>/|001> labels; the
          // column stays empty and validity follows the detuning rule.
        }
      }
    } catch (const NumericError&) {
      row.omegac = row.g1c = row.g2c = row.g_eff = NAN;
      row.valid = false;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tccp
