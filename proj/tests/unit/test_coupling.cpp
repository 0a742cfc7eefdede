#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tccp/coupling.hpp"
#include "tccp/errors.hpp"
#include "test_support.hpp"

namespace tccp {
namespace {

CouplingInputs table_a() {
  CouplingInputs in;
  in.g12 = 9.62;
  in.g1c = in.g2c = 83.5;
  in.omega1 = in.omega2 = 5.59;
  in.omegac = 6.83;
  return in;
}

TEST(Coupling, PairwiseGZeroEnergy) {
  auto m = mode_params(18.0, 0.23);
  EXPECT_EQ(pairwise_g(0.0, m, m, 18.0, 18.0, 0.23, 0.23), 0.0);
}

TEST(Coupling, PairwiseGPrintedFormula) {
  double ej1 = 18.04, ejc = 17.80, ec1 = 0.2343, ecc = 0.3613, e = 0.00985;
  auto m1 = mode_params(ej1, ec1), mc = mode_params(ejc, ecc);
  double ratio = std::pow(ej1 * ejc / (ec1 * ecc), 0.25);
  double expect = e / std::sqrt(2.0) * ratio * (1 - (m1.xi + mc.xi) / 8) * 1e3;
  double g = pairwise_g(e, m1, mc, ej1, ejc, ec1, ecc);
  EXPECT_NEAR(g, expect, 1e-12);
  EXPECT_NEAR(g, 52.16, 0.05);
  EXPECT_DOUBLE_EQ(pairwise_g(e, mc, m1, ejc, ej1, ecc, ec1), g);
}

TEST(Coupling, TableAValue) {
  auto in = table_a();
  // Direct arithmetic, MHz^2 / GHz -> MHz via 1e-3.
  double d = 6.83 - 5.59, s = 6.83 + 5.59;
  double expect = 9.62 - 83.5 * 83.5 / 2 * 2 * (1 / d + 1 / s) * 1e-3;
  auto r = effective_coupling(in);
  EXPECT_NEAR(r.g_eff, expect, 1e-12);
  EXPECT_NEAR(r.g_eff, 3.436, 0.001);
  EXPECT_DOUBLE_EQ(r.delta1, 6.83 - 5.59);
  EXPECT_DOUBLE_EQ(r.sigma2, 6.83 + 5.59);
  EXPECT_LT(r.omega1_eff, r.omega1);
  EXPECT_NEAR(r.omega1 - r.omega1_eff,
              83.5 * 83.5 * (1 / d + 1 / s) * 1e-6, 1e-15);
}

TEST(Coupling, NoCouplerPath) {
  auto in = table_a();
  in.g1c = in.g2c = 0.0;
  EXPECT_DOUBLE_EQ(effective_coupling(in).g_eff, 9.62);
}

TEST(Coupling, FarCouplerLimit) {
  auto in = table_a();
  in.omegac = 1e6;
  auto r = effective_coupling(in);
  EXPECT_NEAR(r.g_eff, in.g12, 1e-3);
  EXPECT_GT(r.g_eff, 0.0);
}

TEST(Coupling, ResonanceIsAnError) {
  auto in = table_a();
  in.omegac = in.omega1 + 1e-7;
  EXPECT_THROW(effective_coupling(in), ResonanceError);
}

TEST(Coupling, MonotoneInCouplerFrequency) {
  auto in = table_a();
  double prev = -1e300;
  for (double wc = 5.7; wc < 12.0; wc += 0.01) {
    in.omegac = wc;
    double g = effective_coupling(in).g_eff;
    EXPECT_GT(g, prev);
    prev = g;
  }
}

TEST(Coupling, ScalarOffFrequency) {
  double w = scalar_off_frequency(9.62, 83.5, 5.59, 20.0);
  EXPECT_NEAR(w, 6.36155, 1e-4);
  auto in = table_a();
  in.omegac = w;
  EXPECT_LT(std::abs(effective_coupling(in).g_eff), 1e-3);
}

TEST(Coupling, NoSignChangeWithoutDirectCoupling) {
  EXPECT_THROW(scalar_off_frequency(0.0, 83.5, 5.59, 20.0), NumericError);
}

TEST(Coupling, NetworkOffPoint) {
  QuantizedCircuit circuit(test::design_network('A'));
  FluxAssignment base;
  auto [lo, hi] = default_off_bracket(circuit, base);
  auto off = coupler_off_point(circuit, base, lo, hi);
  EXPECT_NEAR(off.flux, 0.208325, 1e-4);
  EXPECT_NEAR(off.omegac, 6.0483, 1e-3);
  FluxAssignment at{{circuit.coupler_name(), off.flux}};
  auto r = effective_coupling(coupling_inputs(circuit.modes(at)));
  EXPECT_LT(std::abs(r.g_eff), 1e-3);
}

TEST(Coupling, OffPointBracketAcrossQubitFails) {
  QuantizedCircuit circuit(test::design_network('A'));
  EXPECT_THROW(coupler_off_point(circuit, {}, 0.0, 0.45), ResonanceError);
}

TEST(Coupling, SweepSingleRowMatchesDirect) {
  QuantizedCircuit circuit(test::design_network('B'));
  auto rows = sweep_flux(circuit, {}, "C", {0.1});
  ASSERT_EQ(rows.size(), 1u);
  auto r = effective_coupling(coupling_inputs(circuit.modes({{"C", 0.1}})));
  EXPECT_DOUBLE_EQ(rows[0].g_eff, r.g_eff);
  EXPECT_DOUBLE_EQ(rows[0].omegac, r.omegac);
  EXPECT_TRUE(rows[0].valid);
}

TEST(Coupling, DesignBSweepShape) {
  QuantizedCircuit circuit(test::design_network('B'));
  auto grid = linspace(0.0, 0.4, 81);
  auto rows = sweep_flux(circuit, {}, "C", grid);
  ASSERT_EQ(rows.size(), 81u);
  int crossings = 0;
  double prev = rows[0].g_eff;
  EXPECT_GT(prev, 0.0);
  for (std::size_t i = 1; i < rows.size() && rows[i].valid; ++i) {
    EXPECT_LT(rows[i].g_eff, prev);
    EXPECT_LT(rows[i].omegac, rows[i - 1].omegac);
    if ((rows[i].g_eff < 0) != (prev < 0)) ++crossings;
    prev = rows[i].g_eff;
  }
  EXPECT_EQ(crossings, 1);
  // The coupler passes through the qubits further down the grid.
  EXPECT_TRUE(std::any_of(rows.begin(), rows.end(),
                          [](const FluxSweepRow& r) { return !r.valid; }));
}

TEST(Coupling, SweepRejectsBadInput) {
  QuantizedCircuit circuit(test::design_network('B'));
  EXPECT_THROW(sweep_flux(circuit, {}, "P1", {0.0}), std::invalid_argument);
  EXPECT_THROW(sweep_flux(circuit, {}, "C", {0.2, 0.1}),
               std::invalid_argument);
}

TEST(Coupling, FarCouplerSignFollowsDirectCoupling) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    CouplingInputs in;
    in.g12 = (u(rng) - 0.5) * 20.0;
    if (std::abs(in.g12) < 0.5) continue;
    in.g1c = 100 * u(rng);
    in.g2c = 100 * u(rng);
    in.omega1 = 4 + u(rng);
    in.omega2 = 4 + u(rng);
    in.omegac = 1e7;
    EXPECT_EQ(effective_coupling(in).g_eff > 0, in.g12 > 0);
  }
}

}  // namespace
}  // namespace tccp
