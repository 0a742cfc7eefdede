#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tccp/errors.hpp"
#include "tccp/quantizer.hpp"
#include "test_support.hpp"

namespace tccp {
namespace {

using test::design_network;

// Oracle: dense LU inverse of the full matrix, junction rows/cols selected.
Eigen::MatrixXd brute_block(const CircuitNetwork& net) {
  Eigen::MatrixXd c = assemble_cap_matrix(net).c;
  Eigen::MatrixXd inv = c.fullPivLu().inverse();
  auto j = net.junction_indices();
  std::vector<Eigen::Index> idx(j.begin(), j.end());
  return inv(idx, idx);
}

double max_rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      double d = std::abs(a(i, k) - b(i, k));
      double s = std::max(std::abs(b(i, k)), 1e-300);
      if (b(i, k) == 0.0) {
        worst = std::max(worst, d == 0.0 ? 0.0 : d / b.cwiseAbs().maxCoeff());
      } else {
        worst = std::max(worst, d / s);
      }
    }
  }
  return worst;
}

TEST(Quantizer, ChargingConstant) {
  const double e = 1.602176634e-19, h = 6.62607015e-34;
  EXPECT_NEAR(kChargingConstant, e * e / (2 * h) * 1e-9 * 1e15, 1e-12);
  EXPECT_NEAR(kChargingConstant, 19.3702, 1e-4);
}

TEST(Quantizer, DesignADiagonal) {
  auto c = assemble_cap_matrix(design_network('A')).c;
  Eigen::VectorXd expect(5);
  expect << 84.0, 112.0, 60.7, 112.0, 84.0;
  EXPECT_LT((c.diagonal() - expect).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_DOUBLE_EQ(c(1, 2), -17.8);
  EXPECT_DOUBLE_EQ(c(1, 3), -21.0);
  EXPECT_TRUE(c.isApprox(c.transpose()));
}

TEST(Quantizer, NoMutualCapsGivesDiagonal) {
  auto net = parse_netlist(
      "node A junction ejb=5GHz ejs=5GHz\nnode B junction ejb=5GHz ejs=5GHz\n"
      "gcap A 10fF\ngcap B 20fF\ncap A B 0fF\n");
  auto c = assemble_cap_matrix(net).c;
  EXPECT_DOUBLE_EQ(c(0, 0), 10.0);
  EXPECT_DOUBLE_EQ(c(1, 1), 20.0);
  EXPECT_DOUBLE_EQ(c(0, 1), 0.0);
  auto blk = reduce_to_junction_block(assemble_cap_matrix(net), net);
  EXPECT_DOUBLE_EQ(blk.a(0, 0), 0.1);
  EXPECT_DOUBLE_EQ(blk.a(1, 0), 0.0);
}

TEST(Quantizer, TwoNodeMatrix) {
  auto net = parse_netlist(
      "node A junction ejb=5GHz ejs=5GHz\nnode B junction ejb=5GHz ejs=5GHz\n"
      "gcap A 1fF\ngcap B 1fF\ncap A B 1fF\n");
  Eigen::Matrix2d expect;
  expect << 2, -1, -1, 2;
  EXPECT_TRUE(assemble_cap_matrix(net).c.isApprox(expect));
}

TEST(Quantizer, JunctionCapAddsToGround) {
  auto net = parse_netlist(
      "node A junction ejb=5GHz ejs=5GHz cj=4fF\ngcap A 10fF\n");
  EXPECT_DOUBLE_EQ(assemble_cap_matrix(net).c(0, 0), 14.0);
}

TEST(Quantizer, DesignABlockMatchesBruteForce) {
  auto net = design_network('A');
  auto blk = reduce_to_junction_block(assemble_cap_matrix(net), net);
  EXPECT_LT(max_rel(blk.a, brute_block(net)), 1e-12);
  // Frozen from the LU oracle.
  EXPECT_NEAR(1.0 / blk.a(0, 0), 82.6807407163, 1e-8);
  EXPECT_NEAR(1.0 / blk.a(1, 1), 53.6138855793, 1e-8);
  EXPECT_NEAR(blk.a(0, 1), 5.0827580e-4, 1e-10);
  EXPECT_NEAR(blk.a(0, 2), 4.734080e-5, 1e-10);
}

TEST(Quantizer, PadMediatesPositiveCoupling) {
  auto net = parse_netlist(
      "node A junction ejb=5GHz ejs=5GHz\nnode B junction ejb=5GHz ejs=5GHz\n"
      "node P passive\ngcap A 50fF\ngcap B 50fF\ngcap P 30fF\n"
      "cap A P 10fF\ncap B P 10fF\n");
  auto blk = reduce_to_junction_block(assemble_cap_matrix(net), net);
  EXPECT_GT(blk.a(0, 1), 0.0);
}

TEST(Quantizer, ZeroCapacitanceNodeIsReported) {
  CircuitNetwork net;
  net.nodes = {{"A", NodeKind::Junction, 5, 5, 0, false},
               {"P", NodeKind::Passive, 0, 0, 0, false}};
  net.ground_caps["A"] = 10.0;
  net.mutual_caps[make_pair_key("A", "P")] = 0.0;
  try {
    reduce_to_junction_block(assemble_cap_matrix(net), net);
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("'P'"), std::string::npos);
  }
}

TEST(Quantizer, SchurMatchesSubmatrixOnRandomMatrices) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + trial % 6;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) m(i, k) = u(rng);
    Eigen::MatrixXd c = m * m.transpose() + n * Eigen::MatrixXd::Identity(n, n);
    std::vector<std::size_t> keep;
    for (int i = 0; i < n; i += 2) keep.push_back(static_cast<std::size_t>(i));
    std::vector<Eigen::Index> idx(keep.begin(), keep.end());
    Eigen::MatrixXd sub = c.fullPivLu().inverse()(idx, idx);
    EXPECT_LT(max_rel(schur_junction_inverse(c, keep), sub), 1e-12);
  }
}

TEST(Quantizer, TwoPadClosedFormMatchesGenericInversion) {
  for (char d : {'A', 'B'}) {
    auto net = design_network(d);
    auto c = test::design_caps(d);
    auto closed = symmetric_two_pad_inverse(c[0], c[1], c[2], c[3], c[4], c[5]);
    EXPECT_LT(max_rel(closed.a, brute_block(net)), 1e-10) << d;
  }
}

TEST(Quantizer, OnePadClosedFormMatchesGenericInversion) {
  for (char d : {'C', 'D'}) {
    auto net = design_network(d);
    auto c = test::design_caps(d);
    auto closed = symmetric_one_pad_inverse(c[0], c[1], c[2], c[3], c[4]);
    EXPECT_LT(max_rel(closed.a, brute_block(net)), 1e-10) << d;
  }
}

TEST(Quantizer, ZeroQubitPadCapDecouplesQubits) {
  auto two = symmetric_two_pad_inverse(72.5, 61.7, 25.1, 0.0, 17.8, 21.0);
  EXPECT_EQ(two.a(0, 1), 0.0);
  EXPECT_EQ(two.a(0, 2), 0.0);
  auto one = symmetric_one_pad_inverse(71.7, 108.8, 36.0, 0.0, 23.7);
  EXPECT_EQ(one.a(0, 1), 0.0);
  EXPECT_EQ(one.a(0, 2), 0.0);
  EXPECT_EQ(one.a(1, 2), 0.0);
}

TEST(Quantizer, DegenerateClosedFormThrows) {
  EXPECT_THROW(symmetric_one_pad_inverse(0.0, 0.0, 0.0, 0.0, 0.0),
               NumericError);
}

TEST(Quantizer, DesignAEnergies) {
  auto net = design_network('A');
  auto e = energies_from_inverse(
      reduce_to_junction_block(assemble_cap_matrix(net), net));
  EXPECT_NEAR(e.ec(0), 0.234277404349, 1e-10);
  EXPECT_NEAR(e.ec(1), 0.361291279589, 1e-10);
  EXPECT_NEAR(e.ejk(0, 1) * 1e3, 9.84541883474, 1e-8);
  EXPECT_NEAR(e.ejk(0, 2) * 1e3, 0.91700214959, 1e-8);
}

TEST(Quantizer, DoublingCapsHalvesEnergies) {
  auto net = design_network('B');
  auto scaled = net;
  for (auto& [k, v] : scaled.ground_caps) v *= 2.0;
  for (auto& [k, v] : scaled.mutual_caps) v *= 2.0;
  auto e1 = energies_from_inverse(
      reduce_to_junction_block(assemble_cap_matrix(net), net));
  auto e2 = energies_from_inverse(
      reduce_to_junction_block(assemble_cap_matrix(scaled), scaled));
  EXPECT_LT(max_rel(2.0 * e2.e, e1.e), 1e-12);
}

TEST(Quantizer, SquidExamples) {
  auto a = squid_effective_ej(9, 9, 0);
  EXPECT_DOUBLE_EQ(a.ej, 18.0);
  EXPECT_DOUBLE_EQ(a.phi0, 0.0);
  EXPECT_NEAR(squid_effective_ej(9, 9, 0.5).ej, 0.0, 1e-7);
  EXPECT_NEAR(squid_effective_ej(12, 6, 0.5).ej, 6.0, 1e-12);
  EXPECT_THROW(squid_effective_ej(0, 0, 0.1), NumericError);
}

TEST(Quantizer, SquidPeriodicAndEven) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    double ejs = 10.0 * u(rng);
    double ejb = ejs + 10.0 * u(rng);
    double f = 4.0 * u(rng) - 2.0;
    double e = squid_effective_ej(ejb, ejs, f).ej;
    EXPECT_NEAR(squid_effective_ej(ejb, ejs, f + 1.0).ej, e, 1e-9);
    EXPECT_NEAR(squid_effective_ej(ejb, ejs, -f).ej, e, 1e-9);
    EXPECT_LE(e, ejb + ejs + 1e-12);
    EXPECT_GE(e, ejb - ejs - 1e-9);
    double f0 = squid_flux_for_ej(ejb, ejs, e);
    EXPECT_NEAR(squid_effective_ej(ejb, ejs, f0).ej, e, 1e-7);
  }
}

TEST(Quantizer, AsymmetricPhaseOffset) {
  // phi0 = atan(-(1/3) tan(pi/4)) for ejb = 2 ejs at a quarter flux quantum.
  EXPECT_NEAR(squid_effective_ej(2, 1, 0.25).phi0, std::atan(-1.0 / 3.0),
              1e-14);
}

TEST(Quantizer, ModeParams) {
  auto m = mode_params(18.03, 0.2343);
  double xi = std::sqrt(2 * 0.2343 / 18.03);
  EXPECT_NEAR(m.omega, std::sqrt(8 * 18.03 * 0.2343) - 0.2343 * (1 - xi / 4),
              1e-14);
  EXPECT_NEAR(m.omega, 5.59, 0.005);
  EXPECT_DOUBLE_EQ(m.alpha, -0.2343);
  EXPECT_NEAR(m.n_zpf * m.phi_zpf, 0.5, 1e-15);
  EXPECT_FALSE(m.low_ej_ec);
  EXPECT_TRUE(mode_params(4.0, 0.25).low_ej_ec);
  EXPECT_LT(mode_params(18.0, 0.2343).omega, mode_params(18.1, 0.2343).omega);
}

TEST(Quantizer, InferEj) {
  EXPECT_NEAR(infer_ej_from_frequency(5.59, 0.2343), 18.03, 0.02);
  EXPECT_NEAR(infer_ej_from_frequency(6.83, 0.3613), 17.80, 0.02);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uec(0.1, 0.5), ur(25.0, 150.0);
  for (int i = 0; i < 300; ++i) {
    double ec = uec(rng), ej = ec * ur(rng);
    double w = mode_params(ej, ec).omega;
    double back = infer_ej_from_frequency(w, ec);
    EXPECT_NEAR(back / ej, 1.0, 1e-8);
    EXPECT_NEAR(mode_params(back, ec).omega, w, 1e-9);
  }
  EXPECT_THROW(infer_ej_from_frequency(1e4, 0.2), NumericError);
}

}  // namespace
}  // namespace tccp
