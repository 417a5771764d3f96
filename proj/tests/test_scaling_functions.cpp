#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "airy_kernel_oracle.hpp"
#include "softedge/edge_table.hpp"
#include "softedge/scaling_functions.hpp"

using namespace softedge;

namespace {

const EdgeTable& table() {
  static const EdgeTable t = build_edge_table();
  return t;
}

double c_norm() { return std::pow(2.0, -1.0 / 6.0) * std::sqrt(std::numbers::pi); }

// Adaptive Gauss-Kronrod over [a, b].
template <class F>
double quad(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-11);
}

}  // namespace

class FTildeResidual : public ::testing::TestWithParam<double> {};

TEST_P(FTildeResidual, SchrodingerEquationHolds) {
  const FTildeSolution f = solve_f_tilde(GetParam(), table());
  EXPECT_LT(f.max_relative_residual(table()), 1e-6);
}

TEST_P(FTildeResidual, BoundaryReproducesAiry) {
  const double r = GetParam();
  const FTildeSolution f = solve_f_tilde(r, table());
  const double xm = table().x_max();
  EXPECT_NEAR(f.values.back(), c_norm() * boost::math::airy_ai(xm - r), 1e-8);
  EXPECT_NEAR(f.derivative.back(), c_norm() * boost::math::airy_ai_prime(xm - r), 1e-8);
}

TEST_P(FTildeResidual, OverlapDerivativeIsMinusQf) {
  // d/dx [q g~] = r q f~, i.e. J' = -q f with J = int_x^inf q f.
  const double r = GetParam();
  const FTildeSolution f = solve_f_tilde(r, table());
  const auto g = g_tilde(r, table(), f);
  const auto& q = table().q();
  const double h = table().step();
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < q.size(); i += 7) {
    auto qg = [&](std::size_t k) { return q[k] * g[k]; };
    const double d = (qg(i - 2) - 8 * qg(i - 1) + 8 * qg(i + 1) - qg(i + 2)) / (12 * h);
    worst = std::max(worst, std::abs(d - r * q[i] * f.values[i]) /
                                std::max(1.0, std::abs(f.values[i])));
  }
  EXPECT_LT(worst, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(SpectralParameters, FTildeResidual, ::testing::Values(-2.0, 0.5, 3.0));

TEST(FTilde, FreePotentialGivesAiry) {
  const std::vector<double> zero(table().size(), 0.0);
  const FTildeSolution f = solve_f_tilde_with_potential(0.0, table(), zero);
  double worst = 0.0;
  for (std::size_t i = 0; i < table().size(); i += 3) {
    const double exact = c_norm() * boost::math::airy_ai(table().x()[i]);
    worst = std::max(worst, std::abs(f.values[i] - exact));
  }
  // Relative to the amplitude of c Ai on the grid.
  EXPECT_LT(worst / (c_norm() * 0.54), 1e-6);
}

TEST(FTilde, RangeErrors) {
  EXPECT_THROW(solve_f_tilde(table().x_max() - 3.0, table()), std::out_of_range);
  EXPECT_THROW(solve_f_tilde(-41.0, table()), std::out_of_range);
  EXPECT_THROW(solve_f_tilde(std::nan(""), table()), std::out_of_range);
  EXPECT_NO_THROW(solve_f_tilde(table().x_max() - 4.0, table()));
  const std::vector<double> short_q(10, 0.0);
  EXPECT_THROW(solve_f_tilde_with_potential(0.0, table(), short_q), std::invalid_argument);
}

TEST(FTilde, InterpolatedPointMatchesNodes) {
  const FTildeSolution f = solve_f_tilde(1.0, table());
  const std::size_t i = 5000;
  const auto p = f.at(table(), table().x()[i]);
  EXPECT_DOUBLE_EQ(p.f, f.values[i]);
  EXPECT_DOUBLE_EQ(p.overlap, f.overlap[i]);
}

TEST(GTilde, VanishesAtZeroSpectralParameter) {
  const FTildeSolution f = solve_f_tilde(0.0, table());
  for (double v : g_tilde(0.0, table(), f)) ASSERT_EQ(v, 0.0);
}

TEST(GTilde, RightEndIsTailOnly) {
  for (double r : {-2.0, 1.0}) {
    const FTildeSolution f = solve_f_tilde(r, table());
    EXPECT_LT(std::abs(g_tilde(r, table(), f).back()), 1e-8);
  }
}

TEST(EdgeDos, VanishesAtOrigin) {
  EXPECT_NEAR(rho_edge_exact(0.0, table()), 0.0, 1e-12);
  EXPECT_NEAR(p_typ_exact(0.0, table()), 0.0, 1e-12);
}

TEST(EdgeDos, SmallDistanceAmplitude) {
  EXPECT_NEAR(rho_edge_exact(0.1, table()), 0.005, 0.05 * 0.005);
  for (double r : {0.02, 0.05, 0.1}) {
    EXPECT_NEAR(rho_edge_exact(r, table()) / (0.5 * r * r), 1.0, 0.02) << "r = " << r;
  }
}

TEST(EdgeDos, MatchesFredholmRoute) {
  for (double r : {0.1, 1.0, 2.0, 5.0}) {
    const double oracle = airy_kernel_oracle::dos_density(r);
    EXPECT_NEAR(rho_edge_exact(r, table()), oracle, 1e-6 * std::max(1.0, oracle)) << "r = " << r;
  }
}

TEST(EdgeDos, ApproachesSqrtLawFromAbove) {
  // The ratio to sqrt(r)/pi decreases toward 1 over the tabulated range.
  double previous = 2.0;
  for (double r : {3.0, 4.0, 5.0, 6.0}) {
    const double ratio = rho_edge_exact(r, table()) / (std::sqrt(r) / std::numbers::pi);
    EXPECT_GT(ratio, 1.0);
    EXPECT_LT(ratio, previous);
    previous = ratio;
  }
}

TEST(TypicalGap, MatchesFredholmRoute) {
  for (double r : {0.05, 0.2, 0.5, 1.0, 2.0, 3.0, 4.0}) {
    const double oracle = airy_kernel_oracle::gap_density(r);
    EXPECT_NEAR(p_typ_exact(r, table()), oracle, 1e-6 * std::max(oracle, 1e-2)) << "r = " << r;
  }
}

TEST(TypicalGap, QuadraticOnset) {
  EXPECT_NEAR(p_typ_exact(0.05, table()) / (0.05 * 0.05), 0.5, 0.01);
}

TEST(TypicalGap, Normalized) {
  const double mass = quad([](double r) { return p_typ_exact(r, table()); }, 0.0, 6.0);
  EXPECT_NEAR(mass, 1.0, 1e-3);
}

TEST(TypicalGap, SharesBracketWithDos) {
  for (double r : {0.3, 1.7, 4.2}) {
    EXPECT_EQ(p_typ_exact(r, table()), edge_bracket_integral(-r, table()));
    EXPECT_EQ(rho_edge_exact(r, table()), edge_bracket_integral(r, table()));
  }
}

TEST(TypicalGap, NegativeDistanceRejected) {
  EXPECT_THROW(p_typ_exact(-0.1, table()), std::domain_error);
  EXPECT_THROW(rho_edge_exact(-0.1, table()), std::domain_error);
}

TEST(ExactCurves, GridHalvingDrift) {
  EdgeTableOptions fine;
  fine.step = 1.0 / 1024.0;
  const EdgeTable f = build_edge_table(fine);
  for (double r : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0}) {
    EXPECT_NEAR(rho_edge_exact(r, table()), rho_edge_exact(r, f), 1e-4) << "r = " << r;
    EXPECT_NEAR(p_typ_exact(r, table()), p_typ_exact(r, f), 1e-4) << "r = " << r;
  }
}

TEST(ExactCurves, TruncationInsensitivity) {
  EdgeTableOptions wide;
  wide.x_max = 12.0;
  const EdgeTable w = build_edge_table(wide);
  for (double r : {0.5, 2.0, 5.0}) {
    EXPECT_NEAR(rho_edge_exact(r, table()), rho_edge_exact(r, w), 1e-5) << "r = " << r;
    EXPECT_NEAR(p_typ_exact(r, table()), p_typ_exact(r, w), 1e-5) << "r = " << r;
  }
}

TEST(Conditional, VanishAtSmallDistance) {
  EXPECT_LT(rho_edge_conditional(1e-4, 0.0, table()), 1e-6);
  EXPECT_LT(p_typ_conditional(1e-4, 0.0, table()), 1e-6);
}

TEST(Conditional, DosAveragesToUnconditional) {
  for (double r : {0.5, 1.0, 2.0}) {
    auto integrand = [&](double x) {
      const EdgePoint p = table().at(x);
      return rho_edge_conditional(r, x, table()) * p.R * p.F2;
    };
    const double num = quad(integrand, -8.0, 5.0);
    const double den = quad([&](double x) { return table().at(x).R * table().at(x).F2; }, -8.0, 5.0);
    EXPECT_NEAR(num / den / rho_edge_exact(r, table()), 1.0, 0.01) << "r = " << r;
  }
}

TEST(Conditional, GapDensityNormalizedAtEdge) {
  const double mass = quad([](double r) { return p_typ_conditional(r, 0.0, table()); }, 0.0, 8.0);
  EXPECT_NEAR(mass, 1.0, 1e-3);
}

TEST(Conditional, GapAveragesToUnconditional) {
  for (double r : {0.5, 1.5}) {
    auto integrand = [&](double x) {
      const EdgePoint p = table().at(x);
      return p_typ_conditional(r, x, table()) * p.R * p.F2;
    };
    EXPECT_NEAR(quad(integrand, -12.0 + r, 5.0) / p_typ_exact(r, table()), 1.0, 0.01)
        << "r = " << r;
  }
}

TEST(Conditional, ArgumentsOutsideGrid) {
  EXPECT_THROW(rho_edge_conditional(1.0, 11.0, table()), std::out_of_range);
  EXPECT_THROW(p_typ_conditional(3.0, -10.0, table()), std::out_of_range);
  EXPECT_THROW(p_typ_conditional(-1.0, 0.0, table()), std::domain_error);
}
