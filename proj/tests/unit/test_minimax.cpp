// Copyright 2026 The stinc Authors
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


#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "stinc/error.hpp"
#include "stinc/minimax.hpp"

namespace stinc {
namespace {

constexpr double kPi = std::numbers::pi;

const IncrementSpec kS{1, 1};
const std::vector<double> kA{1.0, 1.0};

TEST(WhiteNoiseLeastFavorable, ClosedForm) {
  const auto lf = white_noise_least_favorable(kS, 1, kA, 1.0);
  ASSERT_EQ(lf.f0.coeffs.size(), 2u);
  EXPECT_DOUBLE_EQ(lf.f0.coeffs[0], 1.0);
  EXPECT_DOUBLE_EQ(lf.f0.coeffs[1], 0.5);
  EXPECT_DOUBLE_EQ(lf.p1[0], 2.0);
  EXPECT_EQ(lf.p2[0], 0.0);
  EXPECT_TRUE(lf.valid);
  ASSERT_TRUE(lf.gamma.has_value());
  EXPECT_NEAR(std::abs((*lf.gamma)[0]), std::sqrt(0.5), 1e-8);
  EXPECT_NEAR(std::abs((*lf.gamma)[1]), std::sqrt(0.5), 1e-8);

  // rho0(lambda) = lambda^2 / (|1 - e^{i lambda}|^2 (1 + cos lambda))
  const auto f0 = assemble_density(lf.f0, kS);
  for (double l : {-2.0, -0.5, 0.7, 1.9}) {
    const double expected = l * l / (std::norm(1.0 - std::polar(1.0, l)) * (1.0 + std::cos(l)));
    EXPECT_NEAR(f0.rho(l), expected, 1e-12 * expected);
  }
}

TEST(WhiteNoiseLeastFavorable, DeltaAndScaling) {
  for (IncrementSpec s : {IncrementSpec{1, 1}, IncrementSpec{2, 3}}) {
    const auto lf = white_noise_least_favorable(s, 2, std::vector<double>{1.0, 0.0, 0.0}, 2.5);
    EXPECT_DOUBLE_EQ(lf.f0.coeffs[0], 2.5);
    for (std::size_t k = 1; k < lf.f0.coeffs.size(); ++k) EXPECT_EQ(lf.f0.coeffs[k], 0.0);
  }
  const auto a = white_noise_least_favorable(kS, 2, std::vector<double>{1.0, 1.0, 1.0}, 1.0);
  const auto b = white_noise_least_favorable(kS, 2, std::vector<double>{3.0, 3.0, 3.0}, 1.0);
  for (std::size_t k = 0; k < a.f0.coeffs.size(); ++k) EXPECT_NEAR(a.f0.coeffs[k], b.f0.coeffs[k], 1e-15);
}

TEST(WhiteNoiseLeastFavorable, NonPositiveWeights) {
  try {
    white_noise_least_favorable(kS, 1, std::vector<double>{1.0, -3.0}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPositivityViolation);
  }
  EXPECT_THROW(white_noise_least_favorable(kS, 1, kA, 0.0), Error);
}

TEST(PairObjective, ZeroAndAgreement) {
  const FourierTable f{{1.0}}, g{{4.0}};
  EXPECT_EQ(pair_objective(f, g, std::vector<double>(8, 0.0), std::vector<double>(8, 0.0), kS, 2), 0.0);

  InterpolationProblem p{kS, {1.0, 1.0, 1.0}, DensityModel::increment_constant(kS, 1.0),
                         DensityModel::increment_constant(kS, 0.25), {}};
  const auto sol = solve_functional(p);
  EXPECT_NEAR(pair_objective(sol.f_table, sol.g_table, sol.c, sol.e, kS, 2), sol.mse, 1e-8);
}

TEST(VerifySaddleD0, ClosedFormResiduals) {
  for (double sigma2 : {1.0, 0.25, 7.0}) {
    const auto lf = white_noise_least_favorable(kS, 1, kA, 1.0, sigma2);
    const auto r = verify_saddle_D0(lf, kS, 1, kA, DensityClass::d0(1.0));
    EXPECT_LE(r.eq_f, 1e-8);
    EXPECT_LE(r.eq_e, 1e-8);
    EXPECT_LE(r.worst_moment(), 1e-12);
    EXPECT_TRUE(r.modulus_evaluated);
    EXPECT_LE(r.modulus_f, 1e-8);
    EXPECT_LE(r.modulus_g, 1e-8);
    EXPECT_TRUE(std::isinf(r.cond_Gc));
  }
}

TEST(VerifySaddleD0, ZeroCandidateIsPureDefect) {
  auto lf = white_noise_least_favorable(kS, 1, kA, 1.0);
  lf.p1 = {0.0};
  lf.p2 = {0.0};
  lf.p1_vec = coupled_p1_vector(lf.p1, 2);
  lf.p2_vec = coupled_p2_vector(lf.p1, lf.p2, 2);
  const auto r = verify_saddle_D0(lf, kS, 1, kA, DensityClass::d0(1.0));
  EXPECT_NEAR(r.eq_f, std::sqrt(5.0), 1e-14);
  EXPECT_EQ(r.eq_e, 0.0);
}

TEST(VerifySaddleD0, ResidualGrowsWithPerturbation) {
  const auto lf = white_noise_least_favorable(kS, 1, kA, 1.0);
  double prev = 0.0;
  for (double d : {1e-4, 1e-3, 1e-2}) {
    auto p = lf;
    p.f0.coeffs[1] += d;
    const double r = verify_saddle_D0(p, kS, 1, kA, DensityClass::d0(1.0)).eq_f;
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(VerifySaddle, ClassKindChecked) {
  const auto lf = white_noise_least_favorable(kS, 1, kA, 1.0);
  EXPECT_THROW(verify_saddle_D0(lf, kS, 1, kA, DensityClass::dm({1.0})), Error);
  EXPECT_THROW(verify_saddle_DM(lf, kS, 1, kA, DensityClass::d0(1.0)), Error);
  EXPECT_THROW(DensityClass::dm({1.0, -0.1}).validate(), Error);
}

TEST(FixedPoint, DegenerateNoiseClassReachesClosedForm) {
  const auto cls = DensityClass::d0(1.0, 4.0);
  const auto lf = solve_D0_fixed_point(kS, 1, kA, cls);
  EXPECT_TRUE(lf.converged);
  EXPECT_TRUE(lf.valid);
  const auto ref = white_noise_least_favorable(kS, 1, kA, 1.0, 0.25);
  ASSERT_GE(lf.f0.coeffs.size(), 2u);
  EXPECT_NEAR(lf.f0.coeffs[0], ref.f0.coeffs[0], 1e-6);
  EXPECT_NEAR(lf.f0.coeffs[1], ref.f0.coeffs[1], 1e-6);
  EXPECT_NEAR(lf.p1[0], ref.p1[0], 1e-6);
  EXPECT_NEAR(lf.g0.at(0), 4.0, 1e-12);
}

TEST(FixedPoint, StartAtSolution) {
  const auto cls = DensityClass::d0(1.0, 1.0);
  const auto ref = white_noise_least_favorable(kS, 1, kA, 1.0, 1.0);
  const auto lf = solve_D0_fixed_point(kS, 1, kA, cls, {}, {}, ref);
  EXPECT_EQ(lf.iterations, 1);
  EXPECT_TRUE(lf.converged);
  FixedPointOptions bad;
  bad.damping = 0.0;
  EXPECT_THROW(solve_D0_fixed_point(kS, 1, kA, cls, {}, bad), Error);
  EXPECT_THROW(solve_D0_fixed_point(kS, 1, kA, DensityClass::d0(1.0)), Error);
}

TEST(KnownG, WhiteNoiseReproducesClosedForm) {
  const auto ref = white_noise_least_favorable(kS, 1, kA, 1.0, 1.0);
  const auto lf = solve_known_g(kS, 1, kA, FourierTable{{1.0}}, DensityClass::d0(1.0));
  EXPECT_TRUE(lf.valid);
  ASSERT_GE(lf.f0.coeffs.size(), 2u);
  EXPECT_NEAR(lf.f0.coeffs[0], 1.0, 1e-8);
  EXPECT_NEAR(lf.f0.coeffs[1], 0.5, 1e-8);
  for (std::size_t k = 2; k < lf.f0.coeffs.size(); ++k) EXPECT_NEAR(lf.f0.coeffs[k], 0.0, 1e-8);
  EXPECT_NEAR(lf.p1[0], ref.p1[0], 1e-8);
  EXPECT_NEAR(lf.p2[0], 0.0, 1e-8);
}

TEST(KnownG, ColoredNoiseDelta) {
  const FourierTable g{{2.0, 0.6, 0.2}};
  const auto lf = solve_known_g(kS, 2, std::vector<double>{1.0, 0.0, 0.0}, g, DensityClass::d0(3.0));
  EXPECT_TRUE(lf.valid);
  EXPECT_NEAR(lf.f0.at(0), 3.0, 1e-10);
  for (long k = 1; k <= 10; ++k) EXPECT_NEAR(lf.f0.at(k), 0.0, 1e-10);
}

TEST(KnownG, SingleMomentClassesCoincide) {
  const FourierTable g{{2.0, 0.6, 0.2}};
  const std::vector<double> a{1.0, 0.5, 0.25};
  const auto d0 = solve_known_g(kS, 2, a, g, DensityClass::d0(1.5));
  const auto dm = solve_known_g(kS, 2, a, g, DensityClass::dm({1.5}));
  ASSERT_EQ(d0.f0.coeffs.size(), dm.f0.coeffs.size());
  for (std::size_t k = 0; k < d0.f0.coeffs.size(); ++k) EXPECT_EQ(d0.f0.coeffs[k], dm.f0.coeffs[k]);
  EXPECT_EQ(d0.p1, dm.p1);
  EXPECT_TRUE(d0.valid);
}

TEST(VerifySaddleDM, SingleMomentMatchesD0) {
  const auto lf = white_noise_least_favorable(kS, 1, kA, 1.0);
  const auto a = verify_saddle_D0(lf, kS, 1, kA, DensityClass::d0(1.0, 1.0));
  const auto b = verify_saddle_DM(lf, kS, 1, kA, DensityClass::dm({1.0}, std::vector<double>{1.0}));
  EXPECT_EQ(a.eq_f, b.eq_f);
  EXPECT_EQ(a.eq_e, b.eq_e);
  EXPECT_EQ(a.eq_e_alt, b.eq_e_alt);
  EXPECT_EQ(a.moment_f, b.moment_f);
  EXPECT_EQ(a.moment_g, b.moment_g);
  EXPECT_EQ(a.modulus_f, b.modulus_f);
  EXPECT_EQ(a.modulus_g, b.modulus_g);
  EXPECT_EQ(a.tail_equality, b.tail_equality);
}

TEST(VerifySaddleDM, ConstructThenVerify) {
  const FourierTable g0{{1.5, 0.4, 0.1}};
  const FourierTable f_first{{1.0, 0.4, 0.1}};
  const std::vector<double> a{1.0, 0.5};
  for (int M = 0; M <= 2; ++M) {
    std::vector<double> r1, r2;
    for (int m = 0; m <= M; ++m) {
      r1.push_back(f_first.at(m));
      r2.push_back(g0.at(m));
    }
    const auto cls = DensityClass::dm(r1, r2);
    const auto lf = solve_known_g(kS, 1, a, g0, cls);
    ASSERT_TRUE(lf.valid) << M << " eq_f " << lf.residuals.eq_f << " eq_e " << lf.residuals.eq_e << " moment "
                          << lf.residuals.worst_moment() << " tail " << lf.residuals.tail_equality << " conv " << lf.converged;
    const auto r = verify_saddle_DM(lf, kS, 1, a, cls);
    EXPECT_LE(r.eq_f, 1e-8 * std::max(1.0, r.b_norm));
    EXPECT_LE(r.eq_e, 1e-8 * std::max(1.0, r.b_norm));
    EXPECT_LE(r.worst_moment(), 1e-8);

    std::vector<double> shifted = r1;
    shifted.back() += 1e-3;
    const auto rs = verify_saddle_DM(lf, kS, 1, a, DensityClass::dm(shifted, r2));
    EXPECT_NEAR(rs.moment_f.back(), 1e-3, 1e-8);
  }
}

TEST(AssembleDensity, Examples) {
  const auto one = assemble_density(FourierTable{{1.0}}, kS);
  EXPECT_NEAR(one.weighted_inverse(0.3), 1.0, 1e-15);
  EXPECT_NEAR(one.increment_density(2.0), 1.0, 1e-15);

  const auto s = scan_trig_positivity(std::vector<double>{1.0, 0.5});
  EXPECT_TRUE(s.nonnegative);
  EXPECT_NEAR(std::abs(s.argmin), kPi, 1e-9);
  EXPECT_NEAR(s.min_value, 0.0, 1e-12);
  EXPECT_NO_THROW(assemble_density(FourierTable{{1.0, 0.5}}, kS));

  const auto bad = scan_trig_positivity(std::vector<double>{1.0, 0.8});
  EXPECT_FALSE(bad.nonnegative);
  EXPECT_NEAR(std::abs(bad.argmin), kPi, 1e-3);
  EXPECT_NEAR(bad.min_value, -0.6, 1e-6);
  try {
    assemble_density(FourierTable{{1.0, 0.8}}, kS);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPositivityViolation);
  }
}

TEST(MinimaxCharacteristic, MseMatchesObjective) {
  const auto lf = white_noise_least_favorable(kS, 1, kA, 1.0);
  const auto sol = minimax_characteristic(lf, kS, 1, kA);
  EXPECT_TRUE(sol.minimax);
  EXPECT_NEAR(sol.mse, 4.0, 1e-9);
  EXPECT_NEAR(pair_objective(lf.f0, lf.g0, sol.c, sol.e, kS, 1), sol.mse, 1e-8);
  EXPECT_NEAR(saddle_objective(sol, *sol.f, *sol.g), sol.mse, 1e-8);
  auto other = lf;
  other.N = 2;
  EXPECT_THROW(minimax_characteristic(other, kS, 1, kA), Error);
}

TEST(MinimaxCharacteristic, DegenerateClassIsClassical) {
  // a = delta: least-favorable f is white with level P1, so the minimax and classical solutions coincide
  const std::vector<double> a{1.0, 0.0};
  const auto lf = white_noise_least_favorable(kS, 1, a, 2.0, 0.5);
  const auto mm = minimax_characteristic(lf, kS, 1, a);
  InterpolationProblem p{kS, a, DensityModel::increment_constant(kS, 0.5), DensityModel::increment_constant(kS, 0.5), {}};
  const auto cl = solve_functional(p);
  EXPECT_NEAR(mm.mse, cl.mse, 1e-10);
}

TEST(MinimaxCharacteristic, WhiteDensityInClassHasLargerError) {
  // The white density with the same weighted-inverse moment is admissible yet gives mse 5 > 4,
  // so the closed-form density minimises rather than maximises the error over this class.
  InterpolationProblem p{kS, kA, DensityModel::increment_constant(kS, 1.0), DensityModel::increment_constant(kS, 1.0), {}};
  EXPECT_NEAR(solve_functional(p).mse, 5.0, 1e-9);
  const auto lf = white_noise_least_favorable(kS, 1, kA, 1.0);
  EXPECT_NEAR(minimax_characteristic(lf, kS, 1, kA).mse, 4.0, 1e-9);
}

TEST(SaddleObjective, PerturbationsDoNotDecrease) {
  const auto lf = white_noise_least_favorable(kS, 1, kA, 1.0);
  const auto h0 = minimax_characteristic(lf, kS, 1, kA);
  const double base = saddle_objective(h0, *h0.f, *h0.g);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto u = perturb_admissible(lf.f0, seed, 0.2, 3);
    EXPECT_NEAR(u.at(0), lf.f0.at(0), 1e-15);
    const auto f = assemble_density(u, kS);
    EXPECT_GE(saddle_objective(h0, f, *h0.g), base - 1e-9);
  }
}

TEST(PerturbAdmissible, Validation) {
  EXPECT_THROW(perturb_admissible(FourierTable{{1.0}}, 1, 1.0, 2), Error);
  EXPECT_THROW(perturb_admissible(FourierTable{{1.0}}, 1, 0.1, 0), Error);
  const auto a = perturb_admissible(FourierTable{{1.0, 0.5}}, 9, 0.3, 4);
  const auto b = perturb_admissible(FourierTable{{1.0, 0.5}}, 9, 0.3, 4);
  EXPECT_EQ(a.coeffs, b.coeffs);
  EXPECT_TRUE(scan_trig_positivity(a.coeffs).nonnegative);
}

TEST(CoupledVectors, Layout) {
  const std::vector<double> p1{2.0, 1.0}, p2{0.5, 0.25};
  EXPECT_EQ(coupled_p1_vector(p1, 3), (std::vector<double>{2.0, 1.0, 0.0, 0.0}));
  EXPECT_EQ(coupled_p2_vector(p1, p2, 3), (std::vector<double>{0.0, 0.0, 0.75, 1.5}));
}

}  // namespace
}  // namespace stinc
