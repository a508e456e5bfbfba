#include <gtest/gtest.h>

#include <cmath>

#include "afqc/physics.hpp"
#include "oracles.hpp"

using namespace afqc;
using namespace afqc::physics;

namespace {

MaterialParams p31() { return find_material(load_materials(AFQC_MATERIALS_FILE), "P31"); }

SpinWaveModel model(int d, double eps0_over_J = 0.1) {
  SpinWaveModel m{p31(), std::nullopt, 0.0};
  m.material.d = d;
  m.epsilon0_override = eps0_over_J * m.material.J_ex;
  return m;
}

double temperature_for(const SpinWaveModel& m, double kT_over_eps0) {
  return kT_over_eps0 * m.epsilon0() / PhysicalConstants{}.k;
}

}  // namespace

// Reference values below were computed once with 30-digit arithmetic and frozen.

TEST(Physics, OrderingFieldAndTemperatures) {
  const auto m = p31();
  EXPECT_NEAR(minimum_ordering_field(m), 3.39963199859809, 1e-12);
  const auto t = critical_temperatures(m);
  EXPECT_NEAR(t.T_NS, 4.70793083542595, 1e-12);
  EXPECT_NEAR(t.T_NI, 6.71006617456439e-06, 1e-18);
  // Quoted estimates: about 3.5 T, 4.5 K and 1e-5 K.
  EXPECT_LT(std::abs(minimum_ordering_field(m) / 3.5 - 1.0), 0.05);
  EXPECT_LT(std::abs(t.T_NS / 4.5 - 1.0), 0.10);
  EXPECT_LT(std::abs(std::log2(t.T_NI / 1e-5)), 1.0);
}

TEST(Physics, ResonanceFrequencies) {
  const auto m = p31();
  EXPECT_NEAR(resonance_frequency(m, 3.5, Sublattice::A, NeighborSum{}), 118841935.363828, 1e-4);
  EXPECT_NEAR(resonance_frequency(m, 3.5, Sublattice::B, NeighborSum{}), 1728777.35183934, 1e-6);
  // Neighbour shifts are symmetric about m = 0 and tiny next to A/2.
  const double up = resonance_frequency(m, 3.5, Sublattice::A, NeighborSum::parse("1"));
  const double dn = resonance_frequency(m, 3.5, Sublattice::A, NeighborSum::parse("-1"));
  EXPECT_NEAR((up + dn) / 2, 118841935.363828, 1e-3);
  EXPECT_LT(dn - up, 1e6);
  EXPECT_GT(dn, up);
  EXPECT_THROW(resonance_frequency(m, -1.0, Sublattice::A, NeighborSum{}), PhysicsError);
}

TEST(Physics, FrequencyOfClassNeedsDopantMaterial) {
  const auto m = p31();
  const PulseClass d{Sublattice::D, NeighborSum{}};
  EXPECT_THROW(frequency_of_class(d, m, 3.5), UnknownMaterial);
  EXPECT_DOUBLE_EQ(frequency_of_class(d, m, 3.5, &m),
                   resonance_frequency(m, 3.5, Sublattice::A, NeighborSum{}));
}

TEST(Physics, Polarization) {
  const auto p = polarization_check(p31(), 3.5, 1e-3);
  EXPECT_NEAR(p.ratio, 5.70351334770822, 1e-10);
  EXPECT_NEAR(p.excited_fraction, 0.00332315039433957, 1e-14);
  EXPECT_THROW(polarization_check(p31(), 3.5, 0.0), PhysicsError);
}

TEST(Physics, DecoherenceGolden) {
  const auto m = model(1);
  const auto d = t2_decoherence(m, temperature_for(m, 1.0 / 3.0));
  EXPECT_NEAR(d.rate / 0.492388866584090, 1.0, 1e-12);
  ASSERT_TRUE(d.T2);
  EXPECT_NEAR(*d.T2 / 2.03091513205289, 1.0, 1e-12);
}

TEST(Physics, DecoherenceVanishesAtLowT) {
  const auto m = model(1);
  const auto d = t2_decoherence(m, temperature_for(m, 1e-4));
  EXPECT_EQ(d.rate, 0.0);
  EXPECT_FALSE(d.T2);
}

TEST(Physics, DecoherenceMonotoneInT) {
  const auto m = model(3);
  double prev = 0.0;
  for (double f = 0.02; f <= 1.0; f *= 1.3) {
    const double r = t2_decoherence(m, temperature_for(m, f)).rate;
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(Physics, FluctuationMatchesFrozenValues) {
  const double frozen_tenth[] = {5.93627622600616e-07, 7.94835778909021e-09, 1.08971609284205e-10};
  const double frozen_third[] = {1.32278081316976e-03, 3.60094085640887e-05, 1.05336955315848e-06};
  for (int d = 1; d <= 3; ++d) {
    const auto m = model(d);
    EXPECT_NEAR(thermal_fluctuation(m, temperature_for(m, 0.1), FluctuationMethod::Integral) /
                    frozen_tenth[d - 1], 1.0, 1e-8) << d;
    EXPECT_NEAR(thermal_fluctuation(m, temperature_for(m, 1.0 / 3.0), FluctuationMethod::Integral) /
                    frozen_third[d - 1], 1.0, 1e-8) << d;
  }
}

TEST(Physics, FluctuationMatchesSimpsonOracle) {
  for (int d = 1; d <= 3; ++d) {
    const auto m = model(d);
    for (double f : {0.05, 0.2, 1.0}) {
      const double got = thermal_fluctuation(m, temperature_for(m, f), FluctuationMethod::Integral);
      const double want = oracle::fluctuation(d, 0.1, 0.1 * f);
      EXPECT_NEAR(got / want, 1.0, 1e-7) << d << " " << f;
    }
  }
}

TEST(Physics, FittedConstants) {
  const double frozen[] = {0.413484201237683, 0.175074230966281, 0.0759028675671629};
  for (int d = 1; d <= 3; ++d) EXPECT_NEAR(asymptotic_constant(model(d)) / frozen[d - 1], 1.0, 1e-8);
}

TEST(Physics, AsymptoticTracksIntegral) {
  for (int d = 1; d <= 3; ++d) {
    const auto m = model(d);
    for (double f = 1.0 / 50; f <= 1.0 / 5 + 1e-12; f *= 1.1) {
      const double T = temperature_for(m, f);
      const double ratio = thermal_fluctuation(m, T, FluctuationMethod::Asymptotic) /
                           thermal_fluctuation(m, T, FluctuationMethod::Integral);
      EXPECT_GT(ratio, 0.5) << d << " " << f;
      EXPECT_LT(ratio, 2.0) << d << " " << f;
    }
  }
}

TEST(Physics, ScaledFluctuationSurvivesUnderflow) {
  const auto m = model(3);
  const double T = temperature_for(m, 1e-3);
  EXPECT_EQ(thermal_fluctuation(m, T, FluctuationMethod::Integral), 0.0);
  EXPECT_GT(thermal_fluctuation_scaled(m, T), 0.0);
}

TEST(Physics, MagnetizationAndOrderedPhase) {
  auto m = model(1);
  const double T = temperature_for(m, 0.1);
  const double M = sublattice_magnetization(m, T, 2.0);
  EXPECT_NEAR(M / (PhysicalConstants{}.mu_B * 2.0 * (1.0 - 5.93627622600616e-07)), 1.0, 1e-10);
  m.psi = 0.9999999;
  EXPECT_THROW(sublattice_magnetization(m, T, 2.0), OrderedPhaseViolation);
  m.psi = 1.5;
  EXPECT_THROW(sublattice_magnetization(m, T, 2.0), PhysicsError);
}

TEST(Physics, InputValidation) {
  auto m = model(1);
  EXPECT_THROW(thermal_fluctuation(m, 0.0, FluctuationMethod::Integral), PhysicsError);
  m.material.d = 4;
  EXPECT_THROW(thermal_fluctuation(m, 1.0, FluctuationMethod::Integral), PhysicsError);
  auto bad = p31();
  bad.J_A = bad.J_ex * 2;
  EXPECT_THROW(bad.validate(), PhysicsError);
}

TEST(Materials, PresetsLoad) {
  const auto all = load_materials(AFQC_MATERIALS_FILE);
  for (const char* name : {"P31", "Tm2O3", "TmSi2", "TmGe2", "TmSe", "Yb2O3", "FeF2", "TmAg"}) {
    EXPECT_NO_THROW(find_material(all, name)) << name;
  }
  EXPECT_THROW(find_material(all, "Unobtainium"), UnknownMaterial);
  // Quoted ordering temperatures survive the conversion to J_ex.
  EXPECT_NEAR(critical_temperatures(find_material(all, "FeF2")).T_NS, 79.0, 1e-9);
  EXPECT_NEAR(critical_temperatures(find_material(all, "TmAg")).T_NS, 9.5, 1e-9);
  EXPECT_FALSE(find_material(all, "TmSe").estimated.empty());
}

TEST(Materials, IndirectCouplingDefault) {
  const auto m = p31();
  EXPECT_FALSE(m.I_n);
  EXPECT_DOUBLE_EQ(m.indirect_coupling(), m.A * m.A / m.J_ex);
}
