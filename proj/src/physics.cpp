#include "afqc/physics.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace afqc::physics {

namespace {

constexpr double kPi = std::numbers::pi;

void require_temperature(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw PhysicsError("temperature must be positive");
}

double ball_surface(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
  }
  throw PhysicsError("dimension must be 1, 2 or 3");
}

// P exp(e0/t) with t = kT/J and e0 = eps0/J.
double scaled_integral(int d, double e0, double t) {
  const double surface = ball_surface(d);
  auto f = [=](double q) {
    const double e = std::sqrt(e0 * e0 + q * q);
    return surface * std::pow(q, d - 1) * std::exp(-(e - e0) / t) / -std::expm1(-e / t);
  };
  // Split at multiples of the thermal width so each panel sees a smooth shape.
  const double w = std::sqrt(2.0 * e0 * t) + t;
  const std::array<double, 4> cuts{std::min(w, kPi), std::min(5.0 * w, kPi),
                                   std::min(20.0 * w, kPi), kPi};
  double total = 0.0, lo = 0.0;
  for (double hi : cuts) {
    if (hi <= lo) continue;
    double err = 0.0;
    const double part =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-10, &err);
    if (!std::isfinite(part) || err > 1e-6 * std::abs(part) + 1e-300) {
      throw QuadratureError("spin-wave integral did not converge on [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
    }
    total += part;
    lo = hi;
  }
  return total / std::pow(2.0 * kPi, d);
}

}  // namespace

double PhysicalConstants::h() const { return 2.0 * kPi * hbar; }

void MaterialParams::validate() const {
  if (!(g_N > 0.0)) throw PhysicsError(name + ": g_N must be positive");
  if (!(A > 0.0)) throw PhysicsError(name + ": A must be positive");
  if (!(J_ex > 0.0)) throw PhysicsError(name + ": J_ex must be positive");
  if (!(J_A >= 0.0) || !(J_ex > J_A)) throw PhysicsError(name + ": need J_ex > J_A >= 0");
  if (!(a > 0.0)) throw PhysicsError(name + ": lattice period must be positive");
  if (d < 1 || d > 3) throw PhysicsError(name + ": d must be 1, 2 or 3");
  if (Z <= 0) throw PhysicsError(name + ": Z must be positive");
  if (I_n && !(*I_n >= 0.0)) throw PhysicsError(name + ": I_n must be non-negative");
}

double SpinWaveModel::epsilon0() const {
  return epsilon0_override ? *epsilon0_override
                           : material.Z * std::sqrt(material.J_ex * material.J_A);
}

void SpinWaveModel::validate() const {
  material.validate();
  if (!(epsilon0() > 0.0)) throw PhysicsError("spin-wave gap must be positive");
  if (!(psi >= 0.0) || psi >= 1.0) throw PhysicsError("psi must lie in [0, 1)");
}

double resonance_frequency(const MaterialParams& material, double B, Sublattice sublattice,
                           NeighborSum m, const PhysicalConstants& c) {
  if (!(B >= 0.0)) throw PhysicsError("field must be non-negative");
  const double sign = sublattice == Sublattice::B ? -1.0 : 1.0;
  const double e = material.g_N * c.mu_N * B + sign * material.A / 2.0 -
                   material.indirect_coupling() * m.value();
  return std::abs(e) / c.h();
}

double minimum_ordering_field(const MaterialParams& material, const PhysicalConstants& c) {
  return material.A / (2.0 * material.g_N * c.mu_N);
}

CriticalTemperatures critical_temperatures(const MaterialParams& material,
                                           const PhysicalConstants& c) {
  if (!(material.J_ex > 0.0)) throw PhysicsError("J_ex must be positive");
  return {material.J_ex / c.k, material.A * material.A / (material.J_ex * c.k)};
}

double thermal_fluctuation_scaled(const SpinWaveModel& model, double T,
                                  const PhysicalConstants& c) {
  require_temperature(T);
  model.validate();
  const double J = model.material.J_ex;
  return scaled_integral(model.material.d, model.epsilon0() / J, c.k * T / J);
}

double asymptotic_constant(const SpinWaveModel& model) {
  model.validate();
  const double e0 = model.epsilon0() / model.material.J_ex;
  const double t = e0 / 10.0;
  return scaled_integral(model.material.d, e0, t) / std::pow(t * e0, model.material.d / 2.0);
}

double thermal_fluctuation(const SpinWaveModel& model, double T, FluctuationMethod method,
                           const PhysicalConstants& c) {
  require_temperature(T);
  model.validate();
  const double J = model.material.J_ex;
  const double e0 = model.epsilon0() / J;
  const double t = c.k * T / J;
  if (method == FluctuationMethod::Integral) {
    return scaled_integral(model.material.d, e0, t) * std::exp(-e0 / t);
  }
  return asymptotic_constant(model) * std::pow(t * e0, model.material.d / 2.0) *
         std::exp(-e0 / t);
}

double sublattice_magnetization(const SpinWaveModel& model, double T, double N,
                                const PhysicalConstants& c) {
  if (!(N > 0.0)) throw PhysicsError("spin count must be positive");
  const double P = thermal_fluctuation(model, T, FluctuationMethod::Integral, c);
  if (P + model.psi >= 1.0) {
    throw OrderedPhaseViolation("P(T) + psi = " + std::to_string(P + model.psi) + " >= 1");
  }
  return 2.0 * c.mu_B * N * (1.0 - P - model.psi) / 2.0;
}

Decoherence t2_decoherence(const SpinWaveModel& model, double T, const PhysicalConstants& c) {
  require_temperature(T);
  model.validate();
  const double A = model.material.A;
  const double J = model.material.J_ex;
  const double kT = c.k * T;
  const double eps0 = model.epsilon0();
  const double rate = (A * A / J) * std::pow(kT / J, 3) * (eps0 / kT) * std::exp(-eps0 / kT) /
                      (kPi * kPi * c.hbar);
  Decoherence out{rate, std::nullopt};
  if (rate > 0.0 && std::isfinite(1.0 / rate)) out.T2 = 1.0 / rate;
  return out;
}

Polarization polarization_check(const MaterialParams& material, double B, double T,
                                Sublattice sublattice, NeighborSum m, const PhysicalConstants& c) {
  require_temperature(T);
  const double nu = resonance_frequency(material, B, sublattice, m, c);
  const double ratio = c.h() * nu / (c.k * T);
  const double x = std::exp(-ratio);
  return {ratio, x / (1.0 + x)};
}

}  // namespace afqc::physics

namespace afqc {

double frequency_of_class(PulseClass cls, const physics::MaterialParams& host, double B,
                          const physics::MaterialParams* dopant,
                          const physics::PhysicalConstants& c) {
  if (cls.target == Sublattice::D) {
    if (!dopant) throw physics::UnknownMaterial("no dopant material for class " + cls.str());
    return physics::resonance_frequency(*dopant, B, Sublattice::D, cls.m, c);
  }
  return physics::resonance_frequency(host, B, cls.target, cls.m, c);
}

}  // namespace afqc
