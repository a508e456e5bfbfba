#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "afqc/chain.hpp"

namespace afqc::physics {

struct PhysicalConstants {
  double mu_N = 5.05e-27;          // J/T
  double mu_B = 9.2740100783e-24;  // J/T
  double k = 1.380649e-23;         // J/K
  double hbar = 1.054571817e-34;   // J s

  double h() const;
};

class PhysicsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownMaterial : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// P(T) + psi reached 1: the ordered phase no longer exists.
class OrderedPhaseViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct MaterialParams {
  std::string name;
  double g_N = 0.0;
  double A = 0.0;                 // hyperfine constant, J
  std::optional<double> I_n;      // indirect nuclear coupling, J; A^2/J_ex when absent
  double J_ex = 0.0;              // electron exchange, J
  double J_A = 0.0;               // anisotropy, J
  double a = 0.0;                 // lattice period, m
  int d = 1;
  int Z = 2;
  double S = 0.5;
  /// Fields that are estimates rather than quoted values.
  std::vector<std::string> estimated;

  double indirect_coupling() const { return I_n ? *I_n : A * A / J_ex; }
  void validate() const;
};

struct SpinWaveModel {
  MaterialParams material;
  std::optional<double> epsilon0_override;
  double psi = 0.0;

  /// Gap; Z * sqrt(J_ex * J_A) unless overridden.
  double epsilon0() const;
  void validate() const;
};

/// |g_N mu_N B +- A/2 - I_n m| / h; + for A and D sites, - for B.
double resonance_frequency(const MaterialParams& material, double B, Sublattice sublattice,
                           NeighborSum m, const PhysicalConstants& c = {});

/// A / (2 g_N mu_N).
double minimum_ordering_field(const MaterialParams& material, const PhysicalConstants& c = {});

struct CriticalTemperatures {
  double T_NS;
  double T_NI;
};
CriticalTemperatures critical_temperatures(const MaterialParams& material,
                                           const PhysicalConstants& c = {});

enum class FluctuationMethod { Integral, Asymptotic };

/// Thermal spin-wave occupation per site. The integral runs over the ball
/// |q| <= pi in d dimensions, q = k a.
double thermal_fluctuation(const SpinWaveModel& model, double T, FluctuationMethod method,
                           const PhysicalConstants& c = {});
/// P(T) * exp(eps0 / kT); finite where P itself underflows.
double thermal_fluctuation_scaled(const SpinWaveModel& model, double T,
                                  const PhysicalConstants& c = {});
/// Prefactor of the low-temperature form, fitted to the integral at kT = eps0/10.
double asymptotic_constant(const SpinWaveModel& model);

/// mu_B N (1 - P(T) - psi). Throws OrderedPhaseViolation when P + psi >= 1.
double sublattice_magnetization(const SpinWaveModel& model, double T, double N,
                                const PhysicalConstants& c = {});

struct Decoherence {
  double rate;                // 1/s
  std::optional<double> T2;   // s; absent when the rate underflows to 0
};
Decoherence t2_decoherence(const SpinWaveModel& model, double T, const PhysicalConstants& c = {});

struct Polarization {
  double ratio;             // h nu / kT
  double excited_fraction;  // exp(-ratio) / (1 + exp(-ratio))
};
Polarization polarization_check(const MaterialParams& material, double B, double T,
                                Sublattice sublattice = Sublattice::A,
                                NeighborSum m = NeighborSum{}, const PhysicalConstants& c = {});

/// Material presets from a JSON file (array of records).
std::vector<MaterialParams> load_materials(const std::filesystem::path& path);
MaterialParams find_material(const std::vector<MaterialParams>& materials, std::string_view name);

}  // namespace afqc::physics

namespace afqc {

/// Resonance frequency of the sites a pulse class addresses. Target D uses the
/// dopant's own constants and throws physics::UnknownMaterial without them.
double frequency_of_class(PulseClass cls, const physics::MaterialParams& host, double B,
                          const physics::MaterialParams* dopant = nullptr,
                          const physics::PhysicalConstants& c = {});

}  // namespace afqc
