#pragma once

// Rotating-frame Hamiltonians for every drive combination, resonator
// detuning planning from the energy-matching condition, and Lindblad
// problem assembly.

#include "stabsim/hilbert.hpp"

#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace stabsim {

/// red: a^dag b + h.c. (exchange); blue: a b + h.c. (pair creation).
enum class Color { red, blue };

std::string_view to_string(Color c);
Color parse_color(std::string_view s);

/// Where the QQ detuning sits on the two-qubit diagonal.
///   q1_excited: delta * n_q1, i.e. diag(0, 0, d, d) over (gg, ge, eg, ee)
///   symmetric:  diag(-d/2, d/2, -d/2, d/2), as in the Rabi-dressed block
enum class DetuningPlacement { q1_excited, symmetric };

struct QQDrive {
  Color color = Color::blue;
  double rate = 0.0;
  double detuning = 0.0;
  DetuningPlacement placement = DetuningPlacement::q1_excited;
};

/// QR sideband on one qubit-resonator pair. `detuning` is the coefficient of
/// n_r in the rotating frame.
struct QRDrive {
  Color color = Color::blue;
  double rate = 0.0;
  double detuning = 0.0;
};

/// Resonant-frame Rabi drive on one qubit: (A/2) sigma_x + detuning * n_q.
struct RabiDrive {
  double rate = 0.0;
  double detuning = 0.0;
};

struct DriveSet {
  std::optional<QQDrive> qq;
  std::optional<QRDrive> qr1;
  std::optional<QRDrive> qr2;
  std::optional<RabiDrive> rabi_q1;
  std::optional<RabiDrive> rabi_q2;

  /// Throws InvalidArgument for negative or non-finite rates.
  void validate() const;
};

/// rate:      sqrt(1/Tphi) n_q  (coherence decays at 1/(2 Tphi))
/// coherence: sqrt(2/Tphi) n_q  (coherence decays at 1/Tphi)
enum class DephasingModel { rate, coherence };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// kappa in rad/us; T1 / Tphi in us. Infinite times disable the channel.
struct NoiseSpec {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double t1_q1 = kInfinity;
  double t1_q2 = kInfinity;
  double tphi_q1 = kInfinity;
  double tphi_q2 = kInfinity;
  DephasingModel dephasing = DephasingModel::rate;
};

struct LindbladProblem {
  ComplexOperator hamiltonian;
  std::vector<ComplexOperator> collapse_ops;
};

/// Full rotating-frame Hamiltonian for a drive set. The layout must contain
/// q1 and q2, plus r_j whenever qr_j is present.
ComplexOperator assemble_system(const DriveSet& drives, const SpaceLayout& layout);

/// 4x4 block in the (gg, ge, eg, ee) basis; QR drives are ignored.
ComplexOperator build_qubit_block(const DriveSet& drives);

/// printed: (Delta+delta)/2 -> r1, (Delta-delta)/2 -> r2.
/// matched: the assignment that is resonant with blue QR sidebands for
/// delta != 0, i.e. (Delta-delta)/2 -> r1.
enum class ResonatorAssignment { printed, matched };

DriveSet even_parity_drives(double omega, double delta, double w1, double w2,
                            ResonatorAssignment assignment = ResonatorAssignment::printed);
ComplexOperator build_even_parity_system(double omega, double delta, double w1, double w2,
                                         const SpaceLayout& layout = {},
                                         ResonatorAssignment assignment = ResonatorAssignment::printed);

/// standard: QR1 red, QR2 blue, r1 at (Delta+delta)/2, r2 at (Delta-delta)/2.
/// swapped: QR1 blue, QR2 red, r1 at (Delta-delta)/2, r2 at (Delta+delta)/2.
enum class OddColors { standard, swapped };

DriveSet odd_parity_drives(double omega, double delta, double w3, double w4,
                           OddColors colors = OddColors::standard);
ComplexOperator build_odd_parity_system(double omega, double delta, double w3, double w4,
                                        const SpaceLayout& layout = {},
                                        OddColors colors = OddColors::standard);

enum class ColorVariant { blue_blue, red_red, opposite_detuning };

std::string_view to_string(ColorVariant v);
ColorVariant parse_color_variant(std::string_view s);

DriveSet color_variant_drives(double omega, double delta, double w1, double w2, ColorVariant variant);
ComplexOperator build_color_variant(double omega, double delta, double w1, double w2,
                                    ColorVariant variant, const SpaceLayout& layout = {});

struct QRColors {
  Color qr1 = Color::blue;
  Color qr2 = Color::blue;
};

struct StabilizationPlan {
  ComplexOperator hqq;
  EigenSystem eigen;
  double delta_big = 0.0;  // E_D - E_A
  double qr1_detuning = 0.0;
  double qr2_detuning = 0.0;
  QRColors colors;
  double w1 = 0.0;
  double w2 = 0.0;
  /// Lowest eigenvector |A> of hqq, first non-negligible amplitude real positive.
  Vector target;
  /// Bottleneck resonant coupling of the chosen assignment (rad/us).
  double score = 0.0;

  DriveSet qr_drives() const;
};

/// |E_A + E_D - E_B - E_C| / max(|E|), 0 for the zero matrix.
double energy_matching_violation(const EigenSystem& eigen);

/// Assigns the two eigen-gaps E_B - E_A, E_C - E_A to the resonators. Of the
/// two assignments the one with the larger bottleneck resonant coupling wins
/// (ties: smaller gap on r1). Throws EnergyMatchingError beyond 1e-6 relative.
StabilizationPlan plan_stabilization(const ComplexOperator& hqq, double w1, double w2,
                                     QRColors colors = {});

/// plan_stabilization over the four QR color pairs; best score wins with ties
/// resolved in the order blue/blue, red/red, red/blue, blue/red.
StabilizationPlan select_colors(const ComplexOperator& hqq, double w1, double w2);

/// hqq on the qubits plus the planned QR terms and resonator detunings.
ComplexOperator assemble_planned_system(const StabilizationPlan& plan, const SpaceLayout& layout = {});

/// Throws InvalidArgument for non-positive or NaN rates/times. Channels on
/// factors absent from the layout are skipped, as are infinite times.
LindbladProblem build_lindblad(const ComplexOperator& h, const NoiseSpec& noise);

}  // namespace stabsim
