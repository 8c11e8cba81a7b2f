#pragma once

// Simulated two-qubit state tomography: pre-rotations, symmetric per-qubit
// readout error, seeded multinomial shot noise, and linear-inversion
// reconstruction with eigenvalue clipping.
//
// Pre-rotations: X90 = exp(-i pi sigma_x / 4), Y90 = exp(-i pi sigma_y / 4),
// applied to each qubit before a Z-basis readout. Outcomes are ordered
// (gg, ge, eg, ee) with q1 the leading label.

#include "stabsim/hilbert.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stabsim {

enum class PreRotation { I, X90, Y90 };

using TomographySetting = std::array<PreRotation, 2>;

std::string setting_name(const TomographySetting& s);
TomographySetting parse_setting(const std::string& name);
std::string_view outcome_name(int outcome);
int parse_outcome(std::string_view name);

/// {I, X90, Y90} x {I, X90, Y90}, q1 varying slowest.
std::vector<TomographySetting> default_settings();

Matrix pre_rotation_matrix(PreRotation r);

struct TomographySettings {
  int shots_per_setting = 5000;
  std::vector<TomographySetting> settings = default_settings();
  double readout_fidelity_q1 = 1.0;
  double readout_fidelity_q2 = 1.0;
  std::uint64_t rng_seed = 0;
  /// Independent stream index; samples derive from (rng_seed, trial, setting).
  std::uint64_t trial = 0;
};

struct CountsTable {
  std::vector<TomographySetting> settings;
  std::vector<std::array<std::int64_t, 4>> counts;
};

/// Readout-convolved outcome probabilities for one setting.
std::array<double, 4> outcome_probabilities(const Matrix& rho4, const TomographySetting& setting,
                                            double fidelity_q1, double fidelity_q2);

CountsTable simulate_tomography(const DensityMatrix& rho, const TomographySettings& s);

/// Linear inversion on per-setting outcome frequencies (rows sum to 1),
/// before any positivity projection. Throws SingularConfusion for readout
/// fidelity <= 0.5.
Matrix linear_inversion(const std::vector<TomographySetting>& settings,
                        const std::vector<std::array<double, 4>>& frequencies, double fidelity_q1,
                        double fidelity_q2);

/// Nearest unit-trace PSD matrix by eigenvalue clipping.
DensityMatrix project_to_physical(const Matrix& estimate);

DensityMatrix reconstruct(const CountsTable& counts, const TomographySettings& s);

/// CSV with header `setting,outcome,count`.
void write_counts_csv(std::ostream& out, const CountsTable& counts);
/// Throws ConfigError on malformed input.
CountsTable read_counts_csv(std::istream& in);

}  // namespace stabsim
