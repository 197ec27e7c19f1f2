#pragma once

#include <cstdint>
#include <vector>

#include "twrelay/linalg.hpp"
#include "twrelay/model.hpp"
#include "twrelay/terminal_design.hpp"

namespace twrelay {

/// Per-realization bookkeeping surfaced alongside the rates.
struct Diagnostics {
  double alpha = 1.0;
  bool converged = false;
  int iterations = 0;
  double max_leakage = 0.0;        ///< worst inter-pair leakage ratio
  std::uint64_t channel_hash = 0;  ///< hash of the drawn channels
  int resample_attempts = 0;       ///< extra draws consumed by the harness
  bool rate_regularized = false;   ///< an interference covariance needed regularizing
};

struct SimulationResult {
  RVector per_user_se;  ///< 2·pairs entries, bps/Hz
  double sum_se = 0.0;
  std::uint64_t realization_index = 0;
  Diagnostics diagnostics;
};

/// Half-duplex spectral efficiency of one user (bps/Hz, log base 2):
///   γ = ½·log₂ det(I + p_tx/N_U · R⁻¹ · S Sᴴ),
/// with S the post-decoder desired-signal matrix and R the interference-
/// plus-noise covariance after the decoder, including inter-pair terms. A
/// singular R is regularized by 1e−12·tr(R)/M_D·I and flagged.
double user_se(int receiver, int transmitter, const CMatrix& relay_matrix,
               const ChannelSet& channels, const std::vector<UserCodecs>& codecs,
               const SystemConfig& cfg, bool* regularized = nullptr);

/// Sum over users.
double sum_se(const RVector& per_user);

/// All 2·pairs user rates under the scaled relay matrix.
RVector all_user_se(const CMatrix& relay_matrix, const ChannelSet& channels,
                    const std::vector<UserCodecs>& codecs, const SystemConfig& cfg,
                    bool* regularized = nullptr);

}  // namespace twrelay
