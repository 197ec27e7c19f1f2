#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twrelay/linalg.hpp"
#include "twrelay/model.hpp"

namespace twrelay {

/// hybrid: phase-only RF stage with rf_chains = 2·pairs·user_antennas.
/// full_rf: one RF chain per relay antenna, identity RF stage (the
/// fully digital baseline).
enum class RelayMode { hybrid, full_rf };

std::string to_string(RelayMode mode);
RelayMode relay_mode_from_string(const std::string& name);

/// The assembled relay beamforming chain
///   W = alpha · F_t · B_t · T · B_r · F_r,
/// with F_t = F_rᵀ and B_t = B_rᵀ (channel reciprocity). Immutable after
/// assembly; safe for concurrent reads.
struct RelayDesign {
  RelayMode mode = RelayMode::hybrid;

  CMatrix rf_receive;   ///< F_r: rf_dim × relay_antennas; identity in full_rf mode
  CMatrix composite;    ///< F_r · H: rf_dim × 2·pairs·user_antennas
  std::vector<CMatrix> pair_receive;  ///< B_rm blocks: 2·user_antennas × rf_dim
  std::vector<CMatrix> pair_gain;     ///< T_m blocks: 2·user_antennas square, unit Frobenius norm
  CMatrix digital_receive;  ///< B_r: row-stack of the pair blocks
  CMatrix gain;             ///< T: blkdiag of the pair gains
  double alpha = 1.0;       ///< amplification factor (1 until the coupled solve runs)
  CMatrix relay_matrix;     ///< W̃ = F_rᵀ B_rᵀ T B_r F_r (unit amplification)

  CMatrix rf_transmit() const { return rf_receive.transpose(); }
  CMatrix digital_transmit() const { return digital_receive.transpose(); }
  CMatrix scaled_relay_matrix() const { return alpha * relay_matrix; }

  /// Composite channel of one user (columns of `composite`).
  CMatrix composite_user(int user, int user_antennas) const {
    return composite.middleCols(static_cast<Eigen::Index>(user) * user_antennas, user_antennas);
  }
};

/// Phase-only receive beamformer: entry (i,j) is exp(j·phase([Hᴴ]_ij))/√N_R,
/// aligning phases for coherent combining. A zero channel entry maps to
/// phase 0.
CMatrix egc_receive_beamformer(const CMatrix& stacked_channel);

/// Composite multiple-access channel after the RF stage: F_r · H.
CMatrix composite_channel(const CMatrix& rf_receive, const CMatrix& stacked_channel);

/// Receive digital precoder for one pair: rows form an orthonormal basis of
/// the left null space of every other pair's composite channel, so
/// B_rm · H̃_j = 0 for users j outside pair m. When the null space is larger
/// than 2·user_antennas (full_rf mode), the rows are the directions inside
/// it that capture the most pair-channel energy. Throws DegenerateChannel
/// if the excluded channels are rank deficient.
CMatrix bd_receive_precoder(const CMatrix& composite, int pair, int user_antennas);

/// Row-stacks the pair blocks into B_r and returns (B_r, B_t = B_rᵀ).
std::pair<CMatrix, CMatrix> assemble_digital(const std::vector<CMatrix>& pair_receive);

/// Relay gain block for one pair maximizing the weighted Frobenius norms of
/// the two directed effective pair channels, subject to ‖T_m‖_F = 1. The
/// maximizer is the conjugated dominant left singular vector of
///   L = [beta·(B_rm H̃_b) ⊗ (B_tmᵀ H̃_a),  (1−beta)·(B_rm H̃_a) ⊗ (B_tmᵀ H̃_b)]
/// reshaped to a matrix, where (a, b) are the pair's users.
CMatrix anomax_pair_matrix(const CMatrix& pair_receive, const CMatrix& pair_transmit,
                           const CMatrix& comp_first, const CMatrix& comp_second, double beta);

/// Directed effective channel H̃_rxᵀ · B_tm · T_m · B_rm · H̃_tx between a
/// pair's users (receiver first).
CMatrix effective_pair_channel(const CMatrix& comp_rx, const CMatrix& comp_tx,
                               const CMatrix& pair_transmit, const CMatrix& pair_gain,
                               const CMatrix& pair_receive);

/// Assembles the full chain and W̃; alpha starts at 1.
RelayDesign assemble_relay(RelayMode mode, CMatrix rf_receive, CMatrix composite,
                           std::vector<CMatrix> pair_receive, std::vector<CMatrix> pair_gain);

/// End-to-end construction: RF stage, per-pair interference nulling, and
/// per-pair gain blocks.
RelayDesign design_relay(const SystemConfig& cfg, const ChannelSet& channels, RelayMode mode);

/// max over pairs m and users j outside m of ‖B_rm F_r H_j‖_F / ‖H_j‖_F.
double max_interpair_leakage(const RelayDesign& design, const ChannelSet& channels);

}  // namespace twrelay
