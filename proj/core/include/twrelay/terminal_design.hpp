#pragma once

#include <utility>
#include <vector>

#include "twrelay/linalg.hpp"
#include "twrelay/model.hpp"
#include "twrelay/relay_design.hpp"

namespace twrelay {

/// Baseband processing of one user.
struct UserCodecs {
  CMatrix precoder;   ///< D: user_antennas × streams, trace(D Dᴴ) = user_antennas
  CMatrix decoder;    ///< Q: streams × user_antennas
  CMatrix whitening;  ///< K_w: user_antennas square, K_w K_z K_wᴴ = I
  RVector powers;     ///< per-stream water-filling powers, sum = user_antennas
};

/// Trace of the coupled amplification-factor iteration.
struct AlphaState {
  double alpha = 1.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  ///< per-iteration correction factors
};

/// Equivalent noise covariance at one user's receiver:
///   K_z = relay_noise_var · H_kᵀ W Wᴴ H_k* + user_noise_var · I.
/// Hermitian positive definite whenever user_noise_var > 0.
CMatrix noise_covariance(const CMatrix& channel, const CMatrix& relay_matrix,
                         double relay_noise_var, double user_noise_var);

/// Whitening filter K_w = Σ^(-1/2) Uᴴ from the eigendecomposition of K_z.
/// Throws NumericalError when an eigenvalue is non-positive, reporting the
/// condition number.
CMatrix whitening_filter(const CMatrix& noise_cov);

/// Exact active-set water-filling: powers_i = max(level − 1/gains_i, 0)
/// with the level chosen so the powers sum to `budget`. Zero gains receive
/// zero power; throws ContractViolation when every gain is zero.
RVector waterfill(const RVector& gains, double budget);

struct CodecDesign {
  CMatrix precoder;  ///< for the transmitting user
  CMatrix decoder;   ///< for the receiving user
  RVector powers;
};

/// One directed link of a pair: whiten, diagonalize by SVD, water-fill.
/// `pair_channel` is the unit-amplification effective channel from the
/// transmitter to the receiver; `whitening` belongs to the receiver;
/// `tx_power` is the transmitter's budget.
CodecDesign design_codecs(const CMatrix& pair_channel, const CMatrix& whitening, double alpha,
                          double tx_power, int streams);

/// Amplification correction factor
///   sqrt(relay_power / Tr{W (Σ_k p_k/N_U · H_k D_k D_kᴴ H_kᴴ + σ_R² I) Wᴴ})
/// for the given relay matrix (pass W^(n−1) inside the coupled iteration).
double amplification_factor(const CMatrix& relay_matrix, const ChannelSet& channels,
                            const std::vector<CMatrix>& precoders, const SystemConfig& cfg);

/// Coupled solve for the amplification factor and all user codecs: designs
/// codecs under the current W, rescales W to meet the relay power budget,
/// and repeats until the correction factor settles within 1e−6 or the
/// iteration cap is reached (the cap is not an error; `converged` records
/// the outcome). On return the relay power constraint holds with equality
/// for the returned codecs.
std::pair<AlphaState, std::vector<UserCodecs>> solve_coupled_design(const SystemConfig& cfg,
                                                                    const ChannelSet& channels,
                                                                    const RelayDesign& relay);

/// ŝ = Q · y.
CVector decode(const CMatrix& decoder, const CVector& received);

/// Convergence threshold for the coupled solve.
inline constexpr double kAlphaConvergence = 1e-6;

}  // namespace twrelay
