#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twrelay/linalg.hpp"
#include "twrelay/rng.hpp"

namespace twrelay {

/// Scenario scalars for one simulation point.
///
/// `pairs` user pairs (2·pairs users) exchange data through one relay.
/// Symbol vectors are assumed unit-covariance (E[s sᴴ] = I), so a user's
/// average transmit power is user_power(k) · trace(D Dᴴ) / user_antennas.
struct SystemConfig {
  int pairs = 4;            ///< user-pair count
  int user_antennas = 2;    ///< antennas per user
  int streams = 2;          ///< data streams per user, <= user_antennas
  int relay_antennas = 64;  ///< relay antenna count
  int rf_chains = 16;       ///< relay RF chains; hybrid mode needs 2·pairs·user_antennas

  /// Per-user transmit power (linear). Size 1 broadcasts one value to all
  /// users; size 2·pairs gives individual budgets.
  std::vector<double> user_power = {100.0};
  double relay_power = 100.0;     ///< relay power budget (linear)
  double relay_noise_var = 1.0;   ///< noise variance at the relay
  double user_noise_var = 1.0;    ///< noise variance at each user
  double beta = 0.5;              ///< norm-maximization weighting factor in [0,1]
  int max_iterations = 20;        ///< amplification-factor iteration cap
  std::uint64_t seed = 1;

  int num_users() const { return 2 * pairs; }
  double power_of(int user) const {
    return user_power.size() == 1 ? user_power[0] : user_power.at(static_cast<size_t>(user));
  }
};

/// Returns every violated invariant (empty means valid). Never throws.
std::vector<std::string> validate(const SystemConfig& cfg);

/// Throws ConfigError listing all violations if the config is invalid.
void require_valid(const SystemConfig& cfg);

/// SNR convention: relay and user powers are set to 10^(snr_db/10) with
/// unit noise variances.
void apply_snr_db(SystemConfig& cfg, double snr_db);
SystemConfig from_snr_db(double snr_db, SystemConfig base = {});

/// The 2·pairs uplink channel matrices and their column concatenation.
/// Downlink channels are the transposes (reciprocity) and are never stored.
struct ChannelSet {
  std::vector<CMatrix> per_user;  ///< each relay_antennas × user_antennas
  CMatrix stacked;                ///< relay_antennas × 2·pairs·user_antennas

  const CMatrix& user(int k) const { return per_user.at(static_cast<size_t>(k)); }
  int num_users() const { return static_cast<int>(per_user.size()); }

  /// Stable hash of the raw entries; used to verify common-random-number
  /// pairing across modes.
  std::uint64_t content_hash() const;
};

/// Draws i.i.d. CN(0,1) channels. Entries are filled user by user in
/// column-major order, so the draw is bit-reproducible for a given stream.
ChannelSet draw_channels(const SystemConfig& cfg, StreamRng& rng);

/// Convenience: channels of realization `index` under cfg.seed.
ChannelSet draw_channels(const SystemConfig& cfg, std::uint64_t realization_index);

}  // namespace twrelay
