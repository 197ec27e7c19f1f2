#include "twrelay/terminal_design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "twrelay/errors.hpp"

namespace twrelay {

CMatrix noise_covariance(const CMatrix& channel, const CMatrix& relay_matrix,
                         double relay_noise_var, double user_noise_var) {
  const CMatrix through_relay = channel.transpose() * relay_matrix;  // H_kᵀ W
  CMatrix cov = relay_noise_var * (through_relay * through_relay.adjoint());
  cov += user_noise_var * CMatrix::Identity(cov.rows(), cov.cols());
  return cov;
}

CMatrix whitening_filter(const CMatrix& noise_cov) {
  const EighResult dec = eigh(noise_cov);
  const double largest = dec.eigenvalues(0);
  const double smallest = dec.eigenvalues(dec.eigenvalues.size() - 1);
  if (!(smallest > 0.0)) {
    std::ostringstream os;
    os << "whitening_filter: covariance not positive definite (min eigenvalue " << smallest
       << ", condition number " << largest / smallest << ")";
    throw NumericalError(os.str());
  }
  return dec.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() * dec.eigenvectors.adjoint();
}

RVector waterfill(const RVector& gains, double budget) {
  const Eigen::Index n = gains.size();
  if (!(budget > 0.0)) {
    throw ContractViolation("waterfill: budget must be > 0");
  }
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&gains](Eigen::Index a, Eigen::Index b) {
    if (gains(a) != gains(b)) return gains(a) > gains(b);
    return a < b;
  });

  Eigen::Index positive = 0;
  while (positive < n && gains(order[static_cast<size_t>(positive)]) > 0.0) ++positive;
  if (positive == 0) {
    throw ContractViolation("waterfill: all gains are zero");
  }

  // Closed-form active set: with the strongest m channels active, the water
  // level is (budget + Σ 1/g)/m. The active set is the largest m for which
  // the weakest active channel still gets positive power.
  double inverse_sum = 0.0;
  double level = 0.0;
  Eigen::Index active = 0;
  for (Eigen::Index m = 0; m < positive; ++m) {
    const double inv = 1.0 / gains(order[static_cast<size_t>(m)]);
    const double candidate = (budget + inverse_sum + inv) / static_cast<double>(m + 1);
    if (candidate > inv) {
      inverse_sum += inv;
      level = candidate;
      active = m + 1;
    } else {
      break;
    }
  }

  RVector powers = RVector::Zero(n);
  for (Eigen::Index m = 0; m < active; ++m) {
    const Eigen::Index idx = order[static_cast<size_t>(m)];
    powers(idx) = level - 1.0 / gains(idx);
  }
  return powers;
}

CodecDesign design_codecs(const CMatrix& pair_channel, const CMatrix& whitening, double alpha,
                          double tx_power, int streams) {
  const Eigen::Index antennas = pair_channel.rows();
  if (streams > antennas) {
    throw ContractViolation("design_codecs: more streams than antennas");
  }
  const CMatrix whitened = alpha * (whitening * pair_channel);
  const SvdResult dec = svd(whitened);

  const double cutoff = rank_tolerance(antennas, antennas, dec.s(0));
  RVector gains = RVector::Zero(streams);
  for (Eigen::Index i = 0; i < streams; ++i) {
    if (dec.s(i) > cutoff) {
      gains(i) = tx_power / static_cast<double>(antennas) * dec.s(i) * dec.s(i);
    }
  }
  const RVector powers = waterfill(gains, static_cast<double>(antennas));

  CodecDesign out;
  out.precoder = dec.v.leftCols(streams) * powers.cwiseSqrt().asDiagonal();
  out.decoder = dec.u.leftCols(streams).adjoint() * whitening;
  out.powers = powers;
  return out;
}

double amplification_factor(const CMatrix& relay_matrix, const ChannelSet& channels,
                            const std::vector<CMatrix>& precoders, const SystemConfig& cfg) {
  double forwarded = cfg.relay_noise_var * relay_matrix.squaredNorm();
  for (int k = 0; k < channels.num_users(); ++k) {
    const CMatrix through = relay_matrix * channels.user(k) * precoders[static_cast<size_t>(k)];
    forwarded += cfg.power_of(k) / cfg.user_antennas * through.squaredNorm();
  }
  if (!(forwarded > 0.0)) {
    throw DegenerateChannel("amplification_factor: zero forwarded power");
  }
  return std::sqrt(cfg.relay_power / forwarded);
}

std::pair<AlphaState, std::vector<UserCodecs>> solve_coupled_design(const SystemConfig& cfg,
                                                                    const ChannelSet& channels,
                                                                    const RelayDesign& relay) {
  const int num_users = cfg.num_users();
  const CMatrix& unit_relay = relay.relay_matrix;  // W̃

  // Everything the iteration touches factors through these fixed products.
  std::vector<CMatrix> rx_chain(static_cast<size_t>(num_users));    // H_kᵀ W̃
  std::vector<CMatrix> rx_gram(static_cast<size_t>(num_users));     // (H_kᵀ W̃)(H_kᵀ W̃)ᴴ
  std::vector<CMatrix> tx_chain(static_cast<size_t>(num_users));    // W̃ H_k
  std::vector<CMatrix> pair_link(static_cast<size_t>(num_users));   // H_kᵀ W̃ H_partner
  for (int k = 0; k < num_users; ++k) {
    rx_chain[static_cast<size_t>(k)] = channels.user(k).transpose() * unit_relay;
    rx_gram[static_cast<size_t>(k)] =
        rx_chain[static_cast<size_t>(k)] * rx_chain[static_cast<size_t>(k)].adjoint();
    tx_chain[static_cast<size_t>(k)] = unit_relay * channels.user(k);
  }
  for (int k = 0; k < num_users; ++k) {
    const int partner = (k % 2 == 0) ? k + 1 : k - 1;
    pair_link[static_cast<size_t>(k)] = rx_chain[static_cast<size_t>(k)] * channels.user(partner);
  }
  const double relay_norm_sq = unit_relay.squaredNorm();
  if (!(relay_norm_sq > 0.0)) {
    throw DegenerateChannel("solve_coupled_design: zero relay chain");
  }

  AlphaState state;
  std::vector<UserCodecs> codecs(static_cast<size_t>(num_users));
  const CMatrix identity = CMatrix::Identity(cfg.user_antennas, cfg.user_antennas);

  for (int n = 1; n <= cfg.max_iterations; ++n) {
    const double alpha_sq = state.alpha * state.alpha;
    for (int k = 0; k < num_users; ++k) {
      const CMatrix noise_cov = cfg.relay_noise_var * alpha_sq * rx_gram[static_cast<size_t>(k)] +
                                cfg.user_noise_var * identity;
      codecs[static_cast<size_t>(k)].whitening = whitening_filter(noise_cov);
    }
    for (int k = 0; k < num_users; ++k) {
      const int partner = (k % 2 == 0) ? k + 1 : k - 1;
      // Link partner -> k fixes the partner's precoder and k's decoder.
      CodecDesign link =
          design_codecs(pair_link[static_cast<size_t>(k)], codecs[static_cast<size_t>(k)].whitening,
                        state.alpha, cfg.power_of(partner), cfg.streams);
      codecs[static_cast<size_t>(partner)].precoder = std::move(link.precoder);
      codecs[static_cast<size_t>(partner)].powers = std::move(link.powers);
      codecs[static_cast<size_t>(k)].decoder = std::move(link.decoder);
    }

    double forwarded = cfg.relay_noise_var * relay_norm_sq;
    for (int k = 0; k < num_users; ++k) {
      forwarded += cfg.power_of(k) / cfg.user_antennas *
                   (tx_chain[static_cast<size_t>(k)] * codecs[static_cast<size_t>(k)].precoder)
                       .squaredNorm();
    }
    const double correction = std::sqrt(cfg.relay_power / (alpha_sq * forwarded));
    state.alpha *= correction;
    state.history.push_back(correction);
    state.iterations = n;
    if (std::abs(correction - 1.0) < kAlphaConvergence) {
      state.converged = true;
      break;
    }
  }
  return {std::move(state), std::move(codecs)};
}

CVector decode(const CMatrix& decoder, const CVector& received) {
  return decoder * received;
}

}  // namespace twrelay
