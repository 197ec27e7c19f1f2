#include "twrelay/relay_design.hpp"

#include <cmath>

#include "twrelay/errors.hpp"

namespace twrelay {

std::string to_string(RelayMode mode) {
  return mode == RelayMode::hybrid ? "hybrid" : "full_rf";
}

RelayMode relay_mode_from_string(const std::string& name) {
  if (name == "hybrid") return RelayMode::hybrid;
  if (name == "full_rf") return RelayMode::full_rf;
  throw ConfigError("unknown relay mode: " + name);
}

CMatrix egc_receive_beamformer(const CMatrix& stacked_channel) {
  const Eigen::Index relay_antennas = stacked_channel.rows();
  const double magnitude = 1.0 / std::sqrt(static_cast<double>(relay_antennas));
  CMatrix rf(stacked_channel.cols(), relay_antennas);
  for (Eigen::Index j = 0; j < rf.cols(); ++j) {
    for (Eigen::Index i = 0; i < rf.rows(); ++i) {
      const Complex entry = std::conj(stacked_channel(j, i));
      // std::arg(0) == 0, which is the chosen convention for zero entries.
      rf(i, j) = std::polar(magnitude, std::arg(entry));
    }
  }
  return rf;
}

CMatrix composite_channel(const CMatrix& rf_receive, const CMatrix& stacked_channel) {
  return rf_receive * stacked_channel;
}

namespace {

/// Columns of `composite` belonging to user `k`.
CMatrix composite_block(const CMatrix& composite, int user, int user_antennas) {
  return composite.middleCols(static_cast<Eigen::Index>(user) * user_antennas, user_antennas);
}

/// Concatenated composite channels of every user outside `pair`.
CMatrix excluded_channels(const CMatrix& composite, int pair, int user_antennas) {
  const Eigen::Index cols = composite.cols() - 2 * user_antennas;
  CMatrix out(composite.rows(), cols);
  const Eigen::Index skip_begin = static_cast<Eigen::Index>(2 * pair) * user_antennas;
  out.leftCols(skip_begin) = composite.leftCols(skip_begin);
  out.rightCols(cols - skip_begin) = composite.rightCols(cols - skip_begin);
  return out;
}

}  // namespace

CMatrix bd_receive_precoder(const CMatrix& composite, int pair, int user_antennas) {
  const Eigen::Index rf_dim = composite.rows();
  const Eigen::Index pair_dim = 2 * user_antennas;
  const int num_users = static_cast<int>(composite.cols()) / user_antennas;
  const int num_pairs = num_users / 2;

  if (num_pairs == 1 && rf_dim == pair_dim) {
    // No interference to cancel and no spare dimensions.
    return CMatrix::Identity(pair_dim, pair_dim);
  }

  CMatrix null_basis;  // rf_dim × null_dim, orthonormal columns
  if (num_pairs == 1) {
    null_basis = CMatrix::Identity(rf_dim, rf_dim);
  } else {
    const CMatrix excluded = excluded_channels(composite, pair, user_antennas);
    const SvdResult dec = svd(excluded);
    const Eigen::Index excluded_rank = excluded.cols();
    if (rf_dim - excluded_rank < pair_dim) {
      throw ContractViolation("bd_receive_precoder: RF dimension too small for nulling");
    }
    if (dec.s(excluded_rank - 1) <= rank_tolerance(excluded.rows(), excluded.cols(), dec.s(0))) {
      throw DegenerateChannel(
          "bd_receive_precoder: excluded channels rank deficient, null space exceeds pair "
          "dimension");
    }
    null_basis = dec.left_complement(excluded_rank);
  }

  if (null_basis.cols() == pair_dim) {
    return null_basis.adjoint();
  }

  // Spare null-space dimensions (full-RF baseline): keep the directions
  // carrying the most energy of this pair's own channels. How the baseline
  // picks directions is a choice of this library, not a published design.
  CMatrix own(composite.rows(), pair_dim);
  own.leftCols(user_antennas) = composite_block(composite, 2 * pair, user_antennas);
  own.rightCols(user_antennas) = composite_block(composite, 2 * pair + 1, user_antennas);
  const SvdResult projected = svd(null_basis.adjoint() * own);
  return (null_basis * projected.u.leftCols(pair_dim)).adjoint();
}

std::pair<CMatrix, CMatrix> assemble_digital(const std::vector<CMatrix>& pair_receive) {
  if (pair_receive.empty()) {
    throw ContractViolation("assemble_digital: no pair blocks");
  }
  const Eigen::Index block_rows = pair_receive.front().rows();
  const Eigen::Index rf_dim = pair_receive.front().cols();
  CMatrix receive(block_rows * static_cast<Eigen::Index>(pair_receive.size()), rf_dim);
  for (size_t m = 0; m < pair_receive.size(); ++m) {
    if (pair_receive[m].rows() != block_rows || pair_receive[m].cols() != rf_dim) {
      throw ContractViolation("assemble_digital: inconsistent block shapes");
    }
    receive.middleRows(static_cast<Eigen::Index>(m) * block_rows, block_rows) = pair_receive[m];
  }
  return {receive, receive.transpose()};
}

CMatrix anomax_pair_matrix(const CMatrix& pair_receive, const CMatrix& pair_transmit,
                           const CMatrix& comp_first, const CMatrix& comp_second, double beta) {
  if (beta < 0.0 || beta > 1.0) {
    throw ContractViolation("anomax_pair_matrix: beta outside [0,1]");
  }
  const CMatrix transmit_t = pair_transmit.transpose();
  const CMatrix first_block = kron(pair_receive * comp_second, transmit_t * comp_first);
  const CMatrix second_block = kron(pair_receive * comp_first, transmit_t * comp_second);
  CMatrix stacked(first_block.rows(), first_block.cols() + second_block.cols());
  stacked << beta * first_block, (1.0 - beta) * second_block;
  if (stacked.norm() == 0.0) {
    throw DegenerateChannel("anomax_pair_matrix: zero norm-maximization matrix");
  }
  const SvdResult dec = svd(stacked);
  const Eigen::Index pair_dim = pair_receive.rows();
  return unvec(dec.u.col(0).conjugate(), pair_dim, pair_dim);
}

CMatrix effective_pair_channel(const CMatrix& comp_rx, const CMatrix& comp_tx,
                               const CMatrix& pair_transmit, const CMatrix& pair_gain,
                               const CMatrix& pair_receive) {
  return comp_rx.transpose() * pair_transmit * pair_gain * pair_receive * comp_tx;
}

RelayDesign assemble_relay(RelayMode mode, CMatrix rf_receive, CMatrix composite,
                           std::vector<CMatrix> pair_receive, std::vector<CMatrix> pair_gain) {
  RelayDesign design;
  design.mode = mode;
  design.rf_receive = std::move(rf_receive);
  design.composite = std::move(composite);
  design.pair_receive = std::move(pair_receive);
  design.pair_gain = std::move(pair_gain);

  design.digital_receive = assemble_digital(design.pair_receive).first;

  const Eigen::Index digital_dim = design.digital_receive.rows();
  design.gain = CMatrix::Zero(digital_dim, digital_dim);
  Eigen::Index offset = 0;
  for (const auto& block : design.pair_gain) {
    design.gain.block(offset, offset, block.rows(), block.cols()) = block;
    offset += block.rows();
  }

  design.alpha = 1.0;
  const CMatrix chain = design.digital_receive * design.rf_receive;  // B_r F_r
  design.relay_matrix = chain.transpose() * design.gain * chain;
  return design;
}

RelayDesign design_relay(const SystemConfig& cfg, const ChannelSet& channels, RelayMode mode) {
  CMatrix rf_receive;
  CMatrix composite;
  if (mode == RelayMode::hybrid) {
    rf_receive = egc_receive_beamformer(channels.stacked);
    composite = composite_channel(rf_receive, channels.stacked);
  } else {
    rf_receive = CMatrix::Identity(cfg.relay_antennas, cfg.relay_antennas);
    composite = channels.stacked;
  }

  std::vector<CMatrix> pair_receive;
  std::vector<CMatrix> pair_gain;
  pair_receive.reserve(static_cast<size_t>(cfg.pairs));
  pair_gain.reserve(static_cast<size_t>(cfg.pairs));
  for (int m = 0; m < cfg.pairs; ++m) {
    CMatrix receive = bd_receive_precoder(composite, m, cfg.user_antennas);
    const CMatrix transmit = receive.transpose();
    const CMatrix comp_first = composite_block(composite, 2 * m, cfg.user_antennas);
    const CMatrix comp_second = composite_block(composite, 2 * m + 1, cfg.user_antennas);
    pair_gain.push_back(anomax_pair_matrix(receive, transmit, comp_first, comp_second, cfg.beta));
    pair_receive.push_back(std::move(receive));
  }
  return assemble_relay(mode, std::move(rf_receive), std::move(composite),
                        std::move(pair_receive), std::move(pair_gain));
}

double max_interpair_leakage(const RelayDesign& design, const ChannelSet& channels) {
  const int user_antennas = static_cast<int>(channels.user(0).cols());
  const int num_pairs = static_cast<int>(design.pair_receive.size());
  double worst = 0.0;
  for (int m = 0; m < num_pairs; ++m) {
    for (int j = 0; j < channels.num_users(); ++j) {
      if (j == 2 * m || j == 2 * m + 1) continue;
      const double leak =
          (design.pair_receive[static_cast<size_t>(m)] *
           design.composite_user(j, user_antennas))
              .norm() /
          channels.user(j).norm();
      worst = std::max(worst, leak);
    }
  }
  return worst;
}

}  // namespace twrelay
