#include "twrelay/metrics.hpp"

#include <cmath>

#include "twrelay/errors.hpp"

namespace twrelay {

namespace {

/// Cholesky of the Hermitian-symmetrized input; regularizes by
/// 1e−12·tr/dim·I on failure and records that in `regularized`.
Eigen::LLT<CMatrix> robust_cholesky(const CMatrix& a, bool& regularized, const char* what) {
  CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::LLT<CMatrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    const double eps = 1e-12 * sym.real().trace() / static_cast<double>(sym.rows());
    sym += eps * CMatrix::Identity(sym.rows(), sym.cols());
    llt.compute(sym);
    regularized = true;
    if (llt.info() != Eigen::Success) {
      throw NumericalError(std::string(what) + ": matrix not positive definite");
    }
  }
  return llt;
}

}  // namespace

double user_se(int receiver, int transmitter, const CMatrix& relay_matrix,
               const ChannelSet& channels, const std::vector<UserCodecs>& codecs,
               const SystemConfig& cfg, bool* regularized) {
  const CMatrix& decoder = codecs[static_cast<size_t>(receiver)].decoder;
  const CMatrix front = decoder * channels.user(receiver).transpose() * relay_matrix;  // Q H_rᵀ W

  const CMatrix desired =
      front * channels.user(transmitter) * codecs[static_cast<size_t>(transmitter)].precoder;

  // Interference-plus-noise after the decoder. The inter-pair terms are
  // kept even though the nulling design drives them to ~0, so the rate
  // stays valid for imperfect designs.
  CMatrix noise_cov = cfg.relay_noise_var * (front * front.adjoint()) +
                      cfg.user_noise_var * (decoder * decoder.adjoint());
  for (int i = 0; i < channels.num_users(); ++i) {
    if (i == receiver || i == transmitter) continue;
    const CMatrix cross = front * channels.user(i) * codecs[static_cast<size_t>(i)].precoder;
    noise_cov += cfg.power_of(i) / cfg.user_antennas * (cross * cross.adjoint());
  }

  bool fixed = false;
  const auto llt = robust_cholesky(noise_cov, fixed, "user_se");

  // ½ log₂ det(I + p/N_U · R⁻¹ S Sᴴ) through the whitened signal L⁻¹S,
  // which keeps the determinant argument Hermitian by construction.
  const CMatrix whitened_signal = llt.matrixL().solve(desired);
  const CMatrix argument =
      CMatrix::Identity(desired.rows(), desired.rows()) +
      cfg.power_of(transmitter) / cfg.user_antennas * (whitened_signal * whitened_signal.adjoint());
  const auto arg_llt = robust_cholesky(argument, fixed, "user_se");
  double rate = 0.0;
  for (Eigen::Index i = 0; i < argument.rows(); ++i) {
    rate += std::log2(std::real(arg_llt.matrixL()(i, i)));
  }
  if (regularized != nullptr && fixed) *regularized = true;
  return rate;
}

double sum_se(const RVector& per_user) {
  return per_user.sum();
}

RVector all_user_se(const CMatrix& relay_matrix, const ChannelSet& channels,
                    const std::vector<UserCodecs>& codecs, const SystemConfig& cfg,
                    bool* regularized) {
  RVector rates(channels.num_users());
  for (int k = 0; k < channels.num_users(); ++k) {
    const int partner = (k % 2 == 0) ? k + 1 : k - 1;
    rates(k) = user_se(k, partner, relay_matrix, channels, codecs, cfg, regularized);
  }
  return rates;
}

}  // namespace twrelay
