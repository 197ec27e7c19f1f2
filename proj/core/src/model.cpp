#include "twrelay/model.hpp"

#include <cmath>
#include <sstream>

#include "twrelay/errors.hpp"

namespace twrelay {

std::vector<std::string> validate(const SystemConfig& cfg) {
  std::vector<std::string> errors;
  auto fail = [&errors](const std::string& msg) { errors.push_back(msg); };

  if (cfg.pairs < 1) fail("pairs must be >= 1");
  if (cfg.user_antennas < 1) fail("user_antennas must be >= 1");
  if (cfg.streams < 1) fail("streams must be >= 1");
  if (cfg.streams > cfg.user_antennas) {
    std::ostringstream os;
    os << "streams (" << cfg.streams << ") exceeds user_antennas (" << cfg.user_antennas << ")";
    fail(os.str());
  }
  const int total_user_antennas = 2 * cfg.pairs * cfg.user_antennas;
  if (cfg.rf_chains != total_user_antennas) {
    std::ostringstream os;
    os << "rf_chains must equal 2*pairs*user_antennas=" << total_user_antennas
       << " for hybrid mode (got " << cfg.rf_chains << ")";
    fail(os.str());
  }
  if (cfg.relay_antennas < cfg.rf_chains) {
    std::ostringstream os;
    os << "relay_antennas (" << cfg.relay_antennas << ") must be >= rf_chains (" << cfg.rf_chains
       << ")";
    fail(os.str());
  }
  if (cfg.beta < 0.0 || cfg.beta > 1.0) fail("beta must lie in [0,1]");
  if (cfg.user_power.empty() ||
      (cfg.user_power.size() != 1 &&
       cfg.user_power.size() != static_cast<size_t>(cfg.num_users()))) {
    fail("user_power must hold one shared value or one value per user");
  }
  for (double p : cfg.user_power) {
    if (!(p > 0.0)) {
      fail("user powers must be > 0");
      break;
    }
  }
  if (!(cfg.relay_power > 0.0)) fail("relay_power must be > 0");
  if (!(cfg.relay_noise_var > 0.0)) fail("relay_noise_var must be > 0");
  if (!(cfg.user_noise_var > 0.0)) fail("user_noise_var must be > 0");
  if (cfg.max_iterations < 1) fail("max_iterations must be >= 1");
  return errors;
}

void require_valid(const SystemConfig& cfg) {
  const auto errors = validate(cfg);
  if (errors.empty()) return;
  std::string joined = "invalid config:";
  for (const auto& e : errors) joined += "\n  - " + e;
  throw ConfigError(joined);
}

void apply_snr_db(SystemConfig& cfg, double snr_db) {
  const double linear = std::pow(10.0, snr_db / 10.0);
  cfg.user_power = {linear};
  cfg.relay_power = linear;
  cfg.relay_noise_var = 1.0;
  cfg.user_noise_var = 1.0;
}

SystemConfig from_snr_db(double snr_db, SystemConfig base) {
  apply_snr_db(base, snr_db);
  return base;
}

std::uint64_t ChannelSet::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& m : per_user) {
    h = fnv1a(m.data(), sizeof(Complex) * static_cast<size_t>(m.size()), h);
  }
  return h;
}

ChannelSet draw_channels(const SystemConfig& cfg, StreamRng& rng) {
  ChannelSet out;
  out.per_user.reserve(static_cast<size_t>(cfg.num_users()));
  out.stacked.resize(cfg.relay_antennas, cfg.num_users() * cfg.user_antennas);
  for (int k = 0; k < cfg.num_users(); ++k) {
    CMatrix h(cfg.relay_antennas, cfg.user_antennas);
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      for (Eigen::Index i = 0; i < h.rows(); ++i) {
        h(i, j) = rng.complex_gaussian();
      }
    }
    out.stacked.middleCols(static_cast<Eigen::Index>(k) * cfg.user_antennas, cfg.user_antennas) = h;
    out.per_user.push_back(std::move(h));
  }
  return out;
}

ChannelSet draw_channels(const SystemConfig& cfg, std::uint64_t realization_index) {
  StreamRng rng(cfg.seed, realization_index);
  return draw_channels(cfg, rng);
}

}  // namespace twrelay
