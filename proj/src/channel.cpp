// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#include "relaybf/channel.hpp"

#include <cmath>

namespace relaybf {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace

double NetworkConfig::p_t_linear() const { return db_to_linear(p_t_dbw); }

std::vector<std::string> NetworkConfig::validate() const {
  if (k < 1) throw ValidationError("k: must be >= 1");
  if (m < 1) throw ValidationError("m: must be >= 1");
  if (m_min < 1 || m_min > m) {
    throw ValidationError("m_min: must satisfy 1 <= m_min <= m");
  }
  if (!(sigma_s_db >= 0.0)) throw ValidationError("sigma_s_db: must be >= 0");
  if (!(distance > 0.0)) throw ValidationError("distance: must be > 0");
  if (!(noise_variance > 0.0)) {
    throw ValidationError("noise_variance: must be > 0");
  }
  std::vector<std::string> warnings;
  if (rho < 2.0 || rho > 5.0) {
    warnings.push_back("rho = " + std::to_string(rho) +
                       " is outside the typical 2..5 range");
  }
  return warnings;
}

RealVector source_powers(const NetworkConfig& cfg) {
  RealVector p(cfg.k);
  p[0] = cfg.noise_variance * db_to_linear(cfg.snr_db);
  for (int k = 1; k < cfg.k; ++k) {
    p[k] = cfg.noise_variance * db_to_linear(cfg.inr_db);
  }
  return p;
}

double path_loss(double l_db, double d, double rho) {
  if (!(d > 0.0)) throw DomainError("path_loss: distance must be > 0");
  return std::sqrt(db_to_linear(l_db)) / std::sqrt(std::pow(d, rho));
}

double shadowing_draw(double sigma_s_db, RandomStream& rng) {
  return std::pow(10.0, sigma_s_db * rng.normal() / 10.0);
}

ChannelRealization draw_channels(const NetworkConfig& cfg, RandomStream& rng) {
  ChannelRealization ch;
  ch.f0.resize(cfg.m, cfg.k);
  // Draw order is part of the reproducibility contract: F0 column-major,
  // then g0, then the shadowing normal.
  for (int k = 0; k < cfg.k; ++k) {
    for (int m = 0; m < cfg.m; ++m) {
      ch.f0(m, k) = rng.complex_normal();
    }
  }
  ch.g0.resize(cfg.m);
  for (int m = 0; m < cfg.m; ++m) ch.g0[m] = rng.complex_normal();

  ch.gamma = path_loss(cfg.l_db, cfg.distance, cfg.rho);
  ch.beta = shadowing_draw(cfg.sigma_s_db, rng);
  const double scale = ch.gamma * ch.beta;
  ch.f = scale * ch.f0;
  ch.g = scale * ch.g0;
  ch.noise_variance = cfg.noise_variance;
  return ch;
}

}  // namespace relaybf
