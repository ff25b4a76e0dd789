// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "relaybf/rng.hpp"
#include "relaybf/types.hpp"

namespace relaybf {

/// Static description of the two-hop relay network and its experiment
/// defaults. All *_db / *_dbw quantities are decibel-valued; everything
/// else is linear.
struct NetworkConfig {
  int k = 3;        // signal sources; source 1 is the desired one
  int m = 8;        // relays
  int m_min = 3;    // minimum relays any selection must keep
  double snr_db = 10.0;
  double inr_db = 10.0;
  double p_t_dbw = 1.0;  // total relay transmit power budget
  double rho = 2.0;      // path loss exponent
  double l_db = 10.0;    // reference path loss
  double sigma_s_db = 3.0;  // shadowing spread
  double distance = 1.0;    // relative distance, normalized units
  double noise_variance = 1.0;  // sigma_nu^2 = sigma_n^2

  double p_t_linear() const;

  /// Throws ValidationError naming the offending key on hard violations;
  /// returns soft warnings (e.g. rho outside the usual 2..5 range).
  std::vector<std::string> validate() const;
};

/// Per-source transmit powers: the desired source from snr_db, every
/// interferer from inr_db, both relative to the noise variance.
RealVector source_powers(const NetworkConfig& cfg);

/// One fading draw. Large-scale factors are already folded into f and g;
/// f0/g0 keep the unit-variance small-scale part, so f = gamma*beta*f0 and
/// g = gamma*beta*g0 hold exactly.
struct ChannelRealization {
  ComplexMatrix f;   // M x K source->relay channels
  ComplexVector g;   // M relay->destination channels
  double gamma = 1.0;
  double beta = 1.0;
  ComplexMatrix f0;
  ComplexVector g0;
  double noise_variance = 1.0;  // relay and destination noise share it

  Index relays() const { return f.rows(); }
  Index sources() const { return f.cols(); }
};

/// gamma = sqrt(L_lin / d^rho) with L_lin = 10^(l_db/10). d must be > 0.
double path_loss(double l_db, double d, double rho);

/// beta = 10^(sigma_s * n / 10) with one standard normal draw n.
double shadowing_draw(double sigma_s_db, RandomStream& rng);

/// Draws f0, g0 i.i.d. CN(0,1) and scales both hops by one gamma*beta.
ChannelRealization draw_channels(const NetworkConfig& cfg, RandomStream& rng);

}  // namespace relaybf
