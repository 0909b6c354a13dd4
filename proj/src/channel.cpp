#include "channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ecoop {

ChannelParams::ChannelParams(double bandwidth_hz, double noise_psd_w_per_hz,
                             double rate_bps)
    : bandwidth(bandwidth_hz), noise_psd(noise_psd_w_per_hz), rate_threshold(rate_bps) {
  if (!(std::isfinite(bandwidth) && bandwidth > 0.0)) {
    throw std::invalid_argument("ChannelParams: bandwidth must be finite and > 0");
  }
  if (!(std::isfinite(noise_psd) && noise_psd > 0.0)) {
    throw std::invalid_argument("ChannelParams: noise_psd must be finite and > 0");
  }
  if (!(std::isfinite(rate_threshold) && rate_threshold >= 0.0)) {
    throw std::invalid_argument("ChannelParams: rate_threshold must be finite and >= 0");
  }
}

double achievable_rate(const ChannelParams& ch, double transmit_power_w) {
  if (!(transmit_power_w >= 0.0)) {
    throw std::domain_error("achievable_rate: transmit power must be >= 0");
  }
  return ch.bandwidth * std::log2(1.0 + transmit_power_w / (ch.bandwidth * ch.noise_psd));
}

double required_power(const ChannelParams& ch) {
  // expm1 keeps precision when r_b << b_i (the usual regime).
  const double exponent = ch.rate_threshold / ch.bandwidth;
  return ch.bandwidth * ch.noise_psd * std::expm1(exponent * std::numbers::ln2);
}

double demander_efficiency(const ChannelParams& ch) {
  if (ch.rate_threshold <= 0.0) {
    throw std::domain_error("demander_efficiency: undefined at zero rate threshold");
  }
  return ch.rate_threshold / required_power(ch);
}

}  // namespace ecoop
