#pragma once

namespace ecoop {

// Band-limited AWGN channel with a target data rate. SI units throughout:
// Hz, W/Hz, bits/s. Reporting layers convert to microwatts where needed.
struct ChannelParams {
  double bandwidth;       // b_i, Hz, > 0
  double noise_psd;       // N_0, W/Hz, > 0
  double rate_threshold;  // r_b, bits/s, >= 0

  ChannelParams(double bandwidth_hz, double noise_psd_w_per_hz, double rate_bps);
};

// Shannon rate b*log2(1 + P/(b*N0)). Throws std::domain_error for negative power.
double achievable_rate(const ChannelParams& ch, double transmit_power_w);

// Transmit power sustaining the rate threshold: b*N0*(2^(r/b) - 1).
double required_power(const ChannelParams& ch);

// Bits delivered per joule at the rate threshold, r / required_power.
// Throws std::domain_error when the rate threshold is zero.
double demander_efficiency(const ChannelParams& ch);

}  // namespace ecoop
