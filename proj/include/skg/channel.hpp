#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "skg/wire.hpp"

namespace skg {

enum class Fading { None, Rayleigh };
enum class Csi { Perfect, None };

struct ChannelConfig {
    double snr_db = 20.0;
    Fading fading = Fading::None;
    double fading_variance = 1.0;  // H_c
    std::uint64_t seed = 0;
    Csi csi = Csi::Perfect;
};

/// Deterministic Box-Muller Gaussian source (libm-independent seeding path
/// would be overkill here; determinism per build is what the harness needs).
class GaussianRng {
  public:
    explicit GaussianRng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}
    double uniform();   // (0, 1)
    double gaussian();  // standard normal

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct TransmitResult {
    std::vector<Complex> received;
    Complex h{1.0, 0.0};
};

// received = h * z + n with per-complex-symbol noise power 10^(-snr_db/10);
// one fading draw per call (slow fading).
TransmitResult transmit(const std::vector<Complex>& symbols, const ChannelConfig& cfg);

std::vector<Complex> equalize(const std::vector<Complex>& received, Complex h, Csi csi);

// Theoretical QPSK bit error rate over AWGN at Es/N0 = 10^(snr_db/10).
double qpsk_ber_theory(double snr_db);

}  // namespace skg
