#include "skg/channel.hpp"

#include <cmath>

#include "skg/errors.hpp"

namespace skg {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

double GaussianRng::uniform() {
    const std::uint64_t r = splitmix64(state_);
    // 53-bit mantissa, shifted into (0, 1).
    return (static_cast<double>(r >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double GaussianRng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return mag * std::cos(2.0 * kPi * u2);
}

TransmitResult transmit(const std::vector<Complex>& symbols, const ChannelConfig& cfg) {
    if (symbols.empty()) throw std::invalid_argument("transmit: empty input");
    GaussianRng rng(cfg.seed);

    TransmitResult res;
    if (cfg.fading == Fading::Rayleigh) {
        if (cfg.fading_variance <= 0)
            throw std::invalid_argument("transmit: fading variance must be positive");
        const double s = std::sqrt(cfg.fading_variance / 2.0);
        res.h = Complex(s * rng.gaussian(), s * rng.gaussian());
    }

    const double noise_var = std::pow(10.0, -cfg.snr_db / 10.0);
    const double sigma_dim = std::sqrt(noise_var / 2.0);
    res.received.reserve(symbols.size());
    for (const auto& z : symbols) {
        const Complex n(sigma_dim * rng.gaussian(), sigma_dim * rng.gaussian());
        res.received.push_back(res.h * z + n);
    }
    return res;
}

std::vector<Complex> equalize(const std::vector<Complex>& received, Complex h, Csi csi) {
    if (csi == Csi::None) return received;
    if (std::abs(h) < 1e-12) throw DeepFadeError("channel gain below equalization threshold");
    std::vector<Complex> out;
    out.reserve(received.size());
    for (const auto& y : received) out.push_back(y / h);
    return out;
}

double qpsk_ber_theory(double snr_db) {
    // Unit-power symbols, noise variance sigma^2 = 10^(-snr/10) per symbol:
    // per-bit error probability Q(1/sigma) = 0.5*erfc(1/(sigma*sqrt(2))).
    const double sigma = std::sqrt(std::pow(10.0, -snr_db / 10.0));
    return 0.5 * std::erfc(1.0 / (sigma * std::sqrt(2.0)));
}

}  // namespace skg
