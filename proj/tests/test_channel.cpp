#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "skg/channel.hpp"
#include "skg/errors.hpp"
#include "skg/wire.hpp"

using namespace skg;

TEST_CASE("very high snr leaves symbols essentially untouched") {
    std::vector<Complex> syms{{1, 0}, {0, -1}, {0.5, 0.5}};
    ChannelConfig cfg;
    cfg.snr_db = 300.0;
    auto res = transmit(syms, cfg);
    CHECK(res.h == Complex(1.0, 0.0));
    for (std::size_t i = 0; i < syms.size(); ++i)
        CHECK(std::abs(res.received[i] - syms[i]) < 1e-10);
}

TEST_CASE("empirical noise power matches 10^(-snr/10) within 2%") {
    const std::size_t n = 200000;
    std::vector<Complex> syms(n, Complex(0.0, 0.0));
    ChannelConfig cfg;
    cfg.snr_db = 10.0;
    cfg.seed = 123;
    auto res = transmit(syms, cfg);
    double power = 0;
    for (const auto& z : res.received) power += std::norm(z);
    power /= static_cast<double>(n);
    CHECK(power == doctest::Approx(0.1).epsilon(0.02));
}

TEST_CASE("noise is zero-mean and split evenly between components") {
    const std::size_t n = 200000;
    std::vector<Complex> syms(n, Complex(0.0, 0.0));
    ChannelConfig cfg;
    cfg.snr_db = 0.0;
    cfg.seed = 9;
    auto res = transmit(syms, cfg);
    double mr = 0, mi = 0, pr = 0, pi = 0;
    for (const auto& z : res.received) {
        mr += z.real();
        mi += z.imag();
        pr += z.real() * z.real();
        pi += z.imag() * z.imag();
    }
    CHECK(std::abs(mr / n) < 0.01);
    CHECK(std::abs(mi / n) < 0.01);
    CHECK(pr / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(pi / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("transmission is deterministic per seed, distinct across seeds") {
    std::vector<Complex> syms(32, Complex(1.0, 0.0));
    ChannelConfig cfg;
    cfg.snr_db = 10.0;
    cfg.fading = Fading::Rayleigh;
    cfg.seed = 42;
    auto a = transmit(syms, cfg);
    auto b = transmit(syms, cfg);
    CHECK(a.h == b.h);
    CHECK(a.received == b.received);
    cfg.seed = 43;
    auto c = transmit(syms, cfg);
    CHECK(a.h != c.h);
}

TEST_CASE("slow fading: one gain per call, empirical E|h|^2 near H_c") {
    ChannelConfig cfg;
    cfg.snr_db = 300.0;
    cfg.fading = Fading::Rayleigh;
    cfg.fading_variance = 2.0;
    std::vector<Complex> syms(4, Complex(1.0, 0.0));
    double mean_h2 = 0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        cfg.seed = 1000 + static_cast<std::uint64_t>(t);
        auto res = transmit(syms, cfg);
        // All symbols in one call see the same gain.
        for (const auto& y : res.received) CHECK(std::abs(y - res.h) < 1e-10);
        mean_h2 += std::norm(res.h);
    }
    CHECK(mean_h2 / trials == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("zero-forcing equalization recovers faded symbols") {
    std::vector<Complex> sent{{0.7, -0.1}, {-0.3, 0.9}};
    const Complex h(0.4, -1.1);
    std::vector<Complex> rec;
    for (const auto& z : sent) rec.push_back(h * z);
    auto eq = equalize(rec, h, Csi::Perfect);
    for (std::size_t i = 0; i < sent.size(); ++i) CHECK(std::abs(eq[i] - sent[i]) < 1e-12);

    // Without CSI the received vector passes through unchanged.
    CHECK(equalize(rec, h, Csi::None) == rec);
}

TEST_CASE("deep fade raises an error under perfect CSI") {
    std::vector<Complex> rec{{0.1, 0.1}};
    CHECK_THROWS_AS(equalize(rec, Complex(1e-13, 0.0), Csi::Perfect), DeepFadeError);
}

TEST_CASE("input validation") {
    ChannelConfig cfg;
    CHECK_THROWS(transmit({}, cfg));
    cfg.fading = Fading::Rayleigh;
    cfg.fading_variance = 0.0;
    CHECK_THROWS(transmit({{1, 0}}, cfg));
}

TEST_CASE("theoretical qpsk ber reference points") {
    // Q(1/sigma) at snr 0 dB: sigma = 1 -> Q(1) = 0.158655...
    CHECK(qpsk_ber_theory(0.0) == doctest::Approx(0.15865525393145707).epsilon(1e-9));
    // snr 10 dB: Q(sqrt(10)) = 0.00078649...
    CHECK(qpsk_ber_theory(10.0) == doctest::Approx(0.0007827011290012762).epsilon(1e-6));
    CHECK(qpsk_ber_theory(40.0) < 1e-12);
}

TEST_CASE("measured awgn ber tracks the closed form at 5 dB") {
    // 2e5 QPSK symbols through AWGN, count bit errors.
    const std::size_t n = 200000;
    BitStream bits;
    GaussianRng brng(77);
    for (std::size_t i = 0; i < 2 * n; ++i)
        bits.bits.push_back(brng.uniform() < 0.5 ? 0 : 1);
    auto syms = qpsk_modulate(bits);
    ChannelConfig cfg;
    cfg.snr_db = 5.0;
    cfg.seed = 31337;
    auto res = transmit(syms, cfg);
    BitStream out = qpsk_demodulate(res.received);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < bits.bits.size(); ++i)
        if (bits.bits[i] != out.bits[i]) ++errors;
    const double ber = static_cast<double>(errors) / static_cast<double>(bits.bits.size());
    const double p = qpsk_ber_theory(5.0);
    const double sd = std::sqrt(p * (1 - p) / static_cast<double>(bits.bits.size()));
    CHECK(std::abs(ber - p) < 4 * sd + 1e-6);
}
