#include "skg/cipher.hpp"

#include <cmath>

#include "skg/errors.hpp"

namespace skg {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::vector<Complex> dft_direct(const std::vector<Complex>& x, bool inverse) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n, Complex(0, 0));
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sgn * 2.0 * kPi * static_cast<double>(k * j) / static_cast<double>(n);
            out[k] += x[j] * Complex(std::cos(ang), std::sin(ang));
        }
    }
    return out;
}

std::vector<Complex> index_reversal(const std::vector<Complex>& x) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    out[0] = x[0];
    for (std::size_t i = 1; i < n; ++i) out[i] = x[n - i];
    return out;
}

}  // namespace

std::vector<Complex> unitary_dft(const std::vector<Complex>& x, bool inverse) {
    const std::size_t n = x.size();
    std::vector<Complex> out;
    if (is_pow2(n)) {
        out = x;
        fft_radix2(out, inverse);
    } else {
        out = dft_direct(x, inverse);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : out) v *= scale;
    return out;
}

std::array<Complex, 4> wfrft_weights(double alpha, const std::array<int, 8>& v) {
    std::array<Complex, 4> omega;
    for (int l = 0; l < 4; ++l) {
        Complex sum(0.0, 0.0);
        for (int k = 0; k < 4; ++k) {
            const double m = static_cast<double>(v[k]);
            const double n = static_cast<double>(v[4 + k]);
            const double phase =
                (2.0 * kPi / 4.0) * ((4.0 * m + 1.0) * alpha * (k + 4.0 * n) - l * k);
            sum += Complex(std::cos(phase), std::sin(phase));
        }
        omega[l] = sum * 0.25;
    }
    return omega;
}

std::vector<Complex> mpwfrft(const std::vector<Complex>& x, const WfrftParams& params,
                             TransformDirection direction) {
    if (x.empty()) throw std::invalid_argument("mpwfrft: empty packet");
    const double alpha =
        direction == TransformDirection::Forward ? params.alpha : -params.alpha;
    const auto omega = wfrft_weights(alpha, params.scale_vector);

    const auto f1 = unitary_dft(x, false);
    const auto f2 = index_reversal(x);
    const auto f3 = unitary_dft(x, true);

    std::vector<Complex> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = omega[0] * x[i] + omega[1] * f1[i] + omega[2] * f2[i] + omega[3] * f3[i];
    return out;
}

WfrftParams params_for_packet(const Keystream& ks, std::size_t packet) {
    if (9 * (packet + 1) > ks.tau.size())
        throw KeystreamExhausted("tau sequence too short for packet " + std::to_string(packet));
    WfrftParams p;
    p.alpha = ks.tau[9 * packet];
    for (int i = 0; i < 8; ++i)
        p.scale_vector[i] = static_cast<int>(ks.tau[9 * packet + 1 + i]);
    return p;
}

namespace {

struct DiagonalSlice {
    std::vector<Complex> combined;  // amp * e^{-2*pi*i*zeta} per symbol
};

DiagonalSlice build_diagonal(const SymbolFrame& frame, const Keystream& ks, double varpi) {
    const std::size_t total = frame.total_symbols();
    if (ks.f.size() < total || ks.zeta.size() < total)
        throw KeystreamExhausted("keystream shorter than frame symbol count");
    double f_max = 0.0;
    for (std::size_t i = 0; i < total; ++i) f_max = std::max(f_max, std::abs(ks.f[i]));
    DiagonalSlice d;
    d.combined.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        const double amp = std::abs(ks.f[i]) / f_max + varpi;
        const double phase = -2.0 * kPi * ks.zeta[i];
        d.combined[i] = amp * Complex(std::cos(phase), std::sin(phase));
    }
    return d;
}

}  // namespace

CipherText encrypt(const SymbolFrame& frame, const Keystream& ks, double varpi) {
    if (9 * frame.num_packets() > ks.tau.size())
        throw KeystreamExhausted("tau sequence shorter than 9 per packet");
    const auto diag = build_diagonal(frame, ks, varpi);

    CipherText ct;
    ct.frames = frame;
    ct.params_per_packet.reserve(frame.num_packets());
    const std::size_t X = frame.per_packet_x;
    for (std::size_t p = 0; p < frame.num_packets(); ++p) {
        auto& packet = ct.frames.packets[p];
        for (std::size_t i = 0; i < X; ++i) packet[i] *= diag.combined[p * X + i];
        const auto params = params_for_packet(ks, p);
        packet = mpwfrft(packet, params, TransformDirection::Forward);
        ct.params_per_packet.push_back(params);
    }
    return ct;
}

SymbolFrame decrypt(const CipherText& ct, const Keystream& ks, double varpi) {
    SymbolFrame frame = ct.frames;
    if (9 * frame.num_packets() > ks.tau.size())
        throw KeystreamExhausted("tau sequence shorter than 9 per packet");
    const auto diag = build_diagonal(frame, ks, varpi);

    const std::size_t X = frame.per_packet_x;
    for (std::size_t p = 0; p < frame.num_packets(); ++p) {
        auto& packet = frame.packets[p];
        const auto params = params_for_packet(ks, p);
        packet = mpwfrft(packet, params, TransformDirection::Inverse);
        for (std::size_t i = 0; i < X; ++i) packet[i] /= diag.combined[p * X + i];
    }
    return frame;
}

}  // namespace skg
