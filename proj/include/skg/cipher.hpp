#pragma once

#include <array>
#include <complex>
#include <vector>

#include "skg/chaoskey.hpp"
#include "skg/wire.hpp"

namespace skg {

struct WfrftParams {
    double alpha = 0.0;
    std::array<int, 8> scale_vector{};  // [m0..m3, n0..n3], entries in {0..3}
    static constexpr int num_terms = 4;
};

struct CipherText {
    SymbolFrame frames;
    std::vector<WfrftParams> params_per_packet;
};

// Unitary DFT (1/sqrt(rho) both ways). Radix-2 FFT for power-of-two lengths,
// direct evaluation otherwise.
std::vector<Complex> unitary_dft(const std::vector<Complex>& x, bool inverse);

// The four weighting coefficients omega_l(alpha, v), l = 0..3.
std::array<Complex, 4> wfrft_weights(double alpha, const std::array<int, 8>& v);

enum class TransformDirection { Forward, Inverse };

// y = sum_l omega_l(+-alpha, v) F^l(x) with F the unitary DFT, F^2 index reversal.
std::vector<Complex> mpwfrft(const std::vector<Complex>& x, const WfrftParams& params,
                             TransformDirection direction);

WfrftParams params_for_packet(const Keystream& ks, std::size_t packet);

CipherText encrypt(const SymbolFrame& frame, const Keystream& ks, double varpi);
SymbolFrame decrypt(const CipherText& ct, const Keystream& ks, double varpi);

}  // namespace skg
