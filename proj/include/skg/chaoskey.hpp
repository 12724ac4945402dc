#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace skg {

/// Secret parameters of the 2D logistic-sine coupling map keystream generator.
struct ChaosKey {
    double x0 = 0.37;          // initial amplitude state
    double y0 = 0.71;          // initial phase state
    double map_param = 0.9;    // coupling parameter theta, in (0,1)
    std::uint32_t burn_in = 1000;
    double amplitude_offset = 0.5;  // varpi

    void validate() const;
};

struct Keystream {
    std::vector<double> f;     // per-symbol amplitudes, > 0
    std::vector<double> zeta;  // per-symbol phase factors in [0,1)
    std::vector<double> tau;   // 9 per packet: order alpha then 8 scale values
};

// Deterministic sine used by the map so sender and receiver builds agree bit-for-bit.
double fixed_sin(double x);

Keystream generate_keystream(const ChaosKey& key, std::size_t num_symbols,
                             std::size_t num_packets);

// log2 of the keyspace for a key encoding with `num_reals` double fields.
std::size_t keyspace_bits(std::size_t num_reals = 3);

ChaosKey load_key(const std::string& path);
void save_key(const ChaosKey& key, const std::string& path);

}  // namespace skg
