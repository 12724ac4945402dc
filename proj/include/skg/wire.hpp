#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "skg/kgraph.hpp"

namespace skg {

using Complex = std::complex<double>;

struct BitStream {
    std::vector<std::uint8_t> bits;  // 0/1 values
    std::size_t pad_bits = 0;
};

// Wire format: magic 0x4B47 (2B) | triple count (4B BE) | pad_bits (1B) |
// per triple: head, relation, tail each as 2B BE length + UTF-8 bytes.
BitStream serialize_kg(const KnowledgeGraph& g);

enum class DecodeError { None, BadMagic, Truncated, InvalidUtf8 };

struct DecodeResult {
    bool ok = false;
    DecodeError error = DecodeError::None;
    KnowledgeGraph graph;
};

// Total function: never throws on garbage input.
DecodeResult deserialize_kg(const BitStream& bits);

// Gray mapping: 00 -> (+1+j)/sqrt2, 01 -> (-1+j)/sqrt2, 11 -> (-1-j)/sqrt2, 10 -> (+1-j)/sqrt2.
std::vector<Complex> qpsk_modulate(const BitStream& bits);
BitStream qpsk_demodulate(const std::vector<Complex>& symbols);

struct SymbolFrame {
    std::vector<std::vector<Complex>> packets;  // L packets of X symbols each
    std::size_t blocks_m = 0;
    std::size_t block_n = 0;
    std::size_t per_packet_x = 0;
    std::size_t pad_symbols = 0;  // zero symbols appended to the last packet

    std::size_t num_packets() const { return packets.size(); }
    std::size_t bits_per_packet() const { return 2 * per_packet_x; }
    std::size_t total_symbols() const { return packets.size() * per_packet_x; }

    std::vector<Complex> flatten(bool drop_padding = true) const;
};

SymbolFrame packetize(const std::vector<Complex>& symbols, std::size_t blocks_m,
                      std::size_t block_n, std::size_t per_packet_x);

}  // namespace skg
