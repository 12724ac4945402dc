#include "skg/adversary.hpp"

#include "skg/errors.hpp"
#include "skg/recovery.hpp"

namespace skg {

const char* strategy_name(AdversaryStrategy s) {
    switch (s) {
        case AdversaryStrategy::NoKey: return "no_key";
        case AdversaryStrategy::RandomKey: return "random_key";
        default: return "diagonal_only";
    }
}

namespace {

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double unit_open(std::uint64_t v) {
    const double u = static_cast<double>(v >> 11) / 9007199254740992.0;
    return 1e-9 + u * (1.0 - 2e-9);
}

ChaosKey random_chaos_key(std::uint64_t seed) {
    ChaosKey k;
    k.x0 = unit_open(mix(seed * 3 + 1));
    k.y0 = unit_open(mix(seed * 3 + 2));
    k.map_param = unit_open(mix(seed * 3 + 3));
    k.burn_in = 1000;
    k.amplitude_offset = 0.5;
    return k;
}

SymbolFrame refill(const SymbolFrame& layout, const std::vector<Complex>& symbols) {
    SymbolFrame frame = layout;
    const std::size_t X = frame.per_packet_x;
    for (std::size_t p = 0; p < frame.num_packets(); ++p)
        for (std::size_t i = 0; i < X; ++i) frame.packets[p][i] = symbols[p * X + i];
    return frame;
}

}  // namespace

EavesdropResult eavesdrop(const std::vector<Complex>& received, Complex h,
                          const SymbolFrame& layout, AdversaryStrategy strategy,
                          double varpi_guess, std::uint64_t seed) {
    EavesdropResult res;
    std::vector<Complex> symbols;
    try {
        symbols = equalize(received, h, Csi::Perfect);
    } catch (const DeepFadeError&) {
        return res;
    }
    if (symbols.size() != layout.total_symbols()) return res;

    SymbolFrame frame = refill(layout, symbols);
    switch (strategy) {
        case AdversaryStrategy::NoKey:
            break;  // demodulate the encrypted symbols directly
        case AdversaryStrategy::RandomKey: {
            const ChaosKey guess = random_chaos_key(seed);
            Keystream ks;
            try {
                ks = generate_keystream(guess, frame.total_symbols(), frame.num_packets());
                CipherText ct;
                ct.frames = frame;
                frame = decrypt(ct, ks, guess.amplitude_offset);
            } catch (const std::exception&) {
                return res;
            }
            break;
        }
        case AdversaryStrategy::DiagonalOnly: {
            // Guessed diagonal with zeta = 0 and a flat amplitude of 1 + varpi.
            const double amp = 1.0 + varpi_guess;
            for (auto& packet : frame.packets)
                for (auto& s : packet) s /= amp;
            break;
        }
    }

    const BitStream bits = qpsk_demodulate(frame.flatten(true));
    const DecodeResult decoded = deserialize_kg(bits);
    if (!decoded.ok) return res;
    res.decoded = true;
    res.graph = decoded.graph;
    KnowledgeBase empty_kb;  // no shared KB: default templates only
    res.text = realize(res.graph, empty_kb);
    return res;
}

}  // namespace skg
