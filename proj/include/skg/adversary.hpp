#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skg/channel.hpp"
#include "skg/cipher.hpp"
#include "skg/kb.hpp"
#include "skg/wire.hpp"

namespace skg {

enum class AdversaryStrategy { NoKey, RandomKey, DiagonalOnly };

const char* strategy_name(AdversaryStrategy s);

struct EavesdropResult {
    std::string text;
    bool decoded = false;
    KnowledgeGraph graph;  // valid only when decoded
};

// The eavesdropper gets the received symbols, perfect CSI, and knowledge of the
// frame layout, but no keys and no shared KB (default templates only).
EavesdropResult eavesdrop(const std::vector<Complex>& received, Complex h,
                          const SymbolFrame& layout, AdversaryStrategy strategy,
                          double varpi_guess, std::uint64_t seed);

}  // namespace skg
