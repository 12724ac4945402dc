#pragma once

#include <string>

#include "skg/kb.hpp"
#include "skg/kgraph.hpp"

namespace skg {

// Deterministic KB-template surface realizer: triples in canonical order,
// sentences joined by single spaces. Empty graph -> empty string.
std::string realize(const KnowledgeGraph& g, const KnowledgeBase& kb);

}  // namespace skg
