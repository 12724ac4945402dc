#include "skg/recovery.hpp"

namespace skg {

std::string realize(const KnowledgeGraph& g, const KnowledgeBase& kb) {
    std::string out;
    for (const auto& t : g.triples) {
        if (!out.empty()) out += " ";
        out += kb.render(t[0], t[1], t[2]);
    }
    return out;
}

}  // namespace skg
