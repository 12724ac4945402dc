#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace skg {

/// Shared sender/receiver knowledge base: entities with surface-form aliases,
/// relation triples, and per-relation surface templates.
class KnowledgeBase {
  public:
    void add_entity(const std::string& canonical, const std::vector<std::string>& aliases = {});
    void add_relation(const std::string& head, const std::string& relation, const std::string& tail);
    void add_template(const std::string& relation, const std::string& tmpl);

    bool has_entity(const std::string& canonical) const { return entities_.count(canonical) > 0; }

    // Exact alias/canonical match first, then case-insensitive.
    std::optional<std::string> resolve(const std::string& surface) const;

    // All relations touching `entity` (as head or tail), deterministic order.
    std::vector<std::pair<std::string, std::string>> one_hop(const std::string& entity) const;

    // Relation label between two canonical entities, if asserted (either direction).
    std::optional<std::string> relation_between(const std::string& a, const std::string& b) const;

    // Surface template for a relation; default template when none registered.
    std::string render(const std::string& head, const std::string& relation,
                       const std::string& tail) const;

    const std::set<std::string>& entities() const { return entities_; }
    const std::map<std::string, std::vector<std::string>>& aliases() const { return entity_aliases_; }
    const std::vector<std::array<std::string, 3>>& relations() const { return relations_; }
    const std::map<std::string, std::string>& templates() const { return templates_; }

    void validate() const;

    bool operator==(const KnowledgeBase& other) const {
        return entities_ == other.entities_ && entity_aliases_ == other.entity_aliases_ &&
               relations_ == other.relations_ && templates_ == other.templates_;
    }

  private:
    std::set<std::string> entities_;
    std::map<std::string, std::vector<std::string>> entity_aliases_;
    std::map<std::string, std::string> alias_to_canonical_;
    std::map<std::string, std::string> alias_lower_to_canonical_;
    std::vector<std::array<std::string, 3>> relations_;
    std::map<std::string, std::string> templates_;
};

// Replaces underscores by spaces (canonical entity name -> surface form).
std::string surface_form(const std::string& canonical);

// Renders a triple through the default "{head} {relation} {tail}." template.
std::string default_render(const std::string& head, const std::string& relation,
                           const std::string& tail);

KnowledgeBase load_kb(const std::string& path);
void write_kb(const KnowledgeBase& kb, const std::string& path);

}  // namespace skg
