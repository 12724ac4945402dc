#include "skg/kb.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "skg/errors.hpp"

namespace skg {

namespace {

std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

}  // namespace

std::string surface_form(const std::string& canonical) {
    return replace_all(canonical, "_", " ");
}

std::string default_render(const std::string& head, const std::string& relation,
                           const std::string& tail) {
    return surface_form(head) + " " + replace_all(relation, "_", " ") + " " + surface_form(tail) + ".";
}

void KnowledgeBase::add_entity(const std::string& canonical, const std::vector<std::string>& aliases) {
    entities_.insert(canonical);
    auto bind = [&](const std::string& alias) {
        auto it = alias_to_canonical_.find(alias);
        if (it != alias_to_canonical_.end() && it->second != canonical)
            throw ValidationError("alias '" + alias + "' maps to both '" + it->second + "' and '" +
                                  canonical + "'");
        alias_to_canonical_[alias] = canonical;
        alias_lower_to_canonical_[to_lower(alias)] = canonical;
    };
    bind(canonical);
    bind(surface_form(canonical));
    for (const auto& a : aliases) bind(a);
    auto& stored = entity_aliases_[canonical];
    for (const auto& a : aliases)
        if (std::find(stored.begin(), stored.end(), a) == stored.end()) stored.push_back(a);
}

void KnowledgeBase::add_relation(const std::string& head, const std::string& relation,
                                 const std::string& tail) {
    relations_.push_back({head, relation, tail});
}

void KnowledgeBase::add_template(const std::string& relation, const std::string& tmpl) {
    templates_[relation] = tmpl;
}

std::optional<std::string> KnowledgeBase::resolve(const std::string& surface) const {
    auto it = alias_to_canonical_.find(surface);
    if (it != alias_to_canonical_.end()) return it->second;
    auto lo = alias_lower_to_canonical_.find(to_lower(surface));
    if (lo != alias_lower_to_canonical_.end()) return lo->second;
    return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> KnowledgeBase::one_hop(
    const std::string& entity) const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& r : relations_) {
        if (r[0] == entity) out.emplace_back(r[2], r[1]);
        else if (r[2] == entity) out.emplace_back(r[0], r[1]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::string> KnowledgeBase::relation_between(const std::string& a,
                                                           const std::string& b) const {
    for (const auto& r : relations_)
        if ((r[0] == a && r[2] == b) || (r[0] == b && r[2] == a)) return r[1];
    return std::nullopt;
}

std::string KnowledgeBase::render(const std::string& head, const std::string& relation,
                                  const std::string& tail) const {
    auto it = templates_.find(relation);
    if (it == templates_.end()) return default_render(head, relation, tail);
    std::string s = it->second;
    s = replace_all(s, "{head}", surface_form(head));
    s = replace_all(s, "{tail}", surface_form(tail));
    return s;
}

void KnowledgeBase::validate() const {
    for (const auto& r : relations_) {
        if (!has_entity(r[0]))
            throw ValidationError("relation endpoint not a KB entity: " + r[0]);
        if (!has_entity(r[2]))
            throw ValidationError("relation endpoint not a KB entity: " + r[2]);
    }
}

KnowledgeBase load_kb(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open KB file: " + path);
    KnowledgeBase kb;
    enum class Section { None, Entity, Relation, Template } section = Section::None;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line == "#ENTITY") { section = Section::Entity; continue; }
        if (line == "#RELATION") { section = Section::Relation; continue; }
        if (line == "#TEMPLATE") { section = Section::Template; continue; }
        if (line[0] == '#') continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, '\t')) fields.push_back(f);

        switch (section) {
            case Section::Entity: {
                if (fields.empty())
                    throw ValidationError("bad ENTITY line " + std::to_string(lineno));
                std::vector<std::string> aliases(fields.begin() + 1, fields.end());
                kb.add_entity(fields[0], aliases);
                break;
            }
            case Section::Relation: {
                if (fields.size() != 3)
                    throw ValidationError("bad RELATION line " + std::to_string(lineno));
                if (!kb.has_entity(fields[0]) || !kb.has_entity(fields[2]))
                    throw ValidationError("relation references unknown entity at line " +
                                          std::to_string(lineno));
                kb.add_relation(fields[0], fields[1], fields[2]);
                break;
            }
            case Section::Template: {
                if (fields.size() != 2)
                    throw ValidationError("bad TEMPLATE line " + std::to_string(lineno));
                kb.add_template(fields[0], fields[1]);
                break;
            }
            case Section::None:
                throw ValidationError("content before any section header at line " +
                                      std::to_string(lineno));
        }
    }
    kb.validate();
    return kb;
}

void write_kb(const KnowledgeBase& kb, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write KB file: " + path);
    out << "#ENTITY\n";
    for (const auto& e : kb.entities()) {
        out << e;
        auto it = kb.aliases().find(e);
        if (it != kb.aliases().end())
            for (const auto& a : it->second) out << "\t" << a;
        out << "\n";
    }
    out << "#RELATION\n";
    for (const auto& r : kb.relations()) out << r[0] << "\t" << r[1] << "\t" << r[2] << "\n";
    out << "#TEMPLATE\n";
    for (const auto& [rel, tmpl] : kb.templates()) out << rel << "\t" << tmpl << "\n";
}

}  // namespace skg
