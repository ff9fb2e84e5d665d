#pragma once

#include <compare>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace declmine {

/// One (identity, relation type, group) triple of the organizational model,
/// e.g. (i2, role, Professor).
struct Relation {
    std::string identity;
    std::string relation_type;
    std::string group;

    auto operator<=>(const Relation&) const = default;
};

/// Organizational background knowledge. Immutable after construction;
/// membership queries are pure lookups.
class OrgModel {
public:
    OrgModel() = default;
    static OrgModel from_relations(std::vector<Relation> relations);

    const std::vector<Relation>& relations() const { return relations_; }
    bool empty() const { return relations_.empty(); }

    bool has_role(std::string_view identity, std::string_view relation_type,
                  std::string_view group) const;

    /// Distinct groups bound under the given relation type, sorted.
    std::vector<std::string> groups(std::string_view relation_type) const;

private:
    std::vector<Relation> relations_; // sorted, unique
};

/// Parses the relations CSV (header: resource,relation_type,group).
/// An empty input yields an empty model; the org model is optional.
OrgModel parse_relations(std::string_view csv_text);
OrgModel parse_relations_file(const std::filesystem::path& path);

} // namespace declmine
