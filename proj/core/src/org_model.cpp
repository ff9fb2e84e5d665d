#include "declmine/org_model.hpp"

#include "declmine/csv.hpp"
#include "declmine/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace declmine {

namespace {

std::string trim_copy(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return std::string(s);
}

} // namespace

OrgModel OrgModel::from_relations(std::vector<Relation> relations) {
    std::sort(relations.begin(), relations.end());
    relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
    OrgModel model;
    model.relations_ = std::move(relations);
    return model;
}

bool OrgModel::has_role(std::string_view identity, std::string_view relation_type,
                        std::string_view group) const {
    Relation probe{std::string(identity), std::string(relation_type), std::string(group)};
    return std::binary_search(relations_.begin(), relations_.end(), probe);
}

std::vector<std::string> OrgModel::groups(std::string_view relation_type) const {
    std::vector<std::string> out;
    for (const auto& rel : relations_) {
        if (rel.relation_type == relation_type)
            out.push_back(rel.group);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

OrgModel parse_relations(std::string_view csv_text) {
    auto records = parse_csv(csv_text);
    if (records.empty())
        return OrgModel{};

    const auto& header = records.front().fields;
    auto column = [&](std::string_view name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (trim_copy(header[i]) == name)
                return i;
        }
        throw ParseError("relations header does not name column '" + std::string(name) + "'",
                         records.front().line);
    };
    const std::size_t col_resource = column("resource");
    const std::size_t col_type = column("relation_type");
    const std::size_t col_group = column("group");

    std::vector<Relation> relations;
    relations.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(rec.fields.size()),
                             rec.line);
        Relation rel;
        rel.identity = trim_copy(rec.fields[col_resource]);
        rel.relation_type = trim_copy(rec.fields[col_type]);
        rel.group = trim_copy(rec.fields[col_group]);
        if (rel.identity.empty() || rel.relation_type.empty() || rel.group.empty())
            throw ParseError("relation fields must be non-empty", rec.line);
        relations.push_back(std::move(rel));
    }
    return OrgModel::from_relations(std::move(relations));
}

OrgModel parse_relations_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_relations(buffer.str());
}

} // namespace declmine
