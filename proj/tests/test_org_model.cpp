#include "declmine/org_model.hpp"

#include "declmine/errors.hpp"

#include <doctest.h>

#include "testing_support.hpp"

using namespace declmine;
namespace ts = testing_support;

TEST_SUITE("org_model") {

TEST_CASE("sample relations resolve the expected role groups") {
    OrgModel org = ts::sample_org();
    CHECK(org.relations().size() == 5);
    CHECK(org.groups("role") == std::vector<std::string>{"Admin", "Professor", "Student"});

    CHECK(org.has_role("i2", "role", "Professor"));
    CHECK_FALSE(org.has_role("i4", "role", "Student")); // i4 is Admin
    CHECK_FALSE(org.has_role("i9", "role", "Student"));
}

TEST_CASE("empty input yields an empty model") {
    OrgModel org = parse_relations("");
    CHECK(org.empty());
    CHECK_FALSE(org.has_role("i1", "role", "Student"));
    CHECK(org.groups("role").empty());
}

TEST_CASE("duplicate triples collapse to one") {
    OrgModel org = parse_relations("resource,relation_type,group\n"
                                   "i1,role,Student\n"
                                   "i1,role,Student\n");
    CHECK(org.relations().size() == 1);
}

TEST_CASE("identities may hold several groups under one relation type") {
    OrgModel org = parse_relations("resource,relation_type,group\n"
                                   "i1,role,Student\n"
                                   "i1,role,Tutor\n");
    CHECK(org.has_role("i1", "role", "Student"));
    CHECK(org.has_role("i1", "role", "Tutor"));
}

TEST_CASE("non-role relation types are stored but separate") {
    OrgModel org = parse_relations("resource,relation_type,group\n"
                                   "i1,role,Student\n"
                                   "i1,unit,Physics\n");
    CHECK(org.has_role("i1", "unit", "Physics"));
    CHECK_FALSE(org.has_role("i1", "role", "Physics"));
    CHECK(org.groups("role") == std::vector<std::string>{"Student"});
}

TEST_CASE("malformed rows are parse errors") {
    CHECK_THROWS_AS(parse_relations("resource,relation_type,group\ni1,role\n"), ParseError);
    CHECK_THROWS_AS(parse_relations("resource,relation_type,group\ni1,,Student\n"), ParseError);
    CHECK_THROWS_AS(parse_relations("wrong,header,names\n"), ParseError);
}

TEST_CASE("adding an unrelated triple never flips an existing answer") {
    std::vector<Relation> base = {{"i1", "role", "Student"}, {"i2", "role", "Professor"}};
    OrgModel before = OrgModel::from_relations(base);

    const std::string identities[] = {"i1", "i2", "i3"};
    const std::string groups[] = {"Student", "Professor", "Admin"};

    std::vector<Relation> extended = base;
    extended.push_back({"i3", "role", "Admin"});
    OrgModel after = OrgModel::from_relations(extended);

    for (const auto& identity : identities) {
        for (const auto& group : groups) {
            if (identity == "i3")
                continue; // the new triple's own subject may change
            CHECK(before.has_role(identity, "role", group) ==
                  after.has_role(identity, "role", group));
        }
    }
}

} // TEST_SUITE
