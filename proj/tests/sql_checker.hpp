#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace sql_checker {

struct CheckResult {
    bool ok = false;
    std::string error; // empty when ok
};

/// Standards-leaning grammar check for the subset of SQL the emitter
/// produces: SELECT lists of expressions, comma FROM lists with subqueries
/// and aliases, WHERE/HAVING boolean expressions with EXISTS / NOT EXISTS /
/// quantified ALL comparisons, GROUP BY, UNION chains, CAST/COUNT calls,
/// string and numeric literals. Lines starting with -- are comments.
/// It validates grammar only; it knows nothing about semantics.
CheckResult check_sql(std::string_view text);

} // namespace sql_checker
