#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "xsltevo/xml.hpp"

namespace xsltevo {

enum class Axis : uint8_t { Child, Descendant };

struct Step {
    Axis axis = Axis::Child;
    std::string tag;
    std::optional<int> filter;  // cardinal predicate [k], k >= 1

    bool operator==(const Step&) const = default;
};

// Grammar:  `.` | [`/`] name(`[`int`]`)? ( (`/`|`//`) name(`[`int`]`)? )*
// An empty step list with absolute == false is the self expression ".".
struct PathExpr {
    bool absolute = false;
    std::vector<Step> steps;

    bool self() const { return !absolute && steps.empty(); }
    static PathExpr self_expr() { return PathExpr{}; }

    bool operator==(const PathExpr&) const = default;
};

class XPathParseError : public std::runtime_error {
public:
    explicit XPathParseError(const std::string& msg) : std::runtime_error(msg) {}
};

PathExpr parse_xpath(std::string_view text);
std::string to_string(const PathExpr& expr);

// Absolute child-axis unfiltered path over the given tags.
PathExpr absolute_path(const std::vector<std::string>& tags);

// Step-by-step evaluation. Filters bind per context node; results are in
// document order with duplicates removed. Absolute expressions start at the
// virtual document node, so their first step must match the root tag.
std::vector<NodeId> eval_path(const PathExpr& expr, NodeId context, const Document& doc);

// base must be absolute, rel relative or self. Self joins to base itself.
PathExpr join_paths(const PathExpr& base, const PathExpr& rel);

// True iff every node selected by the (absolute) expression has no element
// children. Throws std::invalid_argument when the path selects nothing.
bool path_depth_is_max(const PathExpr& expr, const TagCatalog& catalog);

}  // namespace xsltevo
