#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "xsltevo/xml.hpp"
#include "xsltevo/xpath.hpp"

namespace xsltevo {

// Pattern of a template's match attribute: "/", a bare tag name, or an
// absolute slash-separated tag path.
struct RootPattern {
    bool operator==(const RootPattern&) const = default;
};
using MatchPattern = std::variant<RootPattern, std::string, PathExpr>;

struct Instruction {
    enum class Kind : uint8_t { Apply, ValueOf };

    Kind kind = Kind::Apply;
    PathExpr select;
    bool wrapped = false;  // value-of emitted inside a line element

    bool operator==(const Instruction&) const = default;

    static Instruction apply(PathExpr sel) {
        return Instruction{Kind::Apply, std::move(sel), false};
    }
    static Instruction value_of(PathExpr sel) {
        return Instruction{Kind::ValueOf, std::move(sel), true};
    }
};

struct Template {
    MatchPattern match;
    std::vector<Instruction> body;

    bool operator==(const Template&) const = default;
};

struct Stylesheet {
    std::vector<Template> templates;   // first one matches "/"
    std::string wrapper_tag = "output";
    std::string line_tag = "line";

    bool operator==(const Stylesheet&) const = default;
};

struct TransformLimits {
    int max_recursion_depth = 0;
    int max_output_lines = 0;

    static TransformLimits defaults(int input_height, int target_line_count) {
        return TransformLimits{input_height + 8, 16 * target_line_count + 64};
    }
};

class TransformOverflow : public std::runtime_error {
public:
    explicit TransformOverflow(const std::string& msg) : std::runtime_error(msg) {}
};

// A stylesheet (or input) outside the supported subset.
class StylesheetError : public std::runtime_error {
public:
    explicit StylesheetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Executes the stylesheet against the input. Output is a flat document:
// one wrapper element holding line elements and raw text. Unmatched
// elements fall back to the built-in rule (recurse into children), text
// nodes copy their data. Throws TransformOverflow when limits are exceeded.
Document transform(const Stylesheet& sheet, const Document& input, const TransformLimits& limits);

// First template whose pattern matches the node, or nullptr. Text nodes
// never match a user template.
const Template* match_template(NodeId node, const Stylesheet& sheet, const Document& doc);

// Standard XSLT 1.0 text with the fixed stylesheet/output header.
std::string render_stylesheet(const Stylesheet& sheet);

// Parses an XSLT document into the restricted model. Constructs outside the
// subset raise StylesheetError naming the offending construct.
Stylesheet parse_stylesheet(const Document& doc, const std::string& line_tag = "line");

// Template count plus instruction count; the "length" term of the fitness.
int sheet_size(const Stylesheet& sheet);

}  // namespace xsltevo
