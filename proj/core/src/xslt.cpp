#include "xsltevo/xslt.hpp"

#include <algorithm>
#include <cassert>

namespace xsltevo {

namespace {

// Output documents are flat: one wrapper element whose children are line
// elements and text nodes. Consecutive raw text emissions are merged with a
// newline so the canonical lines survive a serialize/re-parse round trip.
struct OutputBuilder {
    Document doc;
    const TransformLimits& limits;
    std::string line_tag;
    NodeId wrapper;
    int line_count = 0;

    OutputBuilder(const std::string& wrapper_tag, const std::string& line_tag,
                  const TransformLimits& limits)
        : limits(limits), line_tag(line_tag) {
        doc.nodes.emplace_back();
        doc.nodes[0].kind = NodeKind::Element;
        doc.nodes[0].tag = wrapper_tag;
        doc.nodes[0].depth = 1;
        doc.root = 0;
        wrapper = 0;
    }

    void bump_lines(int n) {
        line_count += n;
        if (line_count > limits.max_output_lines)
            throw TransformOverflow("output exceeds " +
                                    std::to_string(limits.max_output_lines) + " lines");
    }

    void raw_text(const std::string& s) {
        if (s.empty()) return;
        bump_lines(int(split_trimmed_lines(s).size()));
        auto& kids = doc.nodes[size_t(wrapper)].children;
        if (!kids.empty() && doc.node(kids.back()).is_text()) {
            Node& last = doc.nodes[size_t(kids.back())];
            last.text.push_back('\n');
            last.text += s;
            return;
        }
        NodeId id = NodeId(doc.nodes.size());
        doc.nodes.emplace_back();
        doc.nodes.back().kind = NodeKind::Text;
        doc.nodes.back().text = s;
        doc.nodes.back().parent = wrapper;
        doc.nodes.back().depth = 2;
        doc.nodes[size_t(wrapper)].children.push_back(id);
    }

    void line_element(const std::string& s) {
        bump_lines(1);
        NodeId id = NodeId(doc.nodes.size());
        doc.nodes.emplace_back();
        doc.nodes.back().kind = NodeKind::Element;
        doc.nodes.back().tag = line_tag;
        doc.nodes.back().parent = wrapper;
        doc.nodes.back().depth = 2;
        doc.nodes[size_t(wrapper)].children.push_back(id);
        if (!s.empty()) {
            NodeId t = NodeId(doc.nodes.size());
            doc.nodes.emplace_back();
            doc.nodes.back().kind = NodeKind::Text;
            doc.nodes.back().text = s;
            doc.nodes.back().parent = id;
            doc.nodes.back().depth = 3;
            doc.nodes[size_t(id)].children.push_back(t);
        }
    }

    Document finish() {
        for (size_t i = doc.nodes.size(); i-- > 0;) {
            Node& n = doc.nodes[i];
            n.subtree_end = n.children.empty() ? NodeId(i + 1)
                                               : doc.node(n.children.back()).subtree_end;
        }
        return std::move(doc);
    }
};

struct Engine {
    const Stylesheet& sheet;
    const Document& input;
    const TransformLimits& limits;
    OutputBuilder& out;

    void check_depth(int depth) const {
        if (depth > limits.max_recursion_depth)
            throw TransformOverflow("recursion deeper than " +
                                    std::to_string(limits.max_recursion_depth));
    }

    void exec_body(const std::vector<Instruction>& body, NodeId context, int depth) {
        check_depth(depth);
        for (const Instruction& instr : body) {
            std::vector<NodeId> selected = eval_path(instr.select, context, input);
            if (instr.kind == Instruction::Kind::Apply) {
                for (NodeId node : selected) dispatch(node, depth + 1);
            } else {
                std::string text =
                    selected.empty() ? std::string() : string_value(input, selected.front());
                if (instr.wrapped)
                    out.line_element(text);
                else
                    out.raw_text(text);
            }
        }
    }

    void dispatch(NodeId node, int depth) {
        check_depth(depth);
        const Node& n = input.node(node);
        if (n.is_text()) {
            out.raw_text(n.text);
            return;
        }
        if (const Template* t = match_template(node, sheet, input)) {
            exec_body(t->body, node, depth + 1);
        } else {
            // built-in rule: recurse into all children, elements and text
            for (NodeId c : n.children) dispatch(c, depth + 1);
        }
    }
};

std::string quote_single(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '\'')
            out += "&apos;";
        else
            out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

std::string match_text(const MatchPattern& match) {
    if (std::holds_alternative<RootPattern>(match)) return "/";
    if (const std::string* tag = std::get_if<std::string>(&match)) return *tag;
    return to_string(std::get<PathExpr>(match));
}

[[noreturn]] void reject(const std::string& what) { throw StylesheetError(what); }

MatchPattern parse_match(const std::string& text) {
    std::string t = trim(text);
    if (t == "/") return RootPattern{};
    if (!t.empty() && t[0] == '/') {
        PathExpr expr = parse_xpath(t);
        for (const Step& step : expr.steps) {
            if (step.axis != Axis::Child)
                reject("unsupported match pattern '" + t + "': descendant step");
            if (step.filter) reject("unsupported match pattern '" + t + "': filter");
        }
        return expr;
    }
    if (t.find('/') != std::string::npos || t.find('[') != std::string::npos ||
        t.find('.') != std::string::npos)
        reject("unsupported match pattern '" + t + "': expected a bare tag name");
    return t;
}

const std::string* find_attr(const Node& n, const std::string& name) {
    for (const auto& a : n.attributes)
        if (a.name == name) return &a.value;
    return nullptr;
}

Instruction parse_instruction_element(const Document& doc, NodeId id,
                                      const std::string& line_tag) {
    const Node& n = doc.node(id);
    if (n.tag == "xsl:apply-templates") {
        if (!n.children.empty()) reject("xsl:apply-templates must be empty in this subset");
        const std::string* select = find_attr(n, "select");
        if (!select) reject("xsl:apply-templates requires a select attribute");
        PathExpr expr = parse_xpath(*select);
        if (expr.self()) reject("xsl:apply-templates select must not be '.'");
        return Instruction{Instruction::Kind::Apply, std::move(expr), false};
    }
    if (n.tag == "xsl:value-of") {
        if (!n.children.empty()) reject("xsl:value-of must be empty");
        const std::string* select = find_attr(n, "select");
        if (!select) reject("xsl:value-of requires a select attribute");
        return Instruction{Instruction::Kind::ValueOf, parse_xpath(*select), false};
    }
    if (n.tag == line_tag) {
        if (n.children.size() != 1 || !doc.node(n.children[0]).is_element() ||
            doc.node(n.children[0]).tag != "xsl:value-of")
            reject("a <" + line_tag + "> wrapper must contain exactly one xsl:value-of");
        Instruction inner = parse_instruction_element(doc, n.children[0], line_tag);
        inner.wrapped = true;
        return inner;
    }
    reject("unsupported construct: <" + n.tag + ">");
}

std::vector<Instruction> parse_body(const Document& doc, const std::vector<NodeId>& children,
                                    const std::string& line_tag) {
    std::vector<Instruction> body;
    for (NodeId c : children) {
        if (doc.node(c).is_text()) reject("unexpected literal text inside a template");
        body.push_back(parse_instruction_element(doc, c, line_tag));
    }
    if (body.empty()) reject("template bodies must not be empty");
    return body;
}

}  // namespace

const Template* match_template(NodeId node, const Stylesheet& sheet, const Document& doc) {
    const Node& n = doc.node(node);
    if (!n.is_element()) return nullptr;
    for (const Template& t : sheet.templates) {
        if (const std::string* tag = std::get_if<std::string>(&t.match)) {
            if (*tag == n.tag) return &t;
        } else if (const PathExpr* path = std::get_if<PathExpr>(&t.match)) {
            if (int32_t(path->steps.size()) != n.depth) continue;
            NodeId cur = node;
            bool ok = true;
            for (size_t i = path->steps.size(); i-- > 0;) {
                if (cur == kDocumentNode || doc.node(cur).tag != path->steps[i].tag) {
                    ok = false;
                    break;
                }
                cur = doc.node(cur).parent;
            }
            if (ok && cur == kDocumentNode) return &t;
        }
        // RootPattern never matches an element node.
    }
    return nullptr;
}

Document transform(const Stylesheet& sheet, const Document& input,
                   const TransformLimits& limits) {
    if (sheet.templates.empty() || !std::holds_alternative<RootPattern>(sheet.templates[0].match))
        throw StylesheetError("first template must match \"/\"");
    assert(limits.max_recursion_depth > 0 && limits.max_output_lines > 0);
    OutputBuilder out(sheet.wrapper_tag, sheet.line_tag, limits);
    Engine engine{sheet, input, limits, out};
    engine.exec_body(sheet.templates[0].body, kDocumentNode, 1);
    return out.finish();
}

std::string render_stylesheet(const Stylesheet& sheet) {
    std::string out = "<?xml version=\"1.0\"?>\n";
    out += "<xsl:stylesheet version=\"1.0\" xmlns:xsl=\"http://www.w3.org/1999/XSL/Transform\">\n";
    out += "  <xsl:output method=\"xml\" indent='yes'/>\n";

    auto write_instruction = [&](const Instruction& instr, int level) {
        std::string pad(size_t(2 * level), ' ');
        if (instr.kind == Instruction::Kind::Apply) {
            out += pad + "<xsl:apply-templates select=" + quote_single(to_string(instr.select)) +
                   "/>\n";
        } else if (instr.wrapped) {
            out += pad + "<" + sheet.line_tag + "><xsl:value-of select=" +
                   quote_single(to_string(instr.select)) + "/></" + sheet.line_tag + ">\n";
        } else {
            out += pad + "<xsl:value-of select=" + quote_single(to_string(instr.select)) + "/>\n";
        }
    };

    for (size_t i = 0; i < sheet.templates.size(); i++) {
        const Template& t = sheet.templates[i];
        bool root = std::holds_alternative<RootPattern>(t.match);
        out += "  <xsl:template match=";
        out += root ? "\"/\"" : quote_single(match_text(t.match));
        out += ">\n";
        if (root) {
            out += "    <" + sheet.wrapper_tag + ">\n";
            for (const Instruction& instr : t.body) write_instruction(instr, 3);
            out += "    </" + sheet.wrapper_tag + ">\n";
        } else {
            for (const Instruction& instr : t.body) write_instruction(instr, 2);
        }
        out += "  </xsl:template>\n";
    }
    out += "</xsl:stylesheet>\n";
    return out;
}

Stylesheet parse_stylesheet(const Document& doc, const std::string& line_tag) {
    const Node& root = doc.root_node();
    if (root.tag != "xsl:stylesheet") reject("not an xsl:stylesheet document");

    Stylesheet sheet;
    sheet.line_tag = line_tag;
    bool saw_wrapper = false;

    for (NodeId c : root.children) {
        const Node& n = doc.node(c);
        if (n.is_text()) reject("unexpected text at stylesheet level");
        if (n.tag == "xsl:output") continue;
        if (n.tag != "xsl:template") reject("unsupported top-level construct: <" + n.tag + ">");

        const std::string* match = find_attr(n, "match");
        if (!match) reject("xsl:template requires a match attribute");
        Template t;
        t.match = parse_match(*match);

        if (std::holds_alternative<RootPattern>(t.match)) {
            if (!sheet.templates.empty()) reject("the template matching \"/\" must come first");
            // The root template holds a single literal wrapper element.
            std::vector<NodeId> elems;
            for (NodeId b : n.children) {
                if (doc.node(b).is_text()) reject("unexpected literal text inside a template");
                elems.push_back(b);
            }
            if (elems.size() != 1 || doc.node(elems[0]).tag.rfind("xsl:", 0) == 0)
                reject("the root template must contain a single literal wrapper element");
            const Node& wrapper = doc.node(elems[0]);
            sheet.wrapper_tag = wrapper.tag;
            saw_wrapper = true;
            t.body = parse_body(doc, wrapper.children, line_tag);
        } else {
            if (sheet.templates.empty()) reject("the first template must match \"/\"");
            t.body = parse_body(doc, n.children, line_tag);
        }
        sheet.templates.push_back(std::move(t));
    }

    if (sheet.templates.empty() || !saw_wrapper) reject("stylesheet has no template matching \"/\"");
    if (sheet.templates.size() < 2)
        reject("stylesheet must contain at least one non-root template");
    return sheet;
}

int sheet_size(const Stylesheet& sheet) {
    int size = int(sheet.templates.size());
    for (const Template& t : sheet.templates) size += int(t.body.size());
    return size;
}

}  // namespace xsltevo
