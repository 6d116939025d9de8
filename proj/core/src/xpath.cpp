#include "xsltevo/xpath.hpp"

#include <algorithm>
#include <cassert>

namespace xsltevo {

namespace {

bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == ':' || c == '-';
}

struct PathParser {
    std::string_view src;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw XPathParseError(msg + " in path '" + std::string(src) + "'");
    }

    bool eof() const { return pos >= src.size(); }
    char peek() const { return eof() ? '\0' : src[pos]; }

    std::string parse_name() {
        if (eof() || !is_name_start(peek())) fail("expected a tag name");
        std::string name;
        while (!eof() && is_name_char(peek())) name.push_back(src[pos++]);
        return name;
    }

    std::optional<int> parse_filter() {
        if (peek() != '[') return std::nullopt;
        pos++;
        if (eof() || peek() < '0' || peek() > '9') fail("expected a number in filter");
        long value = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            value = value * 10 + (src[pos++] - '0');
            if (value > 1'000'000) fail("filter too large");
        }
        if (peek() != ']') fail("expected ']'");
        pos++;
        if (value < 1) fail("filter must be >= 1");
        return int(value);
    }

    PathExpr parse() {
        if (src.empty()) fail("empty path");
        PathExpr expr;
        if (src == ".") return expr;  // self
        if (peek() == '.') fail("'.' cannot be combined with other steps");
        if (peek() == '/') {
            expr.absolute = true;
            pos++;
            if (peek() == '/') fail("leading '//' is not supported");
        }
        for (;;) {
            Step step;
            step.axis = Axis::Child;
            if (!expr.steps.empty()) {
                if (peek() != '/') fail("expected '/'");
                pos++;
                if (peek() == '/') {
                    step.axis = Axis::Descendant;
                    pos++;
                }
            }
            if (peek() == '.') fail("'.' cannot be combined with other steps");
            step.tag = parse_name();
            step.filter = parse_filter();
            expr.steps.push_back(std::move(step));
            if (eof()) break;
            if (peek() != '/') fail("unexpected character");
            if (pos + 1 >= src.size()) fail("trailing slash");
        }
        return expr;
    }
};

void collect_matches(const Document& doc, NodeId context, const Step& step,
                     std::vector<NodeId>& out) {
    size_t first = out.size();
    if (step.axis == Axis::Child) {
        if (context == kDocumentNode) {
            if (doc.root_node().tag == step.tag) out.push_back(doc.root);
        } else {
            for (NodeId c : doc.node(context).children) {
                const Node& n = doc.node(c);
                if (n.is_element() && n.tag == step.tag) out.push_back(c);
            }
        }
    } else {
        NodeId begin = context == kDocumentNode ? doc.root : context + 1;
        NodeId end = context == kDocumentNode ? NodeId(doc.size()) : doc.node(context).subtree_end;
        for (NodeId i = begin; i < end; i++) {
            const Node& n = doc.node(i);
            if (n.is_element() && n.tag == step.tag) out.push_back(i);
        }
    }
    if (step.filter) {
        size_t k = size_t(*step.filter);
        size_t count = out.size() - first;
        if (k <= count) {
            out[first] = out[first + k - 1];
            out.resize(first + 1);
        } else {
            out.resize(first);
        }
    }
}

}  // namespace

PathExpr parse_xpath(std::string_view text) {
    // Leading/trailing whitespace is tolerated (attribute values may carry it).
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    size_t b = 0, e = text.size();
    while (b < e && ws(text[b])) b++;
    while (e > b && ws(text[e - 1])) e--;
    PathParser parser{text.substr(b, e - b)};
    return parser.parse();
}

std::string to_string(const PathExpr& expr) {
    if (expr.self()) return ".";
    std::string out;
    for (size_t i = 0; i < expr.steps.size(); i++) {
        const Step& step = expr.steps[i];
        if (i == 0) {
            assert(step.axis == Axis::Child && "leading descendant step is unrepresentable");
            if (expr.absolute) out.push_back('/');
        } else {
            out += step.axis == Axis::Descendant ? "//" : "/";
        }
        out += step.tag;
        if (step.filter) {
            out.push_back('[');
            out += std::to_string(*step.filter);
            out.push_back(']');
        }
    }
    return out;
}

PathExpr absolute_path(const std::vector<std::string>& tags) {
    PathExpr expr;
    expr.absolute = true;
    for (const auto& t : tags) expr.steps.push_back(Step{Axis::Child, t, std::nullopt});
    return expr;
}

std::vector<NodeId> eval_path(const PathExpr& expr, NodeId context, const Document& doc) {
    if (expr.self()) return {context == kDocumentNode ? doc.root : context};
    std::vector<NodeId> contexts{expr.absolute ? kDocumentNode : context};
    std::vector<NodeId> next;
    for (const Step& step : expr.steps) {
        next.clear();
        for (NodeId c : contexts) collect_matches(doc, c, step, next);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        contexts = next;
        if (contexts.empty()) break;
    }
    return contexts;
}

PathExpr join_paths(const PathExpr& base, const PathExpr& rel) {
    if (!base.absolute) throw std::invalid_argument("join_paths: base must be absolute");
    if (rel.absolute) throw std::invalid_argument("join_paths: rel must be relative or self");
    if (rel.self()) return base;
    PathExpr out = base;
    out.steps.insert(out.steps.end(), rel.steps.begin(), rel.steps.end());
    return out;
}

bool path_depth_is_max(const PathExpr& expr, const TagCatalog& catalog) {
    if (!expr.absolute) throw std::invalid_argument("path_depth_is_max: expression must be absolute");
    const Document& doc = catalog.document();
    std::vector<NodeId> nodes = eval_path(expr, kDocumentNode, doc);
    if (nodes.empty())
        throw std::invalid_argument("path_depth_is_max: path '" + to_string(expr) +
                                    "' does not resolve");
    for (NodeId id : nodes)
        for (NodeId c : doc.node(id).children)
            if (doc.node(c).is_element()) return false;
    return true;
}

}  // namespace xsltevo
