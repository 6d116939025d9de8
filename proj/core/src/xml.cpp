#include "xsltevo/xml.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <set>
#include <sstream>

namespace xsltevo {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

// ':' is allowed inside names so that xsl:template is one opaque tag.
// '.' is excluded on purpose: it would collide with the self step in paths.
bool is_name_char(char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == ':' || c == '-';
}

struct Parser {
    explicit Parser(std::string_view src) : src(src) {}

    std::string_view src;
    size_t pos = 0;
    int line = 1;
    int col = 1;
    Document doc;

    [[noreturn]] void fail(const std::string& msg) const { throw XmlParseError(msg, line, col); }

    bool eof() const { return pos >= src.size(); }
    char peek(size_t ahead = 0) const {
        return pos + ahead < src.size() ? src[pos + ahead] : '\0';
    }
    bool starts_with(std::string_view s) const { return src.substr(pos, s.size()) == s; }

    char advance() {
        char c = src[pos++];
        if (c == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
        return c;
    }

    void expect(char c, const char* what) {
        if (eof() || peek() != c) fail(std::string("expected ") + what);
        advance();
    }

    void skip(size_t n) {
        for (size_t i = 0; i < n && !eof(); i++) advance();
    }

    void skip_ws() {
        while (!eof() && is_ws(peek())) advance();
    }

    std::string parse_name() {
        if (eof() || !is_name_start(peek())) fail("expected a name");
        std::string name;
        while (!eof() && is_name_char(peek())) name.push_back(advance());
        return name;
    }

    char parse_entity() {
        // '&' already consumed
        size_t start = pos;
        std::string ent;
        while (!eof() && peek() != ';' && pos - start < 8) ent.push_back(advance());
        if (eof() || peek() != ';') fail("unterminated entity reference");
        advance();
        if (ent == "lt") return '<';
        if (ent == "gt") return '>';
        if (ent == "amp") return '&';
        if (ent == "apos") return '\'';
        if (ent == "quot") return '"';
        fail("unknown entity reference '&" + ent + ";'");
    }

    std::string parse_attr_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
        char quote = advance();
        std::string value;
        while (!eof() && peek() != quote) {
            char c = advance();
            if (c == '&')
                value.push_back(parse_entity());
            else if (c == '<')
                fail("'<' in attribute value");
            else
                value.push_back(c);
        }
        if (eof()) fail("unterminated attribute value");
        advance();
        return value;
    }

    void skip_comment() {
        // "<!--" consumed
        while (!eof()) {
            if (starts_with("-->")) {
                skip(3);
                return;
            }
            advance();
        }
        fail("unterminated comment");
    }

    void skip_pi() {
        // "<?" consumed
        while (!eof()) {
            if (starts_with("?>")) {
                skip(2);
                return;
            }
            advance();
        }
        fail("unterminated processing instruction");
    }

    void skip_doctype() {
        // "<!DOCTYPE" consumed
        while (!eof() && peek() != '>') {
            if (peek() == '[') fail("DOCTYPE internal subset is not supported");
            advance();
        }
        if (eof()) fail("unterminated DOCTYPE");
        advance();
    }

    // Misc content allowed outside the root element.
    void skip_prolog_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<?")) {
                skip(2);
                skip_pi();
            } else if (starts_with("<!--")) {
                skip(4);
                skip_comment();
            } else if (starts_with("<!DOCTYPE")) {
                skip(9);
                skip_doctype();
            } else {
                return;
            }
        }
    }

    NodeId new_node(NodeKind kind, NodeId parent) {
        NodeId id = NodeId(doc.nodes.size());
        doc.nodes.emplace_back();
        doc.nodes.back().kind = kind;
        doc.nodes.back().parent = parent;
        doc.nodes.back().depth = parent == kDocumentNode ? 1 : doc.node(parent).depth + 1;
        return id;
    }

    NodeId parse_element(NodeId parent, int nesting) {
        if (nesting > 256) fail("element nesting too deep");
        // '<' consumed by caller
        NodeId id = new_node(NodeKind::Element, parent);
        doc.nodes[size_t(id)].tag = parse_name();

        // attributes
        for (;;) {
            bool had_ws = !eof() && is_ws(peek());
            skip_ws();
            if (eof()) fail("unterminated start tag");
            if (peek() == '>' || starts_with("/>")) break;
            if (!had_ws) fail("malformed start tag");
            std::string name = parse_name();
            skip_ws();
            expect('=', "'=' after attribute name");
            skip_ws();
            std::string value = parse_attr_value();
            for (const auto& a : doc.nodes[size_t(id)].attributes)
                if (a.name == name) fail("duplicate attribute '" + name + "'");
            doc.nodes[size_t(id)].attributes.push_back({std::move(name), std::move(value)});
        }

        if (starts_with("/>")) {
            skip(2);
            doc.nodes[size_t(id)].subtree_end = NodeId(doc.nodes.size());
            return id;
        }
        advance();  // '>'

        // content
        for (;;) {
            if (eof()) fail("unexpected end of input inside <" + doc.nodes[size_t(id)].tag + ">");
            if (peek() == '<') {
                if (starts_with("</")) {
                    skip(2);
                    std::string close = parse_name();
                    if (close != doc.nodes[size_t(id)].tag)
                        fail("mismatched closing tag </" + close + ">, expected </" +
                             doc.nodes[size_t(id)].tag + ">");
                    skip_ws();
                    expect('>', "'>'");
                    break;
                }
                if (starts_with("<!--")) {
                    skip(4);
                    skip_comment();
                    continue;
                }
                if (starts_with("<![")) fail("CDATA sections are not supported");
                if (starts_with("<!")) fail("unexpected markup declaration");
                if (starts_with("<?")) {
                    skip(2);
                    skip_pi();
                    continue;
                }
                advance();  // '<'
                NodeId child = parse_element(id, nesting + 1);
                doc.nodes[size_t(id)].children.push_back(child);
            } else {
                std::string text;
                while (!eof() && peek() != '<') {
                    char c = advance();
                    text.push_back(c == '&' ? parse_entity() : c);
                }
                bool all_ws = std::all_of(text.begin(), text.end(), is_ws);
                if (!all_ws) {
                    NodeId child = new_node(NodeKind::Text, id);
                    doc.nodes[size_t(child)].text = std::move(text);
                    doc.nodes[size_t(child)].subtree_end = NodeId(doc.nodes.size());
                    doc.nodes[size_t(id)].children.push_back(child);
                }
            }
        }
        doc.nodes[size_t(id)].subtree_end = NodeId(doc.nodes.size());
        return id;
    }

    Document parse() {
        skip_prolog_misc();
        if (eof() || peek() != '<') fail("expected root element");
        advance();
        if (peek() == '/') fail("expected root element");
        doc.root = parse_element(kDocumentNode, 1);
        skip_prolog_misc();
        if (!eof()) {
            if (peek() == '<' && peek(1) != '/' && peek(1) != '!')
                fail("multiple root elements");
            fail("content after document element");
        }
        return std::move(doc);
    }
};

void escape_text(const std::string& s, std::string& out) {
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
}

void escape_attr(const std::string& s, std::string& out) {
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
}

void write_node(const Document& doc, NodeId id, bool indent, int level, std::string& out) {
    const Node& n = doc.node(id);
    if (n.is_text()) {
        escape_text(n.text, out);
        return;
    }
    out.push_back('<');
    out += n.tag;
    for (const auto& a : n.attributes) {
        out.push_back(' ');
        out += a.name;
        out += "=\"";
        escape_attr(a.value, out);
        out.push_back('"');
    }
    if (n.children.empty()) {
        out += "/>";
        return;
    }
    out.push_back('>');
    bool elements_only = std::all_of(n.children.begin(), n.children.end(), [&](NodeId c) {
        return doc.node(c).is_element();
    });
    if (indent && elements_only) {
        for (NodeId c : n.children) {
            out.push_back('\n');
            out.append(size_t(2 * level), ' ');
            write_node(doc, c, indent, level + 1, out);
        }
        out.push_back('\n');
        out.append(size_t(2 * (level - 1)), ' ');
    } else {
        // Mixed content is written verbatim so text round-trips exactly.
        for (NodeId c : n.children) write_node(doc, c, indent, level + 1, out);
    }
    out += "</";
    out += n.tag;
    out.push_back('>');
}

}  // namespace

Document parse_xml(std::string_view text, std::string source_name) {
    Parser parser(text);
    Document doc = parser.parse();
    doc.source_name = std::move(source_name);
    return doc;
}

Document load_xml_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_xml(buf.str(), path);
}

std::string string_value(const Document& doc, NodeId id) {
    if (id == kDocumentNode) id = doc.root;
    const Node& n = doc.node(id);
    if (n.is_text()) return n.text;
    std::string out;
    for (NodeId i = id + 1; i < n.subtree_end; i++)
        if (doc.node(i).is_text()) out += doc.node(i).text;
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && is_ws(s[b])) b++;
    while (e > b && is_ws(s[e - 1])) e--;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_trimmed_lines(std::string_view s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t nl = s.find('\n', start);
        std::string_view piece =
            nl == std::string_view::npos ? s.substr(start) : s.substr(start, nl - start);
        std::string t = trim(piece);
        if (!t.empty()) out.push_back(std::move(t));
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return out;
}

std::vector<std::string> element_child_tags(const Document& doc, NodeId id) {
    std::set<std::string> tags;
    for (NodeId c : doc.node(id).children)
        if (doc.node(c).is_element()) tags.insert(doc.node(c).tag);
    return {tags.begin(), tags.end()};
}

namespace {

void collect_lines(const Document& doc, NodeId id, const std::string& line_tag,
                   std::vector<std::string>& out) {
    const Node& n = doc.node(id);
    if (n.is_text()) {
        for (auto& l : split_trimmed_lines(n.text)) out.push_back(std::move(l));
        return;
    }
    if (n.tag == line_tag) {
        out.push_back(trim(string_value(doc, id)));
        return;  // subtree not walked further
    }
    for (NodeId c : n.children) collect_lines(doc, c, line_tag, out);
}

}  // namespace

std::vector<std::string> canonical_lines(const Document& doc, const std::string& line_tag) {
    std::vector<std::string> out;
    if (!doc.nodes.empty()) collect_lines(doc, doc.root, line_tag, out);
    return out;
}

std::string serialize(const Document& doc, bool indent) {
    std::string out = "<?xml version=\"1.0\"?>\n";
    if (!doc.nodes.empty()) write_node(doc, doc.root, indent, 1, out);
    out.push_back('\n');
    return out;
}

const TagCatalog::PathEntry* TagCatalog::find_path(const std::vector<std::string>& tags) const {
    for (const auto& entry : paths)
        if (entry.tags == tags) return &entry;
    return nullptr;
}

std::vector<NodeId> TagCatalog::occurrences(const std::string& tag) const {
    std::vector<NodeId> out;
    auto it = by_tag.find(tag);
    if (it == by_tag.end()) return out;
    for (size_t idx : it->second)
        out.insert(out.end(), paths[idx].nodes.begin(), paths[idx].nodes.end());
    std::sort(out.begin(), out.end());
    return out;
}

TagCatalog build_catalog(std::shared_ptr<const Document> doc) {
    TagCatalog catalog;
    catalog.doc = std::move(doc);
    const Document& d = catalog.document();
    if (d.nodes.empty()) return catalog;

    std::map<std::string, size_t> path_index;  // joined path -> entry
    std::vector<std::string> stack;

    struct Walker {
        const Document& d;
        TagCatalog& cat;
        std::map<std::string, size_t>& path_index;
        std::vector<std::string>& stack;

        void walk(NodeId id) {
            const Node& n = d.node(id);
            if (!n.is_element()) return;
            stack.push_back(n.tag);

            std::string key;
            for (const auto& t : stack) {
                key.push_back('/');
                key += t;
            }
            auto [it, inserted] = path_index.try_emplace(key, cat.paths.size());
            if (inserted) {
                cat.paths.emplace_back();
                cat.paths.back().tags = stack;
                cat.by_tag[n.tag].push_back(it->second);
            }
            auto& entry = cat.paths[it->second];
            entry.nodes.push_back(id);

            auto depth_it = cat.min_depth.find(n.tag);
            if (depth_it == cat.min_depth.end())
                cat.min_depth[n.tag] = n.depth;
            else
                depth_it->second = std::min(depth_it->second, n.depth);
            cat.height = std::max(cat.height, int(n.depth));

            std::set<std::string> child_tags(entry.child_tags.begin(), entry.child_tags.end());
            std::map<std::string, int> sibling_count;
            for (NodeId c : n.children) {
                const Node& cn = d.node(c);
                if (!cn.is_element()) continue;
                child_tags.insert(cn.tag);
                sibling_count[cn.tag]++;
            }
            entry.child_tags.assign(child_tags.begin(), child_tags.end());
            for (auto& [tag, count] : sibling_count) {
                auto sib = cat.max_siblings.find(tag);
                if (sib == cat.max_siblings.end())
                    cat.max_siblings[tag] = count;
                else
                    sib->second = std::max(sib->second, count);
            }

            for (NodeId c : n.children) walk(c);
            stack.pop_back();
        }
    };

    Walker{d, catalog, path_index, stack}.walk(d.root);

    // A path is a leaf only when no node at it has element children.
    for (auto& entry : catalog.paths) {
        entry.leaf = true;
        for (NodeId id : entry.nodes) {
            for (NodeId c : d.node(id).children) {
                if (d.node(c).is_element()) {
                    entry.leaf = false;
                    break;
                }
            }
            if (!entry.leaf) break;
        }
    }
    return catalog;
}

}  // namespace xsltevo
