#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xsltevo {

// Node ids are pre-order arena positions, so the id of a node is also its
// document-order index. kDocumentNode stands for the virtual parent of the
// root element (the context absolute paths start from).
using NodeId = int32_t;
inline constexpr NodeId kDocumentNode = -1;

enum class NodeKind : uint8_t { Element, Text };

struct Attribute {
    std::string name;
    std::string value;
};

struct Node {
    NodeKind kind = NodeKind::Element;
    std::string tag;                      // elements only
    std::string text;                     // text nodes only
    std::vector<Attribute> attributes;    // insertion order
    std::vector<NodeId> children;         // elements and text, in order
    NodeId parent = kDocumentNode;
    int32_t depth = 1;                    // root element has depth 1
    NodeId subtree_end = 0;               // one past the node's subtree

    bool is_element() const { return kind == NodeKind::Element; }
    bool is_text() const { return kind == NodeKind::Text; }
};

// Immutable DOM tree. Built once by parse_xml (or the transform engine) and
// then shared freely across threads.
struct Document {
    std::vector<Node> nodes;
    NodeId root = 0;
    std::string source_name;

    const Node& node(NodeId id) const { return nodes[size_t(id)]; }
    const Node& root_node() const { return nodes[size_t(root)]; }
    size_t size() const { return nodes.size(); }
};

class XmlParseError : public std::runtime_error {
public:
    XmlParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line(line),
          column(column) {}

    int line;
    int column;
};

// Parses the XML subset used throughout: elements, attributes, character
// data, the five predefined entities. Comments, processing instructions,
// the XML declaration and a bracket-free DOCTYPE are skipped; whitespace-only
// text nodes are dropped. The xsl: prefix is just part of the tag name.
Document parse_xml(std::string_view text, std::string source_name = "");

Document load_xml_file(const std::string& path);

// Concatenation of all descendant text data in document order.
// kDocumentNode is accepted and treated as the root element.
std::string string_value(const Document& doc, NodeId id);

// Comparable line sequence of an output document: every `line_tag` element
// yields one trimmed entry (its subtree is not walked further), every other
// text node yields one entry per non-empty trimmed physical line.
std::vector<std::string> canonical_lines(const Document& doc,
                                         const std::string& line_tag = "line");

std::string serialize(const Document& doc, bool indent);

std::string trim(std::string_view s);
std::vector<std::string> split_trimmed_lines(std::string_view s);

// Sorted unique tags of the node's element children.
std::vector<std::string> element_child_tags(const Document& doc, NodeId id);

// Where every element tag occurs in a document, what can hang below it, and
// how tall the tree is. Random genome construction and the variation
// operators draw from this so that generated XPaths always resolve.
struct TagCatalog {
    struct PathEntry {
        std::vector<std::string> tags;        // root-to-node tag path
        std::vector<NodeId> nodes;            // all nodes at this path, doc order
        std::vector<std::string> child_tags;  // sorted unique child element tags
        bool leaf = false;                    // no node at this path has element children
    };

    std::vector<PathEntry> paths;                       // first-occurrence order
    std::map<std::string, std::vector<size_t>> by_tag;  // tag -> indices into paths
    std::map<std::string, int> max_siblings;            // tag -> max same-tag children of one parent
    std::map<std::string, int> min_depth;               // tag -> shallowest occurrence depth
    int height = 0;
    std::shared_ptr<const Document> doc;

    const Document& document() const { return *doc; }
    const std::string& root_tag() const { return doc->root_node().tag; }
    const PathEntry* find_path(const std::vector<std::string>& tags) const;
    // All nodes carrying the tag, in document order.
    std::vector<NodeId> occurrences(const std::string& tag) const;
    bool has_tag(const std::string& tag) const { return by_tag.count(tag) > 0; }
};

TagCatalog build_catalog(std::shared_ptr<const Document> doc);

}  // namespace xsltevo
