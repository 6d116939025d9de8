#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xsltevo/fitness.hpp"
#include "xsltevo/rng.hpp"
#include "xsltevo/xml.hpp"
#include "xsltevo/xpath.hpp"
#include "xsltevo/xslt.hpp"

namespace xsltevo {

// The two constrained stylesheet shapes. Type 1 chains bare tag-name
// templates and leans on the built-in rules; Type 2 mirrors the root
// template's absolute selects with one template per select.
enum class StructureType : uint8_t { Type1 = 1, Type2 = 2 };

const char* structure_name(StructureType t);

struct Genome {
    StructureType type = StructureType::Type1;
    Stylesheet sheet;
    std::optional<FitnessVector> fitness;
};

struct InitParams {
    int min_templates = 1;
    int max_templates = 4;
    int min_instructions = 1;
    int max_instructions = 3;
    double shallow_bias = 1.0;
};

// A fresh valid genome of the requested type. Template matches are drawn
// with probability proportional to (height - depth + 1)^shallow_bias, so
// shallow tags are favoured.
Genome random_genome(StructureType type, const TagCatalog& catalog, const InitParams& params,
                     Rng& rng);

// Empty iff the genome satisfies every structural invariant of its type.
std::vector<std::string> validate(const Genome& genome, const TagCatalog& catalog);

// Template nodes plus instruction nodes, root template included.
int genome_size(const Genome& genome);

// --- generation utilities shared with the variation operators ---

// Tag drawn with the shallow-biased distribution.
std::string shallow_biased_tag(const TagCatalog& catalog, double bias, Rng& rng);

// Catalog path index drawn with the shallow-biased distribution over path length.
size_t shallow_biased_path(const TagCatalog& catalog, double bias, Rng& rng);

// Random downward walk (child-axis tag steps, unfiltered) starting from one
// of the context nodes. Empty when no context has element children.
std::optional<PathExpr> random_downward_path(const TagCatalog& catalog,
                                             const std::vector<NodeId>& contexts, Rng& rng);

// All distinct downward tag paths reachable from the contexts, by-value,
// deterministic order. Self is not included.
std::vector<PathExpr> enumerate_relative_paths(const TagCatalog& catalog,
                                               const std::vector<NodeId>& contexts);

// Nodes a template's relative selects are evaluated from: tag occurrences
// for Type 1, the nodes at the absolute match path for Type 2. Empty for
// the root template.
std::vector<NodeId> template_contexts(const Genome& genome, size_t template_index,
                                      const TagCatalog& catalog);

// Random body of `count` instructions valid for the given type and contexts.
std::vector<Instruction> random_body(StructureType type, const TagCatalog& catalog,
                                     const std::vector<NodeId>& contexts, int count, Rng& rng);

}  // namespace xsltevo
