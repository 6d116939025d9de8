#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "xsltevo/genome.hpp"
#include "xsltevo/rng.hpp"

namespace xsltevo {

// The sixteen variation operators. The first seven rewrite XPath selects,
// the rest reshape the template tree; a two-stage roulette picks the group
// and then the operator.
enum class OperatorKind : uint8_t {
    XpAddFilter = 0,
    XpMutateFilter,
    XpRemoveFilter,
    XpAddBranch,
    XpSetSelf,
    XpSetDescendant,  // Type 1 only
    XpRemoveBranch,
    CrossoverTemplate,
    AddTemplate,
    MutateTemplate,
    RemoveTemplate,
    AddApply,
    RemoveApply,
    MutateApply1,
    MutateApply2,
    SetTemplateNull,
};

inline constexpr int kOperatorCount = 16;
inline constexpr int kXPathGroupEnd = 7;  // kinds [0, 7) are the XPath group

bool is_xpath_kind(OperatorKind kind);
bool kind_legal_for(OperatorKind kind, StructureType type);
const char* operator_name(OperatorKind kind);
std::optional<OperatorKind> operator_from_name(std::string_view name);

struct OperatorTable {
    std::array<double, kOperatorCount> weight{};
    double group_balance = 0.5;  // probability of the XPath group

    double group_total(bool xpath_group) const;
};

// Weights from the published priority table: the XPath block differenced
// from its cumulative column, the structural block taken directly.
OperatorTable default_operator_table(StructureType type);

// Throws ConfigError-style std::invalid_argument when a group has no weight
// or an illegal kind carries weight.
void check_operator_table(const OperatorTable& table, StructureType type);

OperatorKind select_operator(const OperatorTable& table, StructureType type, Rng& rng);

struct MutationResult {
    Genome genome;
    bool applied = false;  // false: no eligible site, genome returned unchanged
};

struct CrossoverResult {
    Genome first;
    Genome second;
    bool applied = false;
};

// Rewrites one uniformly chosen eligible select of the genome. The root
// template is never a site; for Type 2, root selects are only changed by the
// structural repairs. Requires an XPath-group kind legal for the type.
MutationResult mutate_xpath(const Genome& genome, OperatorKind kind, const TagCatalog& catalog,
                            Rng& rng);

// Structural operators (everything but crossover and the XPath group).
MutationResult mutate_structure(const Genome& genome, OperatorKind kind,
                                const TagCatalog& catalog, const InitParams& params, Rng& rng);

// Swaps one random non-root template between the parents. Type 2 children
// get the root select at the swapped position rewritten so the one-to-one
// correspondence invariant keeps holding.
CrossoverResult crossover_template(const Genome& a, const Genome& b, Rng& rng);

// Dispatch for every non-crossover kind.
MutationResult apply_operator(const Genome& genome, OperatorKind kind, const TagCatalog& catalog,
                              const InitParams& params, Rng& rng);

}  // namespace xsltevo
