#include "xsltevo/variation.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace xsltevo {

namespace {

constexpr const char* kOperatorNames[kOperatorCount] = {
    "xp-add-filter",  "xp-mutate-filter", "xp-remove-filter", "xp-add-branch",
    "xp-set-self",    "xp-set-descendant", "xp-remove-branch", "crossover-template",
    "add-template",   "mutate-template",  "remove-template",  "add-apply",
    "remove-apply",   "mutate-apply-1",   "mutate-apply-2",   "set-template-null",
};

struct Site {
    size_t t;  // template index, never 0
    size_t i;  // instruction index
};

PathExpr strip_filters(PathExpr expr) {
    for (Step& s : expr.steps) s.filter.reset();
    return expr;
}

const PathExpr& match_path(const Template& t) { return std::get<PathExpr>(t.match); }

bool leaf_match(const Genome& g, size_t t_idx, const TagCatalog& catalog) {
    if (g.type != StructureType::Type2) return false;
    const PathExpr* match = std::get_if<PathExpr>(&g.sheet.templates[t_idx].match);
    if (!match) return false;
    std::vector<std::string> tags;
    for (const Step& s : match->steps) tags.push_back(s.tag);
    const TagCatalog::PathEntry* entry = catalog.find_path(tags);
    return entry && entry->leaf;
}

// Nodes the select at a site is evaluated from.
std::vector<NodeId> site_contexts(const Genome& g, size_t t_idx, const TagCatalog& catalog) {
    return template_contexts(g, t_idx, catalog);
}

// End nodes of the (filter-stripped) select at a site, merged over contexts.
std::vector<NodeId> select_end_nodes(const Genome& g, const Site& site, const TagCatalog& catalog) {
    const PathExpr& sel = g.sheet.templates[site.t].body[site.i].select;
    PathExpr stripped = strip_filters(sel);
    std::vector<NodeId> out;
    for (NodeId ctx : site_contexts(g, site.t, catalog)) {
        std::vector<NodeId> part = eval_path(stripped, ctx, catalog.document());
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::string> branch_candidates(const Genome& g, const Site& site,
                                           const TagCatalog& catalog) {
    std::set<std::string> tags;
    for (NodeId id : select_end_nodes(g, site, catalog))
        for (const std::string& t : element_child_tags(catalog.document(), id)) tags.insert(t);
    return {tags.begin(), tags.end()};
}

int max_sibling_count(const TagCatalog& catalog, const std::string& tag) {
    auto it = catalog.max_siblings.find(tag);
    return it == catalog.max_siblings.end() ? 1 : it->second;
}

// When a select collapses to self the instruction becomes a wrapped value-of.
void make_self(Instruction& instr) {
    instr.select = PathExpr::self_expr();
    instr.kind = Instruction::Kind::ValueOf;
    instr.wrapped = true;
}

void set_select(Instruction& instr, StructureType type, PathExpr select) {
    if (select.self()) {
        make_self(instr);
        return;
    }
    if (type == StructureType::Type2 || instr.kind == Instruction::Kind::ValueOf) {
        instr.kind = Instruction::Kind::ValueOf;
        instr.wrapped = true;
    } else {
        instr.kind = Instruction::Kind::Apply;
        instr.wrapped = false;
    }
    instr.select = std::move(select);
}

// Fresh wrapped value-of: mostly a random downward walk, sometimes self.
Instruction random_value_of(const TagCatalog& catalog, const std::vector<NodeId>& contexts,
                            Rng& rng) {
    if (!rng.chance(0.25)) {
        if (auto path = random_downward_path(catalog, contexts, rng))
            return Instruction::value_of(std::move(*path));
    }
    return Instruction::value_of(PathExpr::self_expr());
}

std::vector<Instruction> regenerated_body(const Genome& g, size_t t_idx, const TagCatalog& catalog,
                                          Rng& rng) {
    if (leaf_match(g, t_idx, catalog)) return {Instruction::value_of(PathExpr::self_expr())};
    std::vector<NodeId> contexts = site_contexts(g, t_idx, catalog);
    int count = rng.uniform_int(1, 3);
    return random_body(g.type, catalog, contexts, count, rng);
}

size_t non_root_count(const Genome& g) { return g.sheet.templates.size() - 1; }

}  // namespace

bool is_xpath_kind(OperatorKind kind) { return int(kind) < kXPathGroupEnd; }

bool kind_legal_for(OperatorKind kind, StructureType type) {
    if (kind == OperatorKind::XpSetDescendant) return type == StructureType::Type1;
    return true;
}

const char* operator_name(OperatorKind kind) { return kOperatorNames[int(kind)]; }

std::optional<OperatorKind> operator_from_name(std::string_view name) {
    for (int i = 0; i < kOperatorCount; i++)
        if (name == kOperatorNames[i]) return OperatorKind(i);
    return std::nullopt;
}

double OperatorTable::group_total(bool xpath_group) const {
    double total = 0;
    for (int i = 0; i < kOperatorCount; i++)
        if (is_xpath_kind(OperatorKind(i)) == xpath_group) total += weight[size_t(i)];
    return total;
}

OperatorTable default_operator_table(StructureType type) {
    OperatorTable table;
    auto set = [&](OperatorKind kind, double w) { table.weight[size_t(kind)] = w; };
    if (type == StructureType::Type1) {
        set(OperatorKind::XpSetSelf, 0.10);
        set(OperatorKind::XpSetDescendant, 0.14);
        set(OperatorKind::XpRemoveBranch, 0.15);
        set(OperatorKind::XpAddFilter, 0.14);
        set(OperatorKind::XpMutateFilter, 0.16);
        set(OperatorKind::XpRemoveFilter, 0.14);
        set(OperatorKind::XpAddBranch, 0.16);
    } else {
        set(OperatorKind::XpSetSelf, 0.10);
        set(OperatorKind::XpRemoveBranch, 0.17);
        set(OperatorKind::XpAddFilter, 0.18);
        set(OperatorKind::XpMutateFilter, 0.19);
        set(OperatorKind::XpRemoveFilter, 0.19);
        set(OperatorKind::XpAddBranch, 0.16);
    }
    set(OperatorKind::CrossoverTemplate, 0.11);
    set(OperatorKind::AddTemplate, 0.20);
    set(OperatorKind::MutateTemplate, 0.10);
    set(OperatorKind::RemoveTemplate, 0.12);
    set(OperatorKind::AddApply, 0.10);
    set(OperatorKind::RemoveApply, 0.10);
    set(OperatorKind::MutateApply1, 0.10);
    set(OperatorKind::MutateApply2, 0.14);
    set(OperatorKind::SetTemplateNull, 0.03);
    return table;
}

void check_operator_table(const OperatorTable& table, StructureType type) {
    for (int i = 0; i < kOperatorCount; i++) {
        OperatorKind kind = OperatorKind(i);
        if (table.weight[size_t(i)] < 0)
            throw std::invalid_argument(std::string("negative weight for operator ") +
                                        operator_name(kind));
        if (table.weight[size_t(i)] > 0 && !kind_legal_for(kind, type))
            throw std::invalid_argument(std::string("operator ") + operator_name(kind) +
                                        " is not legal for " + structure_name(type));
    }
    if (table.group_total(true) <= 0 || table.group_total(false) <= 0)
        throw std::invalid_argument("each operator group needs total weight > 0");
    if (table.group_balance < 0 || table.group_balance > 1)
        throw std::invalid_argument("group balance must be within [0, 1]");
}

OperatorKind select_operator(const OperatorTable& table, StructureType type, Rng& rng) {
    bool xpath = rng.chance(table.group_balance);
    double total = table.group_total(xpath);
    assert(total > 0);
    double r = rng.uniform01() * total;
    OperatorKind last = xpath ? OperatorKind::XpRemoveBranch : OperatorKind::SetTemplateNull;
    for (int i = 0; i < kOperatorCount; i++) {
        OperatorKind kind = OperatorKind(i);
        if (is_xpath_kind(kind) != xpath) continue;
        double w = table.weight[size_t(i)];
        if (w <= 0) continue;
        r -= w;
        if (r <= 0) return kind;
        last = kind;
    }
    (void)type;
    return last;
}

MutationResult mutate_xpath(const Genome& genome, OperatorKind kind, const TagCatalog& catalog,
                            Rng& rng) {
    if (!is_xpath_kind(kind))
        throw std::invalid_argument(std::string(operator_name(kind)) +
                                    " is not an XPath-group operator");
    if (!kind_legal_for(kind, genome.type))
        throw std::invalid_argument(std::string(operator_name(kind)) + " is not legal for " +
                                    structure_name(genome.type));

    // The root template is never a site: fully frozen in Type 1, and in
    // Type 2 its selects change only through the structural repairs.
    std::vector<Site> sites;
    std::vector<std::vector<std::string>> site_branches;  // XpAddBranch candidates per site
    const auto& templates = genome.sheet.templates;
    for (size_t t = 1; t < templates.size(); t++) {
        for (size_t i = 0; i < templates[t].body.size(); i++) {
            const PathExpr& sel = templates[t].body[i].select;
            bool eligible = false;
            std::vector<std::string> branches;
            switch (kind) {
                case OperatorKind::XpAddFilter:
                    eligible = std::any_of(sel.steps.begin(), sel.steps.end(),
                                           [](const Step& s) { return !s.filter; });
                    break;
                case OperatorKind::XpMutateFilter:
                case OperatorKind::XpRemoveFilter:
                    eligible = std::any_of(sel.steps.begin(), sel.steps.end(),
                                           [](const Step& s) { return s.filter.has_value(); });
                    break;
                case OperatorKind::XpAddBranch:
                    branches = branch_candidates(genome, Site{t, i}, catalog);
                    eligible = !branches.empty();
                    break;
                case OperatorKind::XpSetSelf:
                    eligible = !sel.self();
                    break;
                case OperatorKind::XpSetDescendant:
                    eligible = sel.steps.size() >= 3;
                    break;
                case OperatorKind::XpRemoveBranch:
                    eligible = !sel.steps.empty();
                    break;
                default:
                    break;
            }
            if (eligible) {
                sites.push_back(Site{t, i});
                site_branches.push_back(std::move(branches));
            }
        }
    }
    if (sites.empty()) return MutationResult{genome, false};

    size_t pick = rng.uniform_index(sites.size());
    Site site = sites[pick];
    MutationResult result{genome, true};
    result.genome.fitness.reset();
    Instruction& instr = result.genome.sheet.templates[site.t].body[site.i];
    PathExpr& sel = instr.select;

    switch (kind) {
        case OperatorKind::XpAddFilter: {
            std::vector<size_t> open;
            for (size_t s = 0; s < sel.steps.size(); s++)
                if (!sel.steps[s].filter) open.push_back(s);
            Step& step = sel.steps[open[rng.uniform_index(open.size())]];
            step.filter = rng.uniform_int(1, max_sibling_count(catalog, step.tag));
            break;
        }
        case OperatorKind::XpMutateFilter: {
            std::vector<size_t> filtered;
            for (size_t s = 0; s < sel.steps.size(); s++)
                if (sel.steps[s].filter) filtered.push_back(s);
            Step& step = sel.steps[filtered[rng.uniform_index(filtered.size())]];
            step.filter = rng.uniform_int(1, max_sibling_count(catalog, step.tag));
            break;
        }
        case OperatorKind::XpRemoveFilter: {
            std::vector<size_t> filtered;
            for (size_t s = 0; s < sel.steps.size(); s++)
                if (sel.steps[s].filter) filtered.push_back(s);
            sel.steps[filtered[rng.uniform_index(filtered.size())]].filter.reset();
            break;
        }
        case OperatorKind::XpAddBranch: {
            const auto& candidates = site_branches[pick];
            sel.steps.push_back(
                Step{Axis::Child, candidates[rng.uniform_index(candidates.size())], std::nullopt});
            break;
        }
        case OperatorKind::XpSetSelf:
            make_self(instr);
            break;
        case OperatorKind::XpSetDescendant: {
            // Drop an intermediate step; its successor becomes a descendant
            // step. First and last steps stay, so the text form stays valid.
            size_t drop = size_t(rng.uniform_int(1, int(sel.steps.size()) - 2));
            sel.steps.erase(sel.steps.begin() + long(drop));
            sel.steps[drop].axis = Axis::Descendant;
            break;
        }
        case OperatorKind::XpRemoveBranch:
            sel.steps.pop_back();
            if (sel.steps.empty()) make_self(instr);
            break;
        default:
            break;
    }
    return result;
}

MutationResult mutate_structure(const Genome& genome, OperatorKind kind, const TagCatalog& catalog,
                                const InitParams& params, Rng& rng) {
    if (is_xpath_kind(kind) || kind == OperatorKind::CrossoverTemplate)
        throw std::invalid_argument(std::string(operator_name(kind)) +
                                    " is not a structural mutation");

    MutationResult result{genome, true};
    result.genome.fitness.reset();
    Genome& g = result.genome;
    auto& templates = g.sheet.templates;
    bool type2 = g.type == StructureType::Type2;

    switch (kind) {
        case OperatorKind::AddTemplate: {
            Template t;
            if (type2) {
                size_t pidx = shallow_biased_path(catalog, params.shallow_bias, rng);
                const auto& entry = catalog.paths[pidx];
                t.match = absolute_path(entry.tags);
                if (entry.leaf)
                    t.body.push_back(Instruction::value_of(PathExpr::self_expr()));
                else
                    t.body = random_body(g.type, catalog, entry.nodes, rng.uniform_int(1, 3), rng);
            } else {
                std::string tag = shallow_biased_tag(catalog, params.shallow_bias, rng);
                t.body = random_body(g.type, catalog, catalog.occurrences(tag),
                                     rng.uniform_int(1, 3), rng);
                t.match = std::move(tag);
            }
            size_t pos = size_t(rng.uniform_int(1, int(templates.size())));
            if (type2)
                templates[0].body.insert(templates[0].body.begin() + long(pos - 1),
                                         Instruction::apply(match_path(t)));
            templates.insert(templates.begin() + long(pos), std::move(t));
            break;
        }
        case OperatorKind::MutateTemplate: {
            size_t t = size_t(rng.uniform_int(1, int(templates.size()) - 1));
            templates[t].body = regenerated_body(g, t, catalog, rng);
            break;
        }
        case OperatorKind::RemoveTemplate: {
            if (non_root_count(g) < 2) return MutationResult{genome, false};
            size_t t = size_t(rng.uniform_int(1, int(templates.size()) - 1));
            templates.erase(templates.begin() + long(t));
            if (type2) templates[0].body.erase(templates[0].body.begin() + long(t - 1));
            break;
        }
        case OperatorKind::AddApply: {
            std::vector<size_t> eligible;
            for (size_t t = 1; t < templates.size(); t++)
                if (!leaf_match(g, t, catalog)) eligible.push_back(t);
            if (eligible.empty()) return MutationResult{genome, false};
            size_t t = eligible[rng.uniform_index(eligible.size())];
            auto& body = templates[t].body;
            size_t pos = size_t(rng.uniform_int(0, int(body.size())));
            body.insert(body.begin() + long(pos),
                        random_value_of(catalog, site_contexts(g, t, catalog), rng));
            break;
        }
        case OperatorKind::RemoveApply: {
            // Not applied at all while a single non-root template is left.
            if (non_root_count(g) < 2) return MutationResult{genome, false};
            size_t t = size_t(rng.uniform_int(1, int(templates.size()) - 1));
            auto& body = templates[t].body;
            size_t i = rng.uniform_index(body.size());
            if (body.size() == 1) {
                templates.erase(templates.begin() + long(t));
                if (type2) templates[0].body.erase(templates[0].body.begin() + long(t - 1));
            } else {
                body.erase(body.begin() + long(i));
            }
            break;
        }
        case OperatorKind::MutateApply1:
        case OperatorKind::MutateApply2: {
            std::vector<Site> sites;
            for (size_t t = 1; t < templates.size(); t++) {
                if (leaf_match(g, t, catalog)) continue;
                for (size_t i = 0; i < templates[t].body.size(); i++) sites.push_back(Site{t, i});
            }
            if (sites.empty()) return MutationResult{genome, false};
            Site site = sites[rng.uniform_index(sites.size())];
            std::vector<NodeId> contexts = site_contexts(g, site.t, catalog);
            PathExpr select;
            if (kind == OperatorKind::MutateApply1) {
                // Uniform over the enumerated valid relatives, self included.
                std::vector<PathExpr> options = enumerate_relative_paths(catalog, contexts);
                options.push_back(PathExpr::self_expr());
                select = options[rng.uniform_index(options.size())];
            } else {
                auto path = random_downward_path(catalog, contexts, rng);
                select = path ? std::move(*path) : PathExpr::self_expr();
            }
            set_select(templates[site.t].body[site.i], g.type, std::move(select));
            break;
        }
        case OperatorKind::SetTemplateNull: {
            size_t t = size_t(rng.uniform_int(1, int(templates.size()) - 1));
            templates[t].body = {Instruction::value_of(PathExpr::self_expr())};
            break;
        }
        default:
            break;
    }
    return result;
}

CrossoverResult crossover_template(const Genome& a, const Genome& b, Rng& rng) {
    if (a.type != b.type)
        throw std::invalid_argument("crossover requires parents of the same structure type");
    if (non_root_count(a) == 0 || non_root_count(b) == 0) return CrossoverResult{a, b, false};

    size_t i = size_t(rng.uniform_int(1, int(a.sheet.templates.size()) - 1));
    size_t j = size_t(rng.uniform_int(1, int(b.sheet.templates.size()) - 1));

    CrossoverResult result{a, b, true};
    result.first.fitness.reset();
    result.second.fitness.reset();
    result.first.sheet.templates[i] = b.sheet.templates[j];
    result.second.sheet.templates[j] = a.sheet.templates[i];
    if (a.type == StructureType::Type2) {
        result.first.sheet.templates[0].body[i - 1].select =
            match_path(result.first.sheet.templates[i]);
        result.second.sheet.templates[0].body[j - 1].select =
            match_path(result.second.sheet.templates[j]);
    }
    return result;
}

MutationResult apply_operator(const Genome& genome, OperatorKind kind, const TagCatalog& catalog,
                              const InitParams& params, Rng& rng) {
    if (kind == OperatorKind::CrossoverTemplate)
        throw std::invalid_argument("crossover-template takes two parents");
    if (is_xpath_kind(kind)) return mutate_xpath(genome, kind, catalog, rng);
    return mutate_structure(genome, kind, catalog, params, rng);
}

}  // namespace xsltevo
