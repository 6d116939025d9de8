#include "xsltevo/genome.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>

namespace xsltevo {

namespace {

// Probability that a generated instruction selects self instead of walking
// downward. Unspecified by the structures themselves; small genomes with a
// mix of both work well as a starting population.
constexpr double kType1SelfProbability = 0.25;
constexpr double kType2SelfProbability = 0.5;

// Chance that a walk step pins one specific sibling with a cardinal filter.
// Generated routes use the same clauses the XPath operators maintain.
constexpr double kWalkFilterProbability = 0.5;

PathExpr strip_filters(const PathExpr& expr) {
    PathExpr out = expr;
    for (Step& s : out.steps) s.filter.reset();
    return out;
}

bool resolves_from_any(const PathExpr& select, const std::vector<NodeId>& contexts,
                       const Document& doc) {
    if (select.self()) return !contexts.empty();
    PathExpr stripped = strip_filters(select);
    for (NodeId ctx : contexts)
        if (!eval_path(stripped, ctx, doc).empty()) return true;
    return false;
}

void enumerate_paths_from(const Document& doc, NodeId node, std::vector<Step>& steps,
                          std::set<std::vector<std::string>>& out) {
    for (const std::string& tag : element_child_tags(doc, node)) {
        steps.push_back(Step{Axis::Child, tag, std::nullopt});
        std::vector<std::string> tags;
        for (const Step& s : steps) tags.push_back(s.tag);
        out.insert(tags);
        for (NodeId c : doc.node(node).children) {
            const Node& cn = doc.node(c);
            if (cn.is_element() && cn.tag == tag) enumerate_paths_from(doc, c, steps, out);
        }
        steps.pop_back();
    }
}

}  // namespace

const char* structure_name(StructureType t) {
    return t == StructureType::Type1 ? "type1" : "type2";
}

std::string shallow_biased_tag(const TagCatalog& catalog, double bias, Rng& rng) {
    assert(!catalog.min_depth.empty());
    double total = 0;
    for (const auto& [tag, depth] : catalog.min_depth)
        total += std::pow(double(catalog.height - depth + 1), bias);
    double r = rng.uniform01() * total;
    for (const auto& [tag, depth] : catalog.min_depth) {
        r -= std::pow(double(catalog.height - depth + 1), bias);
        if (r <= 0) return tag;
    }
    return catalog.min_depth.rbegin()->first;
}

size_t shallow_biased_path(const TagCatalog& catalog, double bias, Rng& rng) {
    assert(!catalog.paths.empty());
    double total = 0;
    for (const auto& entry : catalog.paths)
        total += std::pow(double(catalog.height - int(entry.tags.size()) + 1), bias);
    double r = rng.uniform01() * total;
    for (size_t i = 0; i < catalog.paths.size(); i++) {
        r -= std::pow(double(catalog.height - int(catalog.paths[i].tags.size()) + 1), bias);
        if (r <= 0) return i;
    }
    return catalog.paths.size() - 1;
}

std::optional<PathExpr> random_downward_path(const TagCatalog& catalog,
                                             const std::vector<NodeId>& contexts, Rng& rng) {
    if (contexts.empty()) return std::nullopt;
    const Document& doc = catalog.document();
    NodeId cur = contexts[rng.uniform_index(contexts.size())];
    if (element_child_tags(doc, cur).empty()) return std::nullopt;

    PathExpr expr;
    for (;;) {
        std::vector<std::string> tags = element_child_tags(doc, cur);
        if (tags.empty()) break;
        const std::string& tag = tags[rng.uniform_index(tags.size())];
        std::vector<NodeId> matching;
        for (NodeId c : doc.node(cur).children)
            if (doc.node(c).is_element() && doc.node(c).tag == tag) matching.push_back(c);
        Step step{Axis::Child, tag, std::nullopt};
        size_t follow = rng.uniform_index(matching.size());
        if (matching.size() > 1 && rng.chance(kWalkFilterProbability))
            step.filter = int(follow) + 1;  // the walk continues below that sibling
        expr.steps.push_back(std::move(step));
        cur = matching[follow];
        if (!rng.chance(0.5)) break;
    }
    return expr;
}

std::vector<PathExpr> enumerate_relative_paths(const TagCatalog& catalog,
                                               const std::vector<NodeId>& contexts) {
    std::set<std::vector<std::string>> seen;
    std::vector<Step> steps;
    for (NodeId ctx : contexts) enumerate_paths_from(catalog.document(), ctx, steps, seen);
    std::vector<PathExpr> out;
    for (const auto& tags : seen) {
        PathExpr expr;
        for (const auto& t : tags) expr.steps.push_back(Step{Axis::Child, t, std::nullopt});
        out.push_back(std::move(expr));
    }
    return out;
}

std::vector<NodeId> template_contexts(const Genome& genome, size_t template_index,
                                      const TagCatalog& catalog) {
    const Template& t = genome.sheet.templates[template_index];
    if (std::holds_alternative<RootPattern>(t.match)) return {};
    if (const std::string* tag = std::get_if<std::string>(&t.match))
        return catalog.occurrences(*tag);
    return eval_path(strip_filters(std::get<PathExpr>(t.match)), kDocumentNode,
                     catalog.document());
}

std::vector<Instruction> random_body(StructureType type, const TagCatalog& catalog,
                                     const std::vector<NodeId>& contexts, int count, Rng& rng) {
    std::vector<Instruction> body;
    double p_self = type == StructureType::Type1 ? kType1SelfProbability : kType2SelfProbability;
    for (int i = 0; i < count; i++) {
        std::optional<PathExpr> path;
        if (!rng.chance(p_self)) path = random_downward_path(catalog, contexts, rng);
        if (!path) {
            body.push_back(Instruction::value_of(PathExpr::self_expr()));
        } else if (type == StructureType::Type1) {
            body.push_back(Instruction::apply(std::move(*path)));
        } else {
            body.push_back(Instruction::value_of(std::move(*path)));
        }
    }
    return body;
}

Genome random_genome(StructureType type, const TagCatalog& catalog, const InitParams& params,
                     Rng& rng) {
    assert(!catalog.paths.empty());
    assert(params.min_templates >= 1 && params.min_templates <= params.max_templates);
    assert(params.min_instructions >= 1 && params.min_instructions <= params.max_instructions);

    Genome g;
    g.type = type;

    Template root;
    root.match = RootPattern{};
    int templates = rng.uniform_int(params.min_templates, params.max_templates);

    if (type == StructureType::Type1) {
        PathExpr entry;
        entry.absolute = true;
        entry.steps.push_back(Step{Axis::Child, catalog.root_tag(), std::nullopt});
        root.body.push_back(Instruction::apply(std::move(entry)));
        g.sheet.templates.push_back(std::move(root));

        for (int i = 0; i < templates; i++) {
            Template t;
            std::string tag = shallow_biased_tag(catalog, params.shallow_bias, rng);
            int count = rng.uniform_int(params.min_instructions, params.max_instructions);
            t.body = random_body(type, catalog, catalog.occurrences(tag), count, rng);
            t.match = std::move(tag);
            g.sheet.templates.push_back(std::move(t));
        }
    } else {
        g.sheet.templates.push_back(root);
        for (int i = 0; i < templates; i++) {
            const auto& entry = catalog.paths[rng.uniform_index(catalog.paths.size())];
            PathExpr match = absolute_path(entry.tags);
            g.sheet.templates[0].body.push_back(Instruction::apply(match));

            Template t;
            t.match = match;
            if (entry.leaf) {
                t.body.push_back(Instruction::value_of(PathExpr::self_expr()));
            } else {
                int count = rng.uniform_int(params.min_instructions, params.max_instructions);
                t.body = random_body(type, catalog, entry.nodes, count, rng);
            }
            g.sheet.templates.push_back(std::move(t));
        }
    }
    return g;
}

std::vector<std::string> validate(const Genome& genome, const TagCatalog& catalog) {
    std::vector<std::string> violations;
    auto flag = [&](const std::string& msg) { violations.push_back(msg); };

    const auto& templates = genome.sheet.templates;
    if (templates.empty()) {
        flag("stylesheet has no templates");
        return violations;
    }
    if (!std::holds_alternative<RootPattern>(templates[0].match))
        flag("first template does not match \"/\"");
    if (templates.size() < 2) flag("no non-root template");

    for (size_t i = 0; i < templates.size(); i++) {
        const Template& t = templates[i];
        if (i > 0 && std::holds_alternative<RootPattern>(t.match))
            flag("template " + std::to_string(i) + ": duplicate root match");
        if (t.body.empty()) flag("template " + std::to_string(i) + ": empty body");
        for (const Instruction& instr : t.body) {
            if (instr.kind == Instruction::Kind::Apply && instr.select.self())
                flag("template " + std::to_string(i) + ": apply-templates selects self");
            if (instr.kind == Instruction::Kind::ValueOf && !instr.wrapped)
                flag("template " + std::to_string(i) + ": unwrapped value-of");
            for (const Step& s : instr.select.steps)
                if (s.filter && *s.filter < 1)
                    flag("template " + std::to_string(i) + ": filter below 1");
        }
    }

    const Document& doc = catalog.document();
    const Template& root = templates[0];

    if (genome.type == StructureType::Type1) {
        PathExpr expected;
        expected.absolute = true;
        expected.steps.push_back(Step{Axis::Child, catalog.root_tag(), std::nullopt});
        if (root.body.size() != 1 || root.body[0].kind != Instruction::Kind::Apply ||
            root.body[0].select != expected)
            flag("root template must hold exactly one apply-templates selecting /" +
                 catalog.root_tag());

        for (size_t i = 1; i < templates.size(); i++) {
            const Template& t = templates[i];
            const std::string* tag = std::get_if<std::string>(&t.match);
            if (!tag) {
                flag("template " + std::to_string(i) + ": match must be a bare tag name");
                continue;
            }
            if (!catalog.has_tag(*tag))
                flag("template " + std::to_string(i) + ": tag '" + *tag +
                     "' does not occur in the input");
            std::vector<NodeId> contexts = catalog.occurrences(*tag);
            for (size_t j = 0; j < t.body.size(); j++) {
                const Instruction& instr = t.body[j];
                if (instr.select.absolute) {
                    flag("template " + std::to_string(i) + " instruction " + std::to_string(j) +
                         ": select must be relative");
                    continue;
                }
                if (!resolves_from_any(instr.select, contexts, doc))
                    flag("template " + std::to_string(i) + " instruction " + std::to_string(j) +
                         ": select '" + to_string(instr.select) +
                         "' resolves from no occurrence of '" + *tag + "'");
            }
        }
    } else {
        for (size_t j = 0; j < root.body.size(); j++) {
            const Instruction& instr = root.body[j];
            if (instr.kind != Instruction::Kind::Apply) {
                flag("root instruction " + std::to_string(j) + ": must be apply-templates");
                continue;
            }
            if (!instr.select.absolute) {
                flag("root instruction " + std::to_string(j) + ": select must be absolute");
                continue;
            }
            bool simple = true;
            std::vector<std::string> tags;
            for (const Step& s : instr.select.steps) {
                if (s.axis != Axis::Child || s.filter) simple = false;
                tags.push_back(s.tag);
            }
            if (!simple) {
                flag("root instruction " + std::to_string(j) +
                     ": select must be a plain slash-separated tag path");
                continue;
            }
            if (!catalog.find_path(tags))
                flag("root instruction " + std::to_string(j) + ": path '" +
                     to_string(instr.select) + "' does not occur in the input");
        }

        if (templates.size() != root.body.size() + 1) {
            flag("template count does not mirror the root apply-templates count");
        } else {
            for (size_t i = 1; i < templates.size(); i++) {
                const PathExpr* match = std::get_if<PathExpr>(&templates[i].match);
                if (!match) {
                    flag("template " + std::to_string(i) + ": match must be an absolute path");
                    continue;
                }
                if (root.body[i - 1].kind == Instruction::Kind::Apply &&
                    *match != root.body[i - 1].select)
                    flag("template " + std::to_string(i) +
                         ": match is out of order with the root apply-templates list");
            }
        }

        for (size_t i = 1; i < templates.size(); i++) {
            const Template& t = templates[i];
            const PathExpr* match = std::get_if<PathExpr>(&t.match);
            if (!match) continue;
            std::vector<std::string> tags;
            for (const Step& s : match->steps) tags.push_back(s.tag);
            const TagCatalog::PathEntry* entry = catalog.find_path(tags);
            std::vector<NodeId> contexts = entry ? entry->nodes : std::vector<NodeId>{};

            for (size_t j = 0; j < t.body.size(); j++) {
                const Instruction& instr = t.body[j];
                if (instr.kind != Instruction::Kind::ValueOf) {
                    flag("template " + std::to_string(i) + " instruction " + std::to_string(j) +
                         ": only value-of is allowed here");
                    continue;
                }
                if (instr.select.absolute) {
                    flag("template " + std::to_string(i) + " instruction " + std::to_string(j) +
                         ": select must be relative to the match");
                    continue;
                }
                if (entry && !resolves_from_any(instr.select, contexts, doc))
                    flag("template " + std::to_string(i) + " instruction " + std::to_string(j) +
                         ": select '" + to_string(instr.select) + "' resolves from no node at " +
                         to_string(*match));
            }
            if (entry && entry->leaf) {
                bool single_self = t.body.size() == 1 &&
                                   t.body[0].kind == Instruction::Kind::ValueOf &&
                                   t.body[0].select.self();
                if (!single_self)
                    flag("template " + std::to_string(i) +
                         ": a maximum-depth template must hold the single value-of '.'");
            }
        }
    }
    return violations;
}

int genome_size(const Genome& genome) { return sheet_size(genome.sheet); }

}  // namespace xsltevo
