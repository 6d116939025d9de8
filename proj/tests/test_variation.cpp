#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "xsltevo/corpus.hpp"
#include "xsltevo/variation.hpp"

using namespace xsltevo;

namespace {

TagCatalog book_catalog() { return build_catalog(fixtures::shared_doc(fixtures::kBook)); }

Genome book_type1() {
    return Genome{StructureType::Type1, fixtures::sheet(fixtures::kSheetType1), {}};
}

Genome book_type2() {
    return Genome{StructureType::Type2, fixtures::sheet(fixtures::kSheetType2), {}};
}

// A type 1 genome with a single mutable instruction, so an operator has
// exactly one site to hit.
Genome single_site(const char* select) {
    std::string text = std::string(R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:template match="/">
    <output><xsl:apply-templates select="/book"/></output>
  </xsl:template>
  <xsl:template match="book">
    <xsl:apply-templates select=')") +
                       select + R"('/>
  </xsl:template>
</xsl:stylesheet>
)";
    return Genome{StructureType::Type1, fixtures::sheet(text.c_str()), {}};
}

const PathExpr& only_select(const Genome& g) { return g.sheet.templates[1].body[0].select; }

}  // namespace

TEST_CASE("default operator tables mirror the priority table") {
    OperatorTable t1 = default_operator_table(StructureType::Type1);
    OperatorTable t2 = default_operator_table(StructureType::Type2);

    CHECK(t1.group_total(true) == doctest::Approx(0.99));
    CHECK(t2.group_total(true) == doctest::Approx(0.99));
    CHECK(t1.group_total(false) == doctest::Approx(1.00));
    CHECK(t2.group_total(false) == doctest::Approx(1.00));

    CHECK(t1.weight[size_t(OperatorKind::XpSetDescendant)] == doctest::Approx(0.14));
    CHECK(t2.weight[size_t(OperatorKind::XpSetDescendant)] == 0.0);
    CHECK(t1.weight[size_t(OperatorKind::XpAddBranch)] == doctest::Approx(0.16));
    CHECK(t2.weight[size_t(OperatorKind::XpRemoveFilter)] == doctest::Approx(0.19));
    CHECK(t1.weight[size_t(OperatorKind::AddTemplate)] == doctest::Approx(0.20));
    CHECK(t1.weight[size_t(OperatorKind::SetTemplateNull)] == doctest::Approx(0.03));

    CHECK_NOTHROW(check_operator_table(t1, StructureType::Type1));
    CHECK_NOTHROW(check_operator_table(t2, StructureType::Type2));
    CHECK_THROWS_AS(check_operator_table(t1, StructureType::Type2), std::invalid_argument);
}

TEST_CASE("operator names round trip") {
    for (int i = 0; i < kOperatorCount; i++) {
        OperatorKind kind = OperatorKind(i);
        auto back = operator_from_name(operator_name(kind));
        REQUIRE(back.has_value());
        CHECK(*back == kind);
    }
    CHECK(!operator_from_name("bogus").has_value());
}

TEST_CASE("roulette respects weights") {
    Rng rng(2024);
    OperatorTable table = default_operator_table(StructureType::Type1);
    std::array<int, kOperatorCount> counts{};
    const int draws = 40000;
    for (int i = 0; i < draws; i++)
        counts[size_t(select_operator(table, StructureType::Type1, rng))]++;

    for (int k = 0; k < kOperatorCount; k++) {
        double group_total = table.group_total(is_xpath_kind(OperatorKind(k)));
        double group_p = is_xpath_kind(OperatorKind(k)) ? table.group_balance
                                                        : 1 - table.group_balance;
        double expected = group_p * table.weight[size_t(k)] / group_total;
        double actual = double(counts[size_t(k)]) / draws;
        CHECK(std::abs(actual - expected) < 0.03);
    }

    // zero-weight operators are never drawn
    OperatorTable zeroed = table;
    zeroed.weight[size_t(OperatorKind::XpAddFilter)] = 0;
    Rng rng2(1);
    for (int i = 0; i < 20000; i++)
        CHECK(select_operator(zeroed, StructureType::Type1, rng2) != OperatorKind::XpAddFilter);

    // a single-operator group always yields that operator
    OperatorTable lone{};
    lone.weight[size_t(OperatorKind::XpSetSelf)] = 1.0;
    lone.weight[size_t(OperatorKind::AddTemplate)] = 1.0;
    Rng rng3(2);
    for (int i = 0; i < 100; i++) {
        OperatorKind kind = select_operator(lone, StructureType::Type1, rng3);
        CHECK((kind == OperatorKind::XpSetSelf || kind == OperatorKind::AddTemplate));
    }
}

TEST_CASE("add filter mirrors the published example") {
    TagCatalog cat = book_catalog();
    Genome g = single_site("chapter");
    Rng rng(3);
    MutationResult r = mutate_xpath(g, OperatorKind::XpAddFilter, cat, rng);
    REQUIRE(r.applied);
    const PathExpr& sel = only_select(r.genome);
    REQUIRE(sel.steps.size() == 1);
    REQUIRE(sel.steps[0].filter.has_value());
    CHECK(*sel.steps[0].filter >= 1);
    CHECK(*sel.steps[0].filter <= 3);  // three chapters at most per parent
    CHECK(validate(r.genome, cat).empty());
}

TEST_CASE("mutate and remove filter") {
    TagCatalog cat = book_catalog();
    Genome g = single_site("chapter[2]");
    Rng rng(4);

    MutationResult mutated = mutate_xpath(g, OperatorKind::XpMutateFilter, cat, rng);
    REQUIRE(mutated.applied);
    CHECK(only_select(mutated.genome).steps[0].filter.has_value());

    MutationResult removed = mutate_xpath(g, OperatorKind::XpRemoveFilter, cat, rng);
    REQUIRE(removed.applied);
    CHECK(!only_select(removed.genome).steps[0].filter.has_value());
    CHECK(to_string(only_select(removed.genome)) == "chapter");

    // nothing to mutate or remove without a filter
    Genome plain = single_site("chapter");
    CHECK(!mutate_xpath(plain, OperatorKind::XpMutateFilter, cat, rng).applied);
    CHECK(!mutate_xpath(plain, OperatorKind::XpRemoveFilter, cat, rng).applied);
}

TEST_CASE("add branch observes the input hierarchy") {
    TagCatalog cat = book_catalog();
    Genome g = single_site("chapter/section");
    Rng rng(5);
    MutationResult r = mutate_xpath(g, OperatorKind::XpAddBranch, cat, rng);
    REQUIRE(r.applied);
    CHECK(to_string(only_select(r.genome)) == "chapter/section/line");
    CHECK(validate(r.genome, cat).empty());

    // no element children below the selected nodes: no eligible site
    Genome leaf = single_site("chapter/para");
    CHECK(!mutate_xpath(leaf, OperatorKind::XpAddBranch, cat, rng).applied);
}

TEST_CASE("set self flips apply-templates to a wrapped value-of") {
    TagCatalog cat = book_catalog();
    Genome g = single_site("chapter/title");
    Rng rng(6);
    MutationResult r = mutate_xpath(g, OperatorKind::XpSetSelf, cat, rng);
    REQUIRE(r.applied);
    const Instruction& instr = r.genome.sheet.templates[1].body[0];
    CHECK(instr.kind == Instruction::Kind::ValueOf);
    CHECK(instr.wrapped);
    CHECK(instr.select.self());
    CHECK(validate(r.genome, cat).empty());
}

TEST_CASE("set descendant mirrors the published example") {
    TagCatalog cat = book_catalog();
    Genome g = single_site("chapter/section/line");
    Rng rng(7);
    MutationResult r = mutate_xpath(g, OperatorKind::XpSetDescendant, cat, rng);
    REQUIRE(r.applied);
    CHECK(to_string(only_select(r.genome)) == "chapter//line");
    CHECK(validate(r.genome, cat).empty());

    // too short to keep both endpoints
    Genome short_path = single_site("chapter/title");
    CHECK(!mutate_xpath(short_path, OperatorKind::XpSetDescendant, cat, rng).applied);

    // illegal for type 2 by contract
    CHECK_THROWS_AS(mutate_xpath(book_type2(), OperatorKind::XpSetDescendant, cat, rng),
                    std::invalid_argument);
}

TEST_CASE("remove branch mirrors the published example") {
    TagCatalog cat = book_catalog();
    Genome g = single_site("chapter/section/line");
    Rng rng(8);
    MutationResult r = mutate_xpath(g, OperatorKind::XpRemoveBranch, cat, rng);
    REQUIRE(r.applied);
    CHECK(to_string(only_select(r.genome)) == "chapter/section");

    // removing the last step flips the instruction to value-of "."
    Genome one = single_site("chapter");
    MutationResult flipped = mutate_xpath(one, OperatorKind::XpRemoveBranch, cat, rng);
    REQUIRE(flipped.applied);
    const Instruction& instr = flipped.genome.sheet.templates[1].body[0];
    CHECK(instr.select.self());
    CHECK(instr.kind == Instruction::Kind::ValueOf);
    CHECK(instr.wrapped);
    CHECK(validate(flipped.genome, cat).empty());
}

TEST_CASE("the type 2 root selects are untouched by xpath operators") {
    TagCatalog cat = book_catalog();
    Genome g = book_type2();
    Rng rng(9);
    for (OperatorKind kind :
         {OperatorKind::XpAddFilter, OperatorKind::XpMutateFilter, OperatorKind::XpRemoveFilter,
          OperatorKind::XpAddBranch, OperatorKind::XpSetSelf, OperatorKind::XpRemoveBranch}) {
        for (int i = 0; i < 200; i++) {
            MutationResult r = mutate_xpath(g, kind, cat, rng);
            CHECK(r.genome.sheet.templates[0] == g.sheet.templates[0]);
            if (r.applied) CHECK(validate(r.genome, cat).empty());
        }
    }
}

TEST_CASE("the type 1 root template is frozen") {
    TagCatalog cat = book_catalog();
    Genome g = book_type1();
    Rng rng(10);
    OperatorTable table = default_operator_table(StructureType::Type1);
    InitParams params;
    Genome current = g;
    for (int i = 0; i < 1000; i++) {
        OperatorKind kind = select_operator(table, StructureType::Type1, rng);
        if (kind == OperatorKind::CrossoverTemplate) {
            current = crossover_template(current, g, rng).first;
        } else {
            current = apply_operator(current, kind, cat, params, rng).genome;
        }
        CHECK(current.sheet.templates[0] == g.sheet.templates[0]);
    }
}

TEST_CASE("crossover swaps one non-root template") {
    TagCatalog cat = book_catalog();
    Rng rng(11);

    Genome a = book_type1();
    CrossoverResult self_cross = crossover_template(a, a, rng);
    REQUIRE(self_cross.applied);
    CHECK(self_cross.first.sheet == a.sheet);
    CHECK(self_cross.second.sheet == a.sheet);

    InitParams params;
    for (StructureType type : {StructureType::Type1, StructureType::Type2}) {
        for (int i = 0; i < 2000; i++) {
            Rng gen_rng(uint64_t(i) * 2 + 1);
            Genome p1 = random_genome(type, cat, params, gen_rng);
            Genome p2 = random_genome(type, cat, params, gen_rng);
            CrossoverResult r = crossover_template(p1, p2, rng);
            REQUIRE(r.applied);
            CHECK(validate(r.first, cat).empty());
            CHECK(validate(r.second, cat).empty());
        }
    }

    CHECK_THROWS_AS(crossover_template(book_type1(), book_type2(), rng),
                    std::invalid_argument);
}

TEST_CASE("set-template-null replaces a body with the single self value-of") {
    TagCatalog cat = book_catalog();
    Genome g = book_type1();  // only the book template is non-root beyond title
    Rng rng(12);
    InitParams params;
    MutationResult r = mutate_structure(g, OperatorKind::SetTemplateNull, cat, params, rng);
    REQUIRE(r.applied);
    bool some_null = false;
    for (size_t t = 1; t < r.genome.sheet.templates.size(); t++) {
        const auto& body = r.genome.sheet.templates[t].body;
        if (body.size() == 1 && body[0].kind == Instruction::Kind::ValueOf &&
            body[0].select.self())
            some_null = true;
    }
    CHECK(some_null);
    CHECK(validate(r.genome, cat).empty());
}

TEST_CASE("remove-apply is a no-op while a single template is left") {
    TagCatalog cat = book_catalog();
    Genome g = single_site("chapter/title");  // one non-root template, two instructions? no: one
    g.sheet.templates[1].body.push_back(Instruction::value_of(PathExpr::self_expr()));
    Rng rng(13);
    InitParams params;
    MutationResult r = mutate_structure(g, OperatorKind::RemoveApply, cat, params, rng);
    CHECK(!r.applied);
    CHECK(r.genome.sheet == g.sheet);

    // with two templates the removal cascades when a body empties
    Genome two = book_type2();
    for (int i = 0; i < 50; i++) {
        MutationResult rr = mutate_structure(two, OperatorKind::RemoveApply, cat, params, rng);
        REQUIRE(rr.applied);
        CHECK(validate(rr.genome, cat).empty());
    }
}

TEST_CASE("add-template keeps the type 2 correspondence at the same index") {
    TagCatalog cat = book_catalog();
    Genome g = book_type2();
    Rng rng(14);
    InitParams params;
    for (int i = 0; i < 500; i++) {
        MutationResult r = mutate_structure(g, OperatorKind::AddTemplate, cat, params, rng);
        REQUIRE(r.applied);
        CHECK(r.genome.sheet.templates.size() == g.sheet.templates.size() + 1);
        CHECK(r.genome.sheet.templates[0].body.size() == g.sheet.templates[0].body.size() + 1);
        CHECK(validate(r.genome, cat).empty());
    }
}

TEST_CASE("remove-template keeps at least one non-root template") {
    TagCatalog cat = book_catalog();
    Rng rng(15);
    InitParams params;

    Genome minimal = single_site("chapter");
    CHECK(!mutate_structure(minimal, OperatorKind::RemoveTemplate, cat, params, rng).applied);

    Genome g = book_type2();  // two non-root templates
    MutationResult r = mutate_structure(g, OperatorKind::RemoveTemplate, cat, params, rng);
    REQUIRE(r.applied);
    CHECK(r.genome.sheet.templates.size() == 2);
    CHECK(validate(r.genome, cat).empty());
}

TEST_CASE("add-apply skips maximum-depth type 2 templates") {
    TagCatalog cat = book_catalog();
    Genome g = book_type2();
    Rng rng(16);
    InitParams params;
    for (int i = 0; i < 300; i++) {
        MutationResult r = mutate_structure(g, OperatorKind::AddApply, cat, params, rng);
        REQUIRE(r.applied);
        // /book/title is at maximum depth and must keep its single self value-of
        CHECK(r.genome.sheet.templates[2].body.size() == 1);
        CHECK(validate(r.genome, cat).empty());
    }
}

TEST_CASE("mutate-apply redraws selects that still resolve") {
    TagCatalog cat = book_catalog();
    Rng rng(17);
    InitParams params;
    for (OperatorKind kind : {OperatorKind::MutateApply1, OperatorKind::MutateApply2}) {
        for (StructureType type : {StructureType::Type1, StructureType::Type2}) {
            Genome g = type == StructureType::Type1 ? book_type1() : book_type2();
            for (int i = 0; i < 300; i++) {
                MutationResult r = mutate_structure(g, kind, cat, params, rng);
                REQUIRE(r.applied);
                CHECK(validate(r.genome, cat).empty());
            }
        }
    }
}

TEST_CASE("closure under every operator") {
    InitParams params;
    Rng rng(18);
    for (const CorpusPair& pair : corpus_pairs("easy")) {
        auto doc = fixtures::shared_doc(pair.input_xml.c_str());
        TagCatalog cat = build_catalog(doc);
        for (StructureType type : {StructureType::Type1, StructureType::Type2}) {
            for (int k = 0; k < kOperatorCount; k++) {
                OperatorKind kind = OperatorKind(k);
                if (!kind_legal_for(kind, type)) continue;
                Genome rolling = random_genome(type, cat, params, rng);
                for (int i = 0; i < 250; i++) {
                    Genome base = i % 2 == 0 ? random_genome(type, cat, params, rng) : rolling;
                    if (kind == OperatorKind::CrossoverTemplate) {
                        Genome other = random_genome(type, cat, params, rng);
                        CrossoverResult r = crossover_template(base, other, rng);
                        CHECK(validate(r.first, cat).empty());
                        CHECK(validate(r.second, cat).empty());
                        rolling = r.first;
                    } else {
                        MutationResult r = apply_operator(base, kind, cat, params, rng);
                        if (!r.applied) CHECK(r.genome.sheet == base.sheet);
                        CHECK(validate(r.genome, cat).empty());
                        rolling = r.genome;
                    }
                }
            }
        }
    }
}

TEST_CASE("remove branch then add branch can restore the expression") {
    TagCatalog cat = book_catalog();
    Genome g = single_site("chapter/section");
    Rng rng(19);
    MutationResult removed = mutate_xpath(g, OperatorKind::XpRemoveBranch, cat, rng);
    REQUIRE(removed.applied);
    CHECK(to_string(only_select(removed.genome)) == "chapter");
    for (int i = 0; i < 50; i++) {
        MutationResult restored =
            mutate_xpath(removed.genome, OperatorKind::XpAddBranch, cat, rng);
        REQUIRE(restored.applied);
        if (only_select(restored.genome) == only_select(g)) return;
    }
    FAIL("add branch never restored the removed step");
}
