#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "xsltevo/corpus.hpp"
#include "xsltevo/genome.hpp"

using namespace xsltevo;

namespace {

TagCatalog book_catalog() { return build_catalog(fixtures::shared_doc(fixtures::kBook)); }

Genome book_type1() {
    return Genome{StructureType::Type1, fixtures::sheet(fixtures::kSheetType1), {}};
}

Genome book_type2() {
    return Genome{StructureType::Type2, fixtures::sheet(fixtures::kSheetType2), {}};
}

}  // namespace

TEST_CASE("the published examples validate") {
    TagCatalog cat = book_catalog();
    CHECK(validate(book_type1(), cat).empty());
    CHECK(validate(book_type2(), cat).empty());
}

TEST_CASE("type 2 order violations are reported") {
    TagCatalog cat = book_catalog();
    Genome g = book_type2();
    std::swap(g.sheet.templates[0].body[0], g.sheet.templates[0].body[1]);
    auto violations = validate(g, cat);
    CHECK(!violations.empty());

    // swapping the templates as well restores the correspondence
    Genome swapped = book_type2();
    std::swap(swapped.sheet.templates[0].body[0], swapped.sheet.templates[0].body[1]);
    std::swap(swapped.sheet.templates[1], swapped.sheet.templates[2]);
    CHECK(validate(swapped, cat).empty());
}

TEST_CASE("type 1 violations are reported") {
    TagCatalog cat = book_catalog();

    Genome absolute_select = book_type1();
    absolute_select.sheet.templates[1].body[0].select = parse_xpath("/book/chapter");
    CHECK(!validate(absolute_select, cat).empty());

    Genome bad_tag = book_type1();
    bad_tag.sheet.templates[1].match = std::string("nonexistent");
    CHECK(!validate(bad_tag, cat).empty());

    Genome apply_self = book_type1();
    apply_self.sheet.templates[1].body[0] =
        Instruction{Instruction::Kind::Apply, PathExpr::self_expr(), false};
    CHECK(!validate(apply_self, cat).empty());

    Genome wrong_root = book_type1();
    wrong_root.sheet.templates[0].body[0].select = parse_xpath("/chapter");
    CHECK(!validate(wrong_root, cat).empty());

    Genome unresolvable = book_type1();
    unresolvable.sheet.templates[1].body[0].select = parse_xpath("chapter/chapter");
    CHECK(!validate(unresolvable, cat).empty());

    // filters do not affect resolvability
    Genome big_filter = book_type1();
    big_filter.sheet.templates[1].body[0].select = parse_xpath("chapter[99]");
    CHECK(validate(big_filter, cat).empty());
}

TEST_CASE("a maximum-depth type 2 template must hold the single self value-of") {
    TagCatalog cat = book_catalog();
    Genome g = book_type2();
    // /book/title is at maximum depth; anything but {value-of .} violates
    g.sheet.templates[2].body.push_back(
        Instruction::value_of(PathExpr::self_expr()));
    CHECK(!validate(g, cat).empty());
}

TEST_CASE("genome size counts templates plus instructions") {
    Genome fig2{StructureType::Type2, fixtures::sheet(fixtures::kSheetAbsolute), {}};
    CHECK(genome_size(fig2) == 4);

    Genome g = book_type1();
    int before = genome_size(g);
    g.sheet.templates[1].body.push_back(Instruction::value_of(PathExpr::self_expr()));
    CHECK(genome_size(g) == before + 1);

    // minimal shape: root template + its apply + one template + one instruction
    TagCatalog cat = book_catalog();
    InitParams params;
    params.min_templates = params.max_templates = 1;
    params.min_instructions = params.max_instructions = 1;
    Rng rng(123);
    CHECK(genome_size(random_genome(StructureType::Type1, cat, params, rng)) == 4);
}

TEST_CASE("random genomes respect forced parameters") {
    TagCatalog cat = build_catalog(fixtures::shared_doc(fixtures::kXhtml));
    InitParams params;
    params.min_templates = params.max_templates = 1;
    params.min_instructions = params.max_instructions = 1;

    Rng rng(99);
    Genome g = random_genome(StructureType::Type2, cat, params, rng);
    CHECK(g.sheet.templates.size() == 2);
    CHECK(g.sheet.templates[0].body.size() == 1);
    CHECK(validate(g, cat).empty());
}

TEST_CASE("random genomes are deterministic in the seed") {
    TagCatalog cat = book_catalog();
    InitParams params;
    for (StructureType type : {StructureType::Type1, StructureType::Type2}) {
        Rng a(42), b(42), c(43);
        Genome ga = random_genome(type, cat, params, a);
        Genome gb = random_genome(type, cat, params, b);
        Genome gc = random_genome(type, cat, params, c);
        CHECK(ga.sheet == gb.sheet);
        CHECK(render_stylesheet(ga.sheet) == render_stylesheet(gb.sheet));
        // a different seed almost surely differs; not asserted
        (void)gc;
    }
}

TEST_CASE("random genomes always validate") {
    InitParams params;
    for (const CorpusPair& pair : corpus_pairs()) {
        auto doc = fixtures::shared_doc(pair.input_xml.c_str());
        TagCatalog cat = build_catalog(doc);
        for (StructureType type : {StructureType::Type1, StructureType::Type2}) {
            Rng rng(1000 + uint64_t(pair.number));
            for (int i = 0; i < 10000; i++) {
                Genome g = random_genome(type, cat, params, rng);
                auto violations = validate(g, cat);
                if (!violations.empty()) {
                    CAPTURE(pair.name);
                    CAPTURE(violations[0]);
                    CAPTURE(render_stylesheet(g.sheet));
                    REQUIRE(violations.empty());
                }
            }
        }
    }
}

TEST_CASE("shallow bias favours shallow tags") {
    TagCatalog cat = book_catalog();
    Rng rng(5);
    int book = 0, para = 0;
    for (int i = 0; i < 20000; i++) {
        std::string tag = shallow_biased_tag(cat, 1.0, rng);
        if (tag == "book") book++;
        if (tag == "para") para++;
    }
    CHECK(book > para);  // depth 1 vs depth 3
}

TEST_CASE("downward walks resolve from their contexts") {
    TagCatalog cat = book_catalog();
    std::vector<NodeId> chapters = cat.occurrences("chapter");
    Rng rng(17);
    for (int i = 0; i < 500; i++) {
        auto path = random_downward_path(cat, chapters, rng);
        REQUIRE(path.has_value());
        bool resolves = false;
        for (NodeId ctx : chapters)
            if (!eval_path(*path, ctx, cat.document()).empty()) resolves = true;
        CHECK(resolves);
    }

    std::vector<NodeId> leaves = cat.occurrences("para");
    CHECK(!random_downward_path(cat, leaves, rng).has_value());
}

TEST_CASE("enumerated relative paths are exactly the downward tag paths") {
    TagCatalog cat = book_catalog();
    auto paths = enumerate_relative_paths(cat, cat.occurrences("book"));
    std::set<std::string> rendered;
    for (const auto& p : paths) rendered.insert(to_string(p));
    CHECK(rendered.count("title") == 1);
    CHECK(rendered.count("chapter") == 1);
    CHECK(rendered.count("chapter/para") == 1);
    CHECK(rendered.count("chapter/section/line") == 1);
    CHECK(rendered.count("para") == 0);
    for (const auto& p : paths) {
        bool resolves = false;
        for (NodeId ctx : cat.occurrences("book"))
            if (!eval_path(p, ctx, cat.document()).empty()) resolves = true;
        CHECK(resolves);
    }
}
