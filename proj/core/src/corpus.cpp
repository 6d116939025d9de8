#include "xsltevo/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "xsltevo/xml.hpp"
#include "xsltevo/xslt.hpp"

namespace xsltevo {

namespace {

// Pair 1: flat list, the target is every value. Solvable by a two-template
// stylesheet.
const char* kPair1Input = R"(<inventory>
  <item>blue kayak</item>
  <item>carbon paddle</item>
  <item>dry bag</item>
  <item>spray skirt</item>
  <item>tow line</item>
  <item>bilge pump</item>
  <item>deck compass</item>
  <item>repair kit</item>
</inventory>
)";

const char* kPair1Oracle = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select='/inventory'/>
    </output>
  </xsl:template>
  <xsl:template match='item'>
    <line><xsl:value-of select='.'/></line>
  </xsl:template>
</xsl:stylesheet>
)";

// Pair 2: only the section titles; the entries have to be suppressed.
const char* kPair2Input = R"(<site>
  <section>
    <title>Getting started</title>
    <entry>install the toolchain</entry>
    <entry>run the first build</entry>
  </section>
  <section>
    <title>Advanced usage</title>
    <entry>profile the hot path</entry>
  </section>
  <section>
    <title>Troubleshooting</title>
    <entry>check the log file</entry>
    <entry>reset the cache</entry>
    <entry>file a report</entry>
  </section>
</site>
)";

const char* kPair2Oracle = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select='/site'/>
    </output>
  </xsl:template>
  <xsl:template match='site'>
    <xsl:apply-templates select='section/title'/>
  </xsl:template>
  <xsl:template match='title'>
    <line><xsl:value-of select='.'/></line>
  </xsl:template>
</xsl:stylesheet>
)";

// Pair 3: item titles of a feed; the channel title and the links stay out.
const char* kPair3Input = R"(<feed>
  <channel>
    <title>Daily notes</title>
    <item>
      <title>Monday report</title>
      <link>notes/mon</link>
    </item>
    <item>
      <title>Tuesday report</title>
      <link>notes/tue</link>
    </item>
    <item>
      <title>Midweek summary</title>
      <link>notes/wed</link>
    </item>
    <item>
      <title>Thursday report</title>
      <link>notes/thu</link>
    </item>
    <item>
      <title>Weekend plans</title>
      <link>notes/sat</link>
    </item>
  </channel>
</feed>
)";

const char* kPair3Oracle = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select='/feed'/>
    </output>
  </xsl:template>
  <xsl:template match='channel'>
    <xsl:apply-templates select='item/title'/>
  </xsl:template>
  <xsl:template match='title'>
    <line><xsl:value-of select='.'/></line>
  </xsl:template>
</xsl:stylesheet>
)";

// Pair 4: the same tag at two depths; a descendant step covers both.
const char* kPair4Input = R"(<doc>
  <meta>draft v2</meta>
  <part>
    <note>first reminder</note>
    <sec>
      <note>nested idea</note>
      <note>another nested idea</note>
    </sec>
  </part>
  <part>
    <note>second reminder</note>
    <sec>
      <note>deep thought</note>
    </sec>
  </part>
</doc>
)";

const char* kPair4Oracle = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select='/doc'/>
    </output>
  </xsl:template>
  <xsl:template match='doc'>
    <xsl:apply-templates select='part//note'/>
  </xsl:template>
  <xsl:template match='note'>
    <line><xsl:value-of select='.'/></line>
  </xsl:template>
</xsl:stylesheet>
)";

// Pair 5: chapter titles plus the paragraphs of the second chapter only.
const char* kPair5Input = R"(<book>
  <title>Field guide</title>
  <chapter>
    <title>Shorelines</title>
    <para>tide pools</para>
    <para>kelp forests</para>
    <para>sand flats</para>
  </chapter>
  <chapter>
    <title>Open water</title>
    <para>current lines</para>
    <para>swell patterns</para>
    <para>wind chop</para>
    <para>fog banks</para>
  </chapter>
  <chapter>
    <title>Navigation</title>
    <para>bearing drills</para>
    <para>chart reading</para>
    <para>range finding</para>
    <para>dead reckoning</para>
    <para>night transit</para>
  </chapter>
</book>
)";

const char* kPair5Oracle = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select='/book'/>
    </output>
  </xsl:template>
  <xsl:template match='book'>
    <xsl:apply-templates select='chapter/title'/>
    <xsl:apply-templates select='chapter[2]/para'/>
  </xsl:template>
  <xsl:template match='title'>
    <line><xsl:value-of select='.'/></line>
  </xsl:template>
  <xsl:template match='para'>
    <line><xsl:value-of select='.'/></line>
  </xsl:template>
</xsl:stylesheet>
)";

// Pair 6: reordered single-node extractions behind cardinal filters. The
// side sections feed the built-in rules plenty of unwanted text.
const char* kPair6Input = R"(<catalog>
  <vendor>North Shore Outfitters</vendor>
  <banner>spring clearance</banner>
  <goods>
    <product>
      <name>solo canoe</name>
      <price>899</price>
      <spec>royalex hull</spec>
      <spec>ash gunwales</spec>
    </product>
    <product>
      <name>touring kayak</name>
      <price>1450</price>
      <spec>fiberglass layup</spec>
      <spec>skeg system</spec>
    </product>
    <product>
      <name>packraft</name>
      <price>990</price>
      <spec>tpu fabric</spec>
      <spec>inflation bag</spec>
    </product>
    <product>
      <name>river runner</name>
      <price>1120</price>
      <spec>planing hull</spec>
      <spec>thigh braces</spec>
    </product>
    <product>
      <name>expedition sled</name>
      <price>640</price>
      <spec>hdpe base</spec>
      <spec>cargo lash points</spec>
    </product>
    <product>
      <name>surf ski</name>
      <price>2300</price>
      <spec>carbon shell</spec>
      <spec>understern rudder</spec>
    </product>
  </goods>
  <legal>
    <notice>prices include duties</notice>
    <notice>no returns on demo boats</notice>
    <notice>charts sold separately</notice>
  </legal>
  <footer>updated weekly</footer>
</catalog>
)";

const char* kPair6Oracle = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select='/catalog/goods'/>
    </output>
  </xsl:template>
  <xsl:template match='/catalog/goods'>
    <line><xsl:value-of select='product[5]/name'/></line>
    <line><xsl:value-of select='product[2]/price'/></line>
    <line><xsl:value-of select='product[3]/name'/></line>
    <line><xsl:value-of select='product[6]/price'/></line>
  </xsl:template>
</xsl:stylesheet>
)";

// Pair 7: depth five, filters, a descendant step and reordering combined.
const char* kPair7Input = R"(<archive>
  <region>
    <name>north coast</name>
    <station>
      <id>NC-1</id>
      <log>
        <reading>2.4</reading>
        <reading>2.9</reading>
        <reading>3.1</reading>
      </log>
    </station>
    <station>
      <id>NC-2</id>
      <log>
        <reading>1.8</reading>
        <reading>2.2</reading>
      </log>
    </station>
  </region>
  <region>
    <name>outer banks</name>
    <station>
      <id>OB-1</id>
      <log>
        <reading>4.0</reading>
        <reading>4.4</reading>
        <reading>4.9</reading>
        <reading>5.3</reading>
      </log>
    </station>
  </region>
  <region>
    <name>inland delta</name>
    <station>
      <id>ID-1</id>
      <log>
        <reading>0.9</reading>
      </log>
    </station>
    <station>
      <id>ID-2</id>
      <log>
        <reading>1.1</reading>
        <reading>1.3</reading>
      </log>
    </station>
  </region>
  <summary>seasonal medians pending</summary>
</archive>
)";

const char* kPair7Oracle = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select='/archive'/>
    </output>
  </xsl:template>
  <xsl:template match='archive'>
    <xsl:apply-templates select='region[2]/name'/>
    <xsl:apply-templates select='region[2]//reading'/>
    <xsl:apply-templates select='region[3]/station[2]/id'/>
    <xsl:apply-templates select='region[1]/name'/>
  </xsl:template>
  <xsl:template match='name'>
    <line><xsl:value-of select='.'/></line>
  </xsl:template>
  <xsl:template match='reading'>
    <line><xsl:value-of select='.'/></line>
  </xsl:template>
  <xsl:template match='id'>
    <line><xsl:value-of select='.'/></line>
  </xsl:template>
</xsl:stylesheet>
)";

struct PairDef {
    int number;
    const char* name;
    const char* input;
    const char* oracle;
};

const PairDef kPairs[] = {
    {1, "flat-list", kPair1Input, kPair1Oracle},
    {2, "section-titles", kPair2Input, kPair2Oracle},
    {3, "feed-items", kPair3Input, kPair3Oracle},
    {4, "nested-notes", kPair4Input, kPair4Oracle},
    {5, "chapter-filter", kPair5Input, kPair5Oracle},
    {6, "catalog-picks", kPair6Input, kPair6Oracle},
    {7, "station-archive", kPair7Input, kPair7Oracle},
};

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

}  // namespace

std::vector<CorpusPair> corpus_pairs(const std::string& profile) {
    int lo = 1, hi = 7;
    if (profile == "standard") {
    } else if (profile == "easy") {
        hi = 4;
    } else if (profile == "hard") {
        lo = 5;
    } else {
        throw std::invalid_argument("unknown corpus profile: " + profile +
                                    " (expected standard, easy or hard)");
    }
    std::vector<CorpusPair> pairs;
    for (const PairDef& def : kPairs) {
        if (def.number < lo || def.number > hi) continue;
        pairs.push_back(CorpusPair{def.number, def.name, def.input, def.oracle});
    }
    return pairs;
}

std::string corpus_target_xml(const CorpusPair& pair) {
    Document input = parse_xml(pair.input_xml, pair.name);
    Stylesheet oracle = parse_stylesheet(parse_xml(pair.oracle_xslt));
    int height = 0;
    for (const Node& n : input.nodes)
        if (n.is_element()) height = std::max(height, int(n.depth));
    Document target = transform(oracle, input, TransformLimits{height + 8, 100000});
    return serialize(target, true);
}

void write_corpus(const std::string& directory, const std::string& profile) {
    std::filesystem::create_directories(directory);
    for (const CorpusPair& pair : corpus_pairs(profile)) {
        std::filesystem::path base(directory);
        std::string stem = "pair-" + std::to_string(pair.number);
        write_file(base / (stem + "-input.xml"), pair.input_xml);
        write_file(base / (stem + "-target.xml"), corpus_target_xml(pair));
        write_file(base / (stem + "-oracle.xsl"), pair.oracle_xslt);
    }
}

}  // namespace xsltevo
