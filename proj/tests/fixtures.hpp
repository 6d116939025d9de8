#pragma once

// Shared documents and stylesheets used across the test suites.

#include <memory>
#include <string>

#include "xsltevo/xml.hpp"
#include "xsltevo/xslt.hpp"

namespace fixtures {

// Simplified XHTML page with three h2 headings.
inline const char* kXhtml = R"(<?xml version="1.0" ?>
<html>
  <head>
    <title>Test page</title>
  </head>
  <body>
    <h1>Test page</h1>
    <h2>First test</h2>
    <p>Some stuff<br />
    Some more stuff</p>
    <h2>Second test</h2>
    <h2>That's another test</h2>
  </body>
</html>
)";

// Extracts the h2 contents with one absolute XPath.
inline const char* kSheetAbsolute = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select='/html/body/h2'/>
    </output>
  </xsl:template>
  <xsl:template match='h2'>
    <line><xsl:value-of select='.' /></line>
  </xsl:template>
</xsl:stylesheet>
)";

// Same extraction as a template chain along the path.
inline const char* kSheetChain = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select='html' />
    </output>
  </xsl:template>
  <xsl:template match='html'>
    <xsl:apply-templates select='body'/>
  </xsl:template>
  <xsl:template match='body'>
    <xsl:apply-templates select='h2'/>
  </xsl:template>
  <xsl:template match='h2'>
    <line><xsl:value-of select='.' /></line>
  </xsl:template>
</xsl:stylesheet>
)";

// Book document shaped so that chapter[2]//line and chapter[3]/para[5]
// both select something.
inline const char* kBook = R"(<book>
  <title>Collected pieces</title>
  <chapter>
    <title>Beginnings</title>
    <para>first steps</para>
  </chapter>
  <chapter>
    <title>Middles</title>
    <section>
      <line>verse one</line>
      <line>verse two</line>
    </section>
  </chapter>
  <chapter>
    <title>Endings</title>
    <para>alpha</para>
    <para>beta</para>
    <para>gamma</para>
    <para>delta</para>
    <para>epsilon</para>
  </chapter>
</book>
)";

// Type 1 shape over the book document.
inline const char* kSheetType1 = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select="/book"/>
    </output>
  </xsl:template>
  <xsl:template match="book">
    <xsl:apply-templates select="chapter[2]"/>
    <xsl:apply-templates select="chapter[3]/para[5]"/>
    <xsl:apply-templates select="chapter[2]//line"/>
  </xsl:template>
  <xsl:template match="title">
    <line><xsl:value-of select="."/></line>
  </xsl:template>
</xsl:stylesheet>
)";

// Type 2 shape over the book document.
inline const char* kSheetType2 = R"(<?xml version="1.0"?>
<xsl:stylesheet version="1.0" xmlns:xsl="http://www.w3.org/1999/XSL/Transform">
  <xsl:output method="xml" indent='yes'/>
  <xsl:template match="/">
    <output>
      <xsl:apply-templates select="/book"/>
      <xsl:apply-templates select="/book/title"/>
    </output>
  </xsl:template>
  <xsl:template match="/book">
    <line><xsl:value-of select="chapter[2]"/></line>
    <line><xsl:value-of select="chapter[3]/para[5]"/></line>
    <line><xsl:value-of select="chapter[2]//line"/></line>
  </xsl:template>
  <xsl:template match="/book/title">
    <line><xsl:value-of select="."/></line>
  </xsl:template>
</xsl:stylesheet>
)";

inline std::shared_ptr<const xsltevo::Document> shared_doc(const char* text) {
    return std::make_shared<const xsltevo::Document>(xsltevo::parse_xml(text));
}

inline xsltevo::Document doc(const char* text) { return xsltevo::parse_xml(text); }

inline xsltevo::Stylesheet sheet(const char* text) {
    return xsltevo::parse_stylesheet(xsltevo::parse_xml(text));
}

}  // namespace fixtures
