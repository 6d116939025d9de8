#pragma once

#include <string>
#include <vector>

namespace xsltevo {

// A bundled input document plus the stylesheet that defines its target.
// Targets are produced by applying the oracle, so every pair is solvable
// with fitness (0, 0, ·) by construction.
struct CorpusPair {
    int number = 0;
    std::string name;
    std::string input_xml;
    std::string oracle_xslt;
};

// Pairs of the named difficulty profile: "standard" (all seven, increasing
// difficulty), "easy" (1-4), "hard" (5-7).
std::vector<CorpusPair> corpus_pairs(const std::string& profile = "standard");

// The target document text for a pair (oracle applied to the input,
// serialized indented). Deterministic.
std::string corpus_target_xml(const CorpusPair& pair);

// Writes pair-<n>-input.xml, pair-<n>-target.xml and pair-<n>-oracle.xsl
// for every pair of the profile. Regeneration is byte-identical.
void write_corpus(const std::string& directory, const std::string& profile = "standard");

}  // namespace xsltevo
