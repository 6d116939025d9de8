#pragma once

#include <compare>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xsltevo/xml.hpp"
#include "xsltevo/xslt.hpp"

namespace xsltevo {

struct Genome;

// Lexicographically minimized: deletions first, then additions, then genome
// length. A genome is a solution iff deletions and additions are both zero.
struct FitnessVector {
    int deletions = 0;
    int additions = 0;
    int length = 0;

    auto operator<=>(const FitnessVector&) const = default;

    bool solution() const { return deletions == 0 && additions == 0; }

    // Sentinel strictly dominated by every real vector; stands in for
    // transform overflow so selection stays total.
    static FitnessVector worst() {
        int m = std::numeric_limits<int>::max();
        return FitnessVector{m, m, m};
    }
    bool is_worst() const { return *this == worst(); }
};

inline std::strong_ordering compare(const FitnessVector& a, const FitnessVector& b) {
    return a <=> b;
}

// (deletions, additions) from a longest common subsequence of the two line
// lists: deletions = |obtained| - LCS, additions = |target| - LCS.
std::pair<int, int> line_diff(std::span<const std::string> obtained,
                              std::span<const std::string> target);

FitnessVector evaluate(const Genome& genome, const Document& input,
                       const std::vector<std::string>& target_lines,
                       const TransformLimits& limits);

}  // namespace xsltevo
