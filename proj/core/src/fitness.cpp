#include "xsltevo/fitness.hpp"

#include <algorithm>

#include "xsltevo/genome.hpp"

namespace xsltevo {

std::pair<int, int> line_diff(std::span<const std::string> obtained,
                              std::span<const std::string> target) {
    size_t n = obtained.size(), m = target.size();
    // Two-row LCS table over exact line equality.
    std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
    for (size_t i = 1; i <= n; i++) {
        for (size_t j = 1; j <= m; j++) {
            if (obtained[i - 1] == target[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    int lcs = prev[m];
    return {int(n) - lcs, int(m) - lcs};
}

FitnessVector evaluate(const Genome& genome, const Document& input,
                       const std::vector<std::string>& target_lines,
                       const TransformLimits& limits) {
    try {
        Document output = transform(genome.sheet, input, limits);
        std::vector<std::string> obtained = canonical_lines(output, genome.sheet.line_tag);
        auto [deletions, additions] = line_diff(obtained, target_lines);
        return FitnessVector{deletions, additions, genome_size(genome)};
    } catch (const TransformOverflow&) {
        return FitnessVector::worst();
    }
}

}  // namespace xsltevo
