#pragma once

// Paired frequency / layer-scale sequences {h_j}, {k_j}. Growth contract:
//   h_{j+1} >= 4 h_j,   k_{j+1} >= 2 k_j,   h_j >= w(j) k_j
// with w(j) = j for the Standard variant and w(j) = j^3 for Strong.
// Indices are 1-based in comments and reports, matching the usual notation.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace emlab {

enum class LacunaryVariant { Standard, Strong };

std::string to_string(LacunaryVariant v);

struct LacunaryPair {
    std::vector<std::int64_t> h;
    std::vector<std::int64_t> k;
    LacunaryVariant variant = LacunaryVariant::Standard;

    int size() const { return static_cast<int>(h.size()); }
    // 1-based accessors matching the notation h_j, k_j.
    std::int64_t h_at(int j) const { return h.at(static_cast<std::size_t>(j - 1)); }
    std::int64_t k_at(int j) const { return k.at(static_cast<std::size_t>(j - 1)); }
};

// Minimal deterministic pair grown by the recursion
//   k_1 = 2, k_{j+1} = 2 k_j;  h_1 = max(4, w(1) k_1),
//   h_{j+1} = max(4 h_j, w(j+1) k_{j+1}).
// j_max is capped at 30 so every frequency stays well inside int64 range.
LacunaryPair make_lacunary(int j_max, LacunaryVariant variant);

struct LacunaryViolation {
    int index;              // 1-based j of the failing inequality
    std::string condition;  // the inequality, spelled out with values
};

struct LacunaryReport {
    std::vector<LacunaryViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks every growth inequality for the declared variant; never throws.
LacunaryReport validate_lacunary(const LacunaryPair& pair);

// Plain-text round trip:
//   h: 4 16 64
//   k: 2 4 8
//   variant: standard
void save_lacunary(const LacunaryPair& pair, std::ostream& out);
LacunaryPair load_lacunary(std::istream& in);
void save_lacunary_file(const LacunaryPair& pair, const std::string& path);
LacunaryPair load_lacunary_file(const std::string& path);

}  // namespace emlab
