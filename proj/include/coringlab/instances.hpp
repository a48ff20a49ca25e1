#pragma once

#include "coringlab/comatrix.hpp"

namespace coringlab::inst {

/// Cross-check target for the galois suite, beyond the always-run self check.
enum class GaloisTarget { None, Trivial, Sweedler };

struct Instance {
    std::string name;
    u32 p = 2;
    FirmBimoduleSystem sys;
    GaloisTarget target = GaloisTarget::None;
};

/// Generator budget: the colimit carriers B and P may not exceed this many
/// total dimensions unless a caller raises the cap.
inline constexpr int kDefaultDimCap = 64;

/// A = F_p[x]/(x^2), B = F_p, P = A: Sweedler's canonical coring data.
Instance sweedler(u32 p = 2, int cap = kDefaultDimCap);

/// B = F_p x M_2(F_p) with central orthogonal local units, P = F_p + F_p^2.
Instance block(u32 p = 2, int cap = kDefaultDimCap);

/// Corner chain M_1 c M_2 c ... c M_k acting on column spaces F_p^i.
Instance corner(int k, u32 p = 2, int cap = kDefaultDimCap);

/// Corner chain flagged as the truncation of the infinite chain; memoized.
Instance lazy_corner(int bound, u32 p = 2, int cap = kDefaultDimCap);

/// Direct-sum family: B = prod_t M_{d_t}(F_p), P = sum_t F_p^{d_t}.
Instance kgt_directsum(const std::vector<int>& parts, u32 p = 2, int cap = kDefaultDimCap);

/// Engineered flat-but-not-faithfully-flat variant: the block algebra with the
/// second module summand zeroed (P = F_p + 0).
Instance block_with_zero_part(u32 p = 2);

/// Dispatch by name: "sweedler" | "block" | "corner <k>" | "lazy-corner <n>" |
/// "kgt-directsum <d1> <d2> ..."
Instance generate(const std::string& name, const std::vector<int>& params, u32 p = 2,
                  int cap = kDefaultDimCap);

}  // namespace coringlab::inst
