#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "srl/group.hpp"
#include "srl/set.hpp"
#include "srl/stability.hpp"

namespace srl {

// "A is k-stable". exhaustive = false marks claims that can only be
// spot-checked by budgeted search at this size.
struct ClaimStable {
  unsigned k = 2;
  bool exhaustive = true;
};

struct ClaimStabilityNumber {
  unsigned value = 2;
};

struct ClaimOrderWitness {
  Side side = Side::set;
  OrderWitness witness;
};

struct ClaimCover {
  CoverCertificate cover;
};

// sup over t outside V^perp of |f^0_{V,A}(t)| >= floor, for every subspace V
// of positive dimension
struct ClaimUniformityFloor {
  double floor = 0;
};

using Claim = std::variant<ClaimStable, ClaimStabilityNumber, ClaimOrderWitness, ClaimCover, ClaimUniformityFloor>;

std::string describe(const Claim& c);

struct FixtureSpec {
  std::string name;
  unsigned p = 2;
  unsigned n = 1;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> extras;
  std::vector<Claim> claims;
};

struct Fixture {
  SetIndicator set;
  FixtureSpec spec;
};

// name: subgroup, basis_set, pairsum_complement, green_sanders
Fixture gen_example(const std::string& name, unsigned p, unsigned n, std::uint64_t seed = 0);

// Subspace with exactly `codim` random independent annihilator rows.
Subspace random_subspace(const GroupContext& ctx, unsigned codim, std::uint64_t seed);

SetIndicator gen_union_of_cosets(const Subspace& H, Index count, std::uint64_t seed);

struct NoisySet {
  SetIndicator set;
  Index changed = 0;  // |A Δ result|
};

NoisySet gen_noisy(const SetIndicator& A, double rate, std::uint64_t seed);

struct ClaimCheckOptions {
  std::uint64_t effort = 200'000'000;
  unsigned threads = 1;
  unsigned floor_samples = 50;  // random subspaces tried for a uniformity floor
  std::uint64_t seed = 1;
};

struct ClaimResult {
  bool passed = false;
  bool conclusive = true;  // false when a search budget ran out
  std::string detail;
};

ClaimResult check_claim(const SetIndicator& A, const Claim& c, const ClaimCheckOptions& opts = {});

}  // namespace srl
