#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "srl/group.hpp"
#include "srl/set.hpp"

namespace srl {

// Which of A and its complement a certificate speaks about.
enum class Side { set, complement };

const char* to_string(Side s);
SetIndicator side_of(const SetIndicator& A, Side side);

// N^i(x) = A^i - x, with A^1 = A and A^0 = G \ A
SetIndicator neighborhood(const SetIndicator& A, Index x, int i);
SetIndicator neighborhood(const SetIndicator& A, const GroupElement& x, int i);

// a_i + b_j in A  <=>  i <= j
struct OrderWitness {
  std::vector<GroupElement> a;
  std::vector<GroupElement> b;

  unsigned height() const { return static_cast<unsigned>(a.size()); }
  OrderWitness truncated(unsigned k) const;
};

bool verify_order_witness(const SetIndicator& A, const OrderWitness& w);

enum class SearchStatus { found, none_found, budget_exhausted };
const char* to_string(SearchStatus s);

struct SearchOptions {
  std::uint64_t effort = 100'000'000;  // search-node budget
  unsigned threads = 1;
};

struct OrderSearchResult {
  SearchStatus status = SearchStatus::none_found;
  std::optional<OrderWitness> witness;
  std::uint64_t nodes = 0;
};

// Depth-first search placing a_1, b_1, a_2, b_2, ... with candidate sets
// pruned by every placed constraint. a_1 is fixed to 0: witnesses are
// invariant under (a_i, b_j) -> (a_i + g, b_j - g). "none_found" is only
// reported after the pruned tree has been explored completely.
OrderSearchResult find_order_witness(const SetIndicator& A, unsigned k, const SearchOptions& opts = {});

struct StabilityNumber {
  // exact: least k with no k-order witness. Otherwise the largest k for
  // which a witness was found (a lower bound: A is not value-stable).
  unsigned value = 0;
  bool exact = false;
  std::optional<OrderWitness> witness;  // witness of height `value` (or value-1 when exact)
  std::uint64_t nodes = 0;
};

StabilityNumber stability_number(const SetIndicator& A, unsigned k_max, const SearchOptions& opts = {});

// Binary strings over {0,1}; the empty string is the root.
struct TreeWitness {
  unsigned height = 0;
  std::map<std::string, GroupElement> leaves;  // a_eta, |eta| = height
  std::map<std::string, GroupElement> nodes;   // b_rho, |rho| < height
};

// Every string of length exactly len, in lexicographic order.
std::vector<std::string> binary_strings(unsigned len);

// For all rho strictly below eta: a_eta + b_rho in A <=> rho^1 is a prefix of eta.
// Throws Error when either map is incomplete for the declared height.
bool verify_tree_witness(const SetIndicator& A, const TreeWitness& tw);

// G = union over g of (side - g)
struct CoverCertificate {
  Side side = Side::set;
  std::vector<GroupElement> translates;
};

bool verify_cover(const SetIndicator& A, const CoverCertificate& c);

struct CoverOrWitness {
  std::variant<CoverCertificate, OrderWitness> certificate;
  Side witness_side = Side::set;  // meaningful when certificate holds an OrderWitness

  bool is_cover() const { return std::holds_alternative<CoverCertificate>(certificate); }
};

// Builds a_0 = b_0 = 0, then a_{l+1}, b_{l+1} as the least elements outside
// the current unions of translates, stopping as soon as 2k+1 or fewer
// translates of A or of G \ A cover G. After 2k+1 stages without a cover the
// diagonal pigeonhole yields a k-order witness for A or a (k+1)-order
// witness for G \ A. The result is verified before it is returned.
CoverOrWitness cover_or_witness(const SetIndicator& A, unsigned k);

}  // namespace srl
