#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srl/group.hpp"

namespace srl {

// Dense 0/1 indicator of a subset A of F_p^n, one bit per element in codec order.
class SetIndicator {
 public:
  SetIndicator() = default;
  explicit SetIndicator(const GroupContext& ctx);

  static SetIndicator full(const GroupContext& ctx);
  static SetIndicator from_indices(const GroupContext& ctx, std::span<const Index> members);
  static SetIndicator from_elements(const GroupContext& ctx, std::span<const GroupElement> members);
  template <class Pred>
  static SetIndicator from_predicate(const GroupContext& ctx, Pred&& pred) {
    SetIndicator s(ctx);
    for (Index x = 0; x < ctx.order(); ++x)
      if (pred(x)) s.insert(x);
    return s;
  }
  static SetIndicator of_subspace(const Subspace& H);

  const GroupContext& context() const { return ctx_; }
  Index size() const { return size_; }
  double density() const { return static_cast<double>(size_) / static_cast<double>(ctx_.order()); }
  bool empty() const { return size_ == 0; }

  bool contains(Index x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  bool contains(const GroupElement& x) const;
  void insert(Index x);
  void erase(Index x);

  // Provenance: generator name and parameters, carried into certificates.
  const std::string& source() const { return source_; }
  void set_source(std::string s) { source_ = std::move(s); }

  SetIndicator complement() const;
  // A + g
  SetIndicator translate(Index g) const;
  SetIndicator translate(const GroupElement& g) const;

  SetIndicator& operator&=(const SetIndicator& o);
  SetIndicator& operator|=(const SetIndicator& o);
  SetIndicator& operator^=(const SetIndicator& o);
  friend SetIndicator operator&(SetIndicator a, const SetIndicator& b) { return a &= b; }
  friend SetIndicator operator|(SetIndicator a, const SetIndicator& b) { return a |= b; }
  friend SetIndicator operator^(SetIndicator a, const SetIndicator& b) { return a ^= b; }
  friend bool operator==(const SetIndicator& a, const SetIndicator& b) {
    return a.ctx_ == b.ctx_ && a.words_ == b.words_;
  }

  std::vector<Index> elements() const;
  std::span<const std::uint64_t> words() const { return words_; }
  // Smallest member, or order() when empty.
  Index first() const;

 private:
  void recount();
  void mask_tail();

  GroupContext ctx_;
  std::vector<std::uint64_t> words_;
  Index size_ = 0;
  std::string source_;
};

// {a + b : a in A, b in B}
SetIndicator sumset(const SetIndicator& A, const SetIndicator& B);

// Each element of G independently with probability rate.
SetIndicator random_set(const GroupContext& ctx, double rate, std::uint64_t seed);

// |(A - y) ∩ H|, the count of A on the coset y + H
Index count_on_coset(const SetIndicator& A, const Subspace& H, Index y);

}  // namespace srl
