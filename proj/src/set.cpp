#include "srl/set.hpp"

#include <algorithm>

#include "srl/random.hpp"

namespace srl {

SetIndicator::SetIndicator(const GroupContext& ctx) : ctx_(ctx) {
  ctx.require_dense();
  words_.assign((ctx.order() + 63) / 64, 0);
}

SetIndicator SetIndicator::full(const GroupContext& ctx) { return SetIndicator(ctx).complement(); }

SetIndicator SetIndicator::from_indices(const GroupContext& ctx, std::span<const Index> members) {
  SetIndicator s(ctx);
  for (Index x : members) {
    ctx.require_index(x);
    s.insert(x);
  }
  return s;
}

SetIndicator SetIndicator::from_elements(const GroupContext& ctx, std::span<const GroupElement> members) {
  SetIndicator s(ctx);
  for (const auto& x : members) {
    require_same(ctx, x.context());
    s.insert(x.index());
  }
  return s;
}

SetIndicator SetIndicator::of_subspace(const Subspace& H) {
  auto m = H.member_indices();
  return from_indices(H.context(), m);
}

bool SetIndicator::contains(const GroupElement& x) const {
  require_same(ctx_, x.context());
  return contains(x.index());
}

void SetIndicator::insert(Index x) {
  auto& w = words_[x >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (!(w & bit)) {
    w |= bit;
    ++size_;
  }
}

void SetIndicator::erase(Index x) {
  auto& w = words_[x >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (w & bit) {
    w &= ~bit;
    --size_;
  }
}

void SetIndicator::recount() {
  size_ = 0;
  for (auto w : words_) size_ += static_cast<Index>(std::popcount(w));
}

void SetIndicator::mask_tail() {
  const Index rem = ctx_.order() & 63;
  if (rem) words_.back() &= (std::uint64_t{1} << rem) - 1;
}

SetIndicator SetIndicator::complement() const {
  SetIndicator s = *this;
  for (auto& w : s.words_) w = ~w;
  s.mask_tail();
  s.size_ = ctx_.order() - size_;
  return s;
}

SetIndicator SetIndicator::translate(Index g) const {
  ctx_.require_index(g);
  SetIndicator s(ctx_);
  s.source_ = source_;
  // (A + g)[y] = A[y - g]
  for_each_shift(ctx_, ctx_.neg(g), [&](Index y, Index z) {
    if (contains(z)) s.words_[y >> 6] |= std::uint64_t{1} << (y & 63);
  });
  s.size_ = size_;
  return s;
}

SetIndicator SetIndicator::translate(const GroupElement& g) const {
  require_same(ctx_, g.context());
  return translate(g.index());
}

SetIndicator& SetIndicator::operator&=(const SetIndicator& o) {
  require_same(ctx_, o.ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  recount();
  return *this;
}

SetIndicator& SetIndicator::operator|=(const SetIndicator& o) {
  require_same(ctx_, o.ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  recount();
  return *this;
}

SetIndicator& SetIndicator::operator^=(const SetIndicator& o) {
  require_same(ctx_, o.ctx_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  recount();
  return *this;
}

std::vector<Index> SetIndicator::elements() const {
  std::vector<Index> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w) {
      out.push_back(i * 64 + static_cast<Index>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

Index SetIndicator::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return i * 64 + static_cast<Index>(std::countr_zero(words_[i]));
  return ctx_.order();
}

SetIndicator sumset(const SetIndicator& A, const SetIndicator& B) {
  require_same(A.context(), B.context());
  const auto& ctx = A.context();
  SetIndicator out(ctx);
  if (A.empty() || B.empty()) return out;
  const SetIndicator& small = A.size() <= B.size() ? A : B;
  const SetIndicator& large = A.size() <= B.size() ? B : A;
  if (small.size() * large.size() <= ctx.order() * 4) {
    const auto le = large.elements();
    for (Index a : small.elements())
      for (Index b : le) out.insert(ctx.add(a, b));
    return out;
  }
  for (Index a : small.elements()) {
    out |= large.translate(a);
    if (out.size() == ctx.order()) break;
  }
  return out;
}

SetIndicator random_set(const GroupContext& ctx, double rate, std::uint64_t seed) {
  if (!(rate >= 0 && rate <= 1)) throw Error("rate must lie in [0, 1]");
  SetIndicator s(ctx);
  Rng rng(seed);
  for (Index x = 0; x < ctx.order(); ++x)
    if (rng.bernoulli(rate)) s.insert(x);
  s.set_source("random(rate=" + std::to_string(rate) + ", seed=" + std::to_string(seed) + ")");
  return s;
}

Index count_on_coset(const SetIndicator& A, const Subspace& H, Index y) {
  require_same(A.context(), H.context());
  const auto& ctx = A.context();
  Index c = 0;
  for (Index h : H.member_indices())
    if (A.contains(ctx.add(y, h))) ++c;
  return c;
}

}  // namespace srl
