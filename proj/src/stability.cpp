#include "srl/stability.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

namespace srl {

const char* to_string(Side s) { return s == Side::set ? "A" : "not-A"; }

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none_found: return "none-found";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

SetIndicator side_of(const SetIndicator& A, Side side) { return side == Side::set ? A : A.complement(); }

SetIndicator neighborhood(const SetIndicator& A, Index x, int i) {
  if (i != 0 && i != 1) throw Error("neighborhood side must be 0 or 1");
  const auto& ctx = A.context();
  return side_of(A, i == 1 ? Side::set : Side::complement).translate(ctx.neg(x));
}

SetIndicator neighborhood(const SetIndicator& A, const GroupElement& x, int i) {
  require_same(A.context(), x.context());
  return neighborhood(A, x.index(), i);
}

OrderWitness OrderWitness::truncated(unsigned k) const {
  if (k > height()) throw Error("cannot truncate a witness to a larger height");
  return {{a.begin(), a.begin() + k}, {b.begin(), b.begin() + k}};
}

bool verify_order_witness(const SetIndicator& A, const OrderWitness& w) {
  if (w.a.size() != w.b.size()) return false;
  for (std::size_t i = 0; i < w.a.size(); ++i)
    for (std::size_t j = 0; j < w.b.size(); ++j) {
      require_same(A.context(), w.a[i].context());
      require_same(A.context(), w.b[j].context());
      if (A.contains((w.a[i] + w.b[j]).index()) != (i <= j)) return false;
    }
  return true;
}

namespace {

using Word = std::uint64_t;

Word xor_permute(Word w, unsigned c) {
  static constexpr Word masks[6] = {0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
                                    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL};
  for (unsigned k = 0; k < 6; ++k)
    if (c & (1u << k)) {
      const unsigned s = 1u << k;
      w = ((w & masks[k]) << s) | ((w >> s) & masks[k]);
    }
  return w;
}

// Bit arrays of A - x ("in") and (G \ A) - x ("out"), built lazily and shared
// between workers.
class TranslateTable {
 public:
  explicit TranslateTable(const SetIndicator& A)
      : A_(A), ctx_(A.context()), words_(A.words().size()), complement_(A.complement()) {
    const Index order = ctx_.order();
    cached_ = order * words_ * sizeof(Word) * 2 <= (Index{1} << 28);
    if (cached_) {
      storage_.assign(order * words_ * 2, 0);
      flags_ = std::make_unique<std::once_flag[]>(order);
    }
  }

  std::size_t words() const { return words_; }

  // Returns pointers to both translates of x; scratch holds 2*words when uncached.
  std::pair<const Word*, const Word*> get(Index x, Word* scratch) {
    if (!cached_) {
      build(x, scratch, scratch + words_);
      return {scratch, scratch + words_};
    }
    Word* slot = storage_.data() + x * words_ * 2;
    std::call_once(flags_[x], [&] { build(x, slot, slot + words_); });
    return {slot, slot + words_};
  }

 private:
  void build(Index x, Word* in, Word* out) const {
    auto fill = [&](const SetIndicator& S, Word* dst) {
      const auto src = S.words();
      if (ctx_.p() == 2) {
        const Index hi = x >> 6;
        const unsigned lo = static_cast<unsigned>(x & 63);
        for (std::size_t w = 0; w < words_; ++w) dst[w] = xor_permute(src[w ^ hi], lo);
        return;
      }
      std::fill(dst, dst + words_, 0);
      for_each_shift(ctx_, x, [&](Index y, Index z) {
        if (S.contains(z)) dst[y >> 6] |= Word{1} << (y & 63);
      });
    };
    fill(A_, in);
    fill(complement_, out);
  }

  const SetIndicator& A_;
  GroupContext ctx_;
  std::size_t words_;
  SetIndicator complement_;
  bool cached_ = false;
  std::vector<Word> storage_;
  std::unique_ptr<std::once_flag[]> flags_;
};

struct SharedState {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> exhausted{false};
  std::atomic<std::size_t> best_branch{std::numeric_limits<std::size_t>::max()};
  std::uint64_t effort = 0;
};

class Searcher {
 public:
  Searcher(TranslateTable& table, SharedState& shared, unsigned k)
      : table_(table), shared_(shared), k_(k), W_(table.words()) {
    // two candidate sets per depth plus translate scratch
    levels_.assign((2 * k + 4) * W_, 0);
    scratch_.assign(2 * W_ * (2 * k + 4), 0);
    a_.assign(k + 1, 0);
    b_.assign(k + 1, 0);
  }

  // Explores the subtree with a_1 = 0 and b_1 = y. Returns true on a witness.
  bool run_branch(Index y, std::size_t branch) {
    branch_ = branch;
    a_[1] = 0;
    b_[1] = y;
    if (k_ == 1) return true;
    const Word* candB = table_.get(0, scratch_at(0)).first;  // A - 0
    Word* newA = level(0);
    const Word* out = table_.get(y, scratch_at(1)).second;
    const Word* full = nullptr;
    (void)full;
    std::size_t count = 0;
    for (std::size_t w = 0; w < W_; ++w) {
      newA[w] = out[w];
      count += static_cast<std::size_t>(std::popcount(newA[w]));
    }
    if (count < k_ - 1) return false;
    // keep candB in its own level slot; scratch may be reused for translates
    Word* bslot = level(1);
    std::copy(candB, candB + W_, bslot);
    return place_a(2, newA, bslot, 2);
  }

  std::vector<Index> a() const { return {a_.begin() + 1, a_.end()}; }
  std::vector<Index> b() const { return {b_.begin() + 1, b_.end()}; }

 private:
  Word* level(std::size_t i) { return levels_.data() + i * W_; }
  Word* scratch_at(std::size_t depth) { return scratch_.data() + depth * 2 * W_; }

  bool stop() {
    const auto n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > shared_.effort) {
      shared_.exhausted.store(true, std::memory_order_relaxed);
      return true;
    }
    if (shared_.exhausted.load(std::memory_order_relaxed)) return true;
    return shared_.best_branch.load(std::memory_order_relaxed) < branch_;
  }

  template <class Fn>
  bool for_each_bit(const Word* bits, Fn&& fn) {
    for (std::size_t w = 0; w < W_; ++w) {
      Word m = bits[w];
      while (m) {
        const Index x = w * 64 + static_cast<Index>(std::countr_zero(m));
        m &= m - 1;
        if (stop()) return false;
        if (fn(x)) return true;
      }
    }
    return false;
  }

  // a_i from candA; candB_prev is the set b_{i-1} was drawn from.
  bool place_a(unsigned i, const Word* candA, const Word* candB_prev, std::size_t depth) {
    Word* newB = level(depth);
    return for_each_bit(candA, [&](Index x) {
      a_[i] = x;
      const Word* in = table_.get(x, scratch_at(depth)).first;
      std::size_t count = 0;
      for (std::size_t w = 0; w < W_; ++w) {
        newB[w] = candB_prev[w] & in[w];
        count += static_cast<std::size_t>(std::popcount(newB[w]));
      }
      // b_i, ..., b_k are distinct members of newB
      if (count < k_ - i + 1) return false;
      return place_b(i, newB, candA, depth + 1);
    });
  }

  // b_i from candB; candA_prev is the set a_i was drawn from.
  bool place_b(unsigned i, const Word* candB, const Word* candA_prev, std::size_t depth) {
    Word* newA = level(depth);
    return for_each_bit(candB, [&](Index y) {
      b_[i] = y;
      if (i == k_) return true;
      const Word* out = table_.get(y, scratch_at(depth)).second;
      std::size_t count = 0;
      for (std::size_t w = 0; w < W_; ++w) {
        newA[w] = candA_prev[w] & out[w];
        count += static_cast<std::size_t>(std::popcount(newA[w]));
      }
      if (count < k_ - i) return false;
      return place_a(i + 1, newA, candB, depth + 1);
    });
  }

  TranslateTable& table_;
  SharedState& shared_;
  unsigned k_;
  std::size_t W_;
  std::size_t branch_ = 0;
  std::vector<Word> levels_;
  std::vector<Word> scratch_;
  std::vector<Index> a_, b_;
};

}  // namespace

OrderSearchResult find_order_witness(const SetIndicator& A, unsigned k, const SearchOptions& opts) {
  if (k < 1) throw Error("order-property height must be at least 1");
  const auto& ctx = A.context();
  OrderSearchResult result;
  const auto branches = A.elements();  // b_1 ranges over A once a_1 = 0
  if (branches.empty()) return result;

  TranslateTable table(A);
  SharedState shared;
  shared.effort = opts.effort;

  std::mutex mu;
  std::vector<Index> best_a, best_b;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    Searcher s(table, shared, k);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= branches.size()) return;
      if (shared.exhausted.load() || shared.best_branch.load() < i) return;
      if (s.run_branch(branches[i], i)) {
        std::lock_guard lock(mu);
        if (i < shared.best_branch.load()) {
          shared.best_branch.store(i);
          best_a = s.a();
          best_b = s.b();
        }
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(branches.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  result.nodes = std::min(shared.nodes.load(), shared.effort);
  if (!best_a.empty()) {
    result.status = SearchStatus::found;
    OrderWitness w;
    for (Index x : best_a) w.a.push_back(decode(ctx, x));
    for (Index y : best_b) w.b.push_back(decode(ctx, y));
    if (!verify_order_witness(A, w)) throw InternalInconsistency("order search produced an invalid witness");
    result.witness = std::move(w);
  } else if (shared.exhausted.load()) {
    result.status = SearchStatus::budget_exhausted;
  } else {
    result.status = SearchStatus::none_found;
  }
  return result;
}

StabilityNumber stability_number(const SetIndicator& A, unsigned k_max, const SearchOptions& opts) {
  if (k_max < 1) throw Error("k_max must be at least 1");
  StabilityNumber out;
  for (unsigned k = 1; k <= k_max; ++k) {
    auto r = find_order_witness(A, k, opts);
    out.nodes += r.nodes;
    if (r.status == SearchStatus::none_found) {
      out.value = k;
      out.exact = true;
      return out;
    }
    if (r.status == SearchStatus::budget_exhausted) break;
    out.value = k;
    out.witness = std::move(r.witness);
  }
  out.exact = false;
  return out;
}

std::vector<std::string> binary_strings(unsigned len) {
  std::vector<std::string> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
    std::string s(len, '0');
    for (unsigned i = 0; i < len; ++i)
      if (v >> (len - 1 - i) & 1) s[i] = '1';
    out.push_back(std::move(s));
  }
  return out;
}

bool verify_tree_witness(const SetIndicator& A, const TreeWitness& tw) {
  for (const auto& eta : binary_strings(tw.height))
    if (!tw.leaves.contains(eta)) throw Error("tree witness is missing leaf a_" + eta);
  for (unsigned len = 0; len < tw.height; ++len)
    for (const auto& rho : binary_strings(len))
      if (!tw.nodes.contains(rho)) throw Error("tree witness is missing node b_" + (rho.empty() ? "<>" : rho));
  for (const auto& [eta, a] : tw.leaves) {
    require_same(A.context(), a.context());
    for (unsigned s = 0; s < tw.height; ++s) {
      const auto& b = tw.nodes.at(eta.substr(0, s));
      // rho = eta|s, so rho^1 is a prefix of eta iff eta(s+1) = 1
      if (A.contains((a + b).index()) != (eta[s] == '1')) return false;
    }
  }
  return true;
}

bool verify_cover(const SetIndicator& A, const CoverCertificate& c) {
  const auto S = side_of(A, c.side);
  SetIndicator u(A.context());
  for (const auto& g : c.translates) {
    require_same(A.context(), g.context());
    u |= S.translate(-g);
  }
  return u.size() == A.context().order();
}

CoverOrWitness cover_or_witness(const SetIndicator& A, unsigned k) {
  if (k < 1) throw Error("cover_or_witness needs k >= 1");
  const auto& ctx = A.context();
  const auto notA = A.complement();
  std::vector<Index> a{0}, b{0};
  SetIndicator unionA = A;     // union of A - a_i
  SetIndicator unionNot = notA;  // union of notA - b_i

  auto to_elements = [&](const std::vector<Index>& v) {
    std::vector<GroupElement> out;
    for (Index x : v) out.push_back(decode(ctx, x));
    return out;
  };
  auto finish = [&](CoverOrWitness r) {
    bool ok;
    if (r.is_cover())
      ok = verify_cover(A, std::get<CoverCertificate>(r.certificate));
    else
      ok = verify_order_witness(side_of(A, r.witness_side), std::get<OrderWitness>(r.certificate));
    if (!ok) throw InternalInconsistency("cover_or_witness: certificate failed verification");
    return r;
  };

  for (unsigned l = 0;; ++l) {
    if (unionA.size() == ctx.order()) return finish({CoverCertificate{Side::set, to_elements(a)}});
    if (unionNot.size() == ctx.order()) return finish({CoverCertificate{Side::complement, to_elements(b)}});
    if (l == 2 * k) break;
    const Index nb = unionA.complement().first();
    const Index na = unionNot.complement().first();
    b.push_back(nb);
    a.push_back(na);
    unionA |= A.translate(ctx.neg(na));
    unionNot |= notA.translate(ctx.neg(nb));
  }

  // a_i + b_j not in A for i < j, in A for j < i
  std::vector<std::size_t> in_diag, out_diag;
  for (std::size_t i = 0; i < a.size(); ++i)
    (A.contains(ctx.add(a[i], b[i])) ? in_diag : out_diag).push_back(i);

  OrderWitness w;
  CoverOrWitness r{OrderWitness{}, Side::set};
  if (in_diag.size() >= k) {
    // a_i + b_j in A iff j <= i; reversing the order gives the standard form
    for (std::size_t m = k; m-- > 0;) {
      w.a.push_back(decode(ctx, a[in_diag[m]]));
      w.b.push_back(decode(ctx, b[in_diag[m]]));
    }
    r.witness_side = Side::set;
  } else {
    if (out_diag.size() < k + 1) throw InternalInconsistency("cover_or_witness: pigeonhole count failed");
    for (std::size_t m = 0; m < k + 1; ++m) {
      w.a.push_back(decode(ctx, a[out_diag[m]]));
      w.b.push_back(decode(ctx, b[out_diag[m]]));
    }
    r.witness_side = Side::complement;
  }
  r.certificate = std::move(w);
  return finish(std::move(r));
}

}  // namespace srl
