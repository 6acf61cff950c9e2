#include "srl/group.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace srl {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

GroupContext GroupContext::make(unsigned p, unsigned n) {
  if (!is_prime(p) || p > kMaxPrime)
    throw Error("p must be a prime in [2, " + std::to_string(kMaxPrime) + "], got " + std::to_string(p));
  if (n < 1) throw Error("n must be at least 1");
  Index order = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (order > std::numeric_limits<Index>::max() / 2 / p) throw Error("p^n overflows the index type");
    order *= p;
  }
  return GroupContext(p, n, order);
}

Index GroupContext::power(unsigned i) const {
  Index r = 1;
  for (unsigned j = 0; j < i; ++j) r *= p_;
  return r;
}

void GroupContext::require_dense() const {
  if (!is_dense())
    throw Error("p^n = " + std::to_string(order_) + " exceeds the dense cap 2^26");
}

void GroupContext::require_index(Index x) const {
  if (x >= order_)
    throw Error("index " + std::to_string(x) + " out of range for p^n = " + std::to_string(order_));
}

Index GroupContext::add(Index x, Index y) const {
  if (p_ == 2) return x ^ y;
  Index r = 0, pw = 1;
  for (unsigned i = 0; i < n_; ++i) {
    r += ((x % p_ + y % p_) % p_) * pw;
    x /= p_;
    y /= p_;
    pw *= p_;
  }
  return r;
}

Index GroupContext::neg(Index x) const {
  if (p_ == 2) return x;
  Index r = 0, pw = 1;
  for (unsigned i = 0; i < n_; ++i) {
    r += ((p_ - x % p_) % p_) * pw;
    x /= p_;
    pw *= p_;
  }
  return r;
}

Index GroupContext::scale(unsigned c, Index x) const {
  c %= p_;
  Index r = 0, pw = 1;
  for (unsigned i = 0; i < n_; ++i) {
    r += ((c * (x % p_)) % p_) * pw;
    x /= p_;
    pw *= p_;
  }
  return r;
}

unsigned GroupContext::dot(Index x, Index t) const {
  unsigned s = 0;
  for (unsigned i = 0; i < n_; ++i) {
    s = (s + static_cast<unsigned>((x % p_) * (t % p_))) % p_;
    x /= p_;
    t /= p_;
  }
  return s;
}

Index GroupContext::unit(unsigned i) const {
  if (i < 1 || i > n_) throw Error("coordinate " + std::to_string(i) + " out of range [1, n]");
  return power(i - 1);
}

void require_same(const GroupContext& a, const GroupContext& b) {
  if (!(a == b))
    throw Error("context mismatch: F_" + std::to_string(a.p()) + "^" + std::to_string(a.n()) + " vs F_" +
                std::to_string(b.p()) + "^" + std::to_string(b.n()));
}

void for_each_shift(const GroupContext& ctx, Index shift, const std::function<void(Index, Index)>& fn) {
  const unsigned p = ctx.p(), n = ctx.n();
  if (p == 2) {
    for (Index y = 0; y < ctx.order(); ++y) fn(y, y ^ shift);
    return;
  }
  std::vector<unsigned> ydig(n, 0), sdig(n);
  std::vector<Index> pw(n);
  Index s = shift, w = 1;
  for (unsigned i = 0; i < n; ++i) {
    sdig[i] = static_cast<unsigned>(s % p);
    s /= p;
    pw[i] = w;
    w *= p;
  }
  Index z = shift;
  for (Index y = 0;; ++y) {
    fn(y, z);
    if (y + 1 == ctx.order()) break;
    // odometer increment of y, tracking z = y + shift digitwise
    for (unsigned i = 0; i < n; ++i) {
      const unsigned before = (ydig[i] + sdig[i]) % p;
      if (ydig[i] + 1 < p) {
        ++ydig[i];
        const unsigned after = (ydig[i] + sdig[i]) % p;
        z = z - before * pw[i] + after * pw[i];
        break;
      }
      ydig[i] = 0;
      z = z - before * pw[i] + sdig[i] * pw[i];
    }
  }
}

template <class Tag>
Vector<Tag>::Vector(const GroupContext& ctx, std::vector<std::uint8_t> digits) : ctx_(ctx), digits_(std::move(digits)) {
  if (digits_.size() != ctx.n())
    throw Error("vector has " + std::to_string(digits_.size()) + " digits, context needs " + std::to_string(ctx.n()));
  for (auto d : digits_)
    if (d >= ctx.p()) throw Error("digit " + std::to_string(d) + " is not a residue mod " + std::to_string(ctx.p()));
}

template <class Tag>
Vector<Tag> Vector<Tag>::from_index(const GroupContext& ctx, Index index) {
  ctx.require_index(index);
  std::vector<std::uint8_t> d(ctx.n());
  for (unsigned i = 0; i < ctx.n(); ++i) {
    d[i] = static_cast<std::uint8_t>(index % ctx.p());
    index /= ctx.p();
  }
  return Vector(ctx, std::move(d));
}

template <class Tag>
Vector<Tag> Vector<Tag>::unit(const GroupContext& ctx, unsigned coordinate) {
  return from_index(ctx, ctx.unit(coordinate));
}

template <class Tag>
Index Vector<Tag>::index() const {
  Index r = 0;
  for (std::size_t i = digits_.size(); i-- > 0;) r = r * ctx_.p() + digits_[i];
  return r;
}

template <class Tag>
bool Vector<Tag>::is_zero() const {
  return std::all_of(digits_.begin(), digits_.end(), [](auto d) { return d == 0; });
}

template <class Tag>
Vector<Tag> Vector<Tag>::operator-() const {
  std::vector<std::uint8_t> out(digits_.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>((ctx_.p() - digits_[i]) % ctx_.p());
  return Vector(ctx_, std::move(out));
}

template <class Tag>
std::string Vector<Tag>::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(digits_[i]);
  }
  return s + ")";
}

template class Vector<detail::ElementTag>;
template class Vector<detail::FunctionalTag>;

Index encode(const GroupElement& x) { return x.index(); }

GroupElement decode(const GroupContext& ctx, Index index) { return GroupElement::from_index(ctx, index); }

unsigned dot(const GroupElement& x, const Functional& t) {
  require_same(x.context(), t.context());
  unsigned s = 0;
  const unsigned p = x.context().p();
  for (std::size_t i = 0; i < x.digits().size(); ++i) s = (s + x[i] * t[i]) % p;
  return s;
}

namespace {

unsigned inverse_mod(unsigned a, unsigned p) {
  // Fermat: a^(p-2)
  unsigned r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// In-place reduced row echelon form over GF(p); returns the pivot columns.
std::vector<unsigned> row_reduce(std::vector<std::vector<std::uint8_t>>& m, unsigned p, unsigned ncols) {
  std::vector<unsigned> pivots;
  std::size_t rank = 0;
  for (unsigned c = 0; c < ncols && rank < m.size(); ++c) {
    std::size_t r = rank;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[rank]);
    const unsigned inv = inverse_mod(m[rank][c], p);
    for (auto& v : m[rank]) v = static_cast<std::uint8_t>(v * inv % p);
    for (std::size_t o = 0; o < m.size(); ++o) {
      if (o == rank || m[o][c] == 0) continue;
      const unsigned f = m[o][c];
      for (unsigned j = 0; j < ncols; ++j)
        m[o][j] = static_cast<std::uint8_t>((m[o][j] + (p - f) * m[rank][j]) % p);
    }
    pivots.push_back(c);
    ++rank;
  }
  m.resize(rank);
  return pivots;
}

}  // namespace

Subspace Subspace::whole(const GroupContext& ctx) {
  Subspace h;
  h.ctx_ = ctx;
  return h;
}

Subspace Subspace::from_annihilator(const GroupContext& ctx, std::span<const Functional> rows) {
  Subspace h;
  h.ctx_ = ctx;
  for (const auto& r : rows) {
    require_same(ctx, r.context());
    h.rows_.push_back(r.digits());
  }
  h.pivots_ = row_reduce(h.rows_, ctx.p(), ctx.n());
  return h;
}

std::vector<Functional> Subspace::annihilator() const {
  std::vector<Functional> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.emplace_back(ctx_, r);
  return out;
}

bool Subspace::contains(const GroupElement& x) const {
  require_same(ctx_, x.context());
  return contains_index(x.index());
}

bool Subspace::contains_index(Index x) const { return coset_label(x) == 0; }

bool Subspace::annihilates(const Functional& t) const {
  require_same(ctx_, t.context());
  return annihilates_index(t.index());
}

bool Subspace::annihilates_index(Index t) const {
  const unsigned p = ctx_.p();
  std::vector<unsigned> d(ctx_.n());
  for (auto& v : d) {
    v = static_cast<unsigned>(t % p);
    t /= p;
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const unsigned f = d[pivots_[i]];
    if (f == 0) continue;
    for (unsigned j = 0; j < ctx_.n(); ++j) d[j] = (d[j] + (p - f) * rows_[i][j]) % p;
  }
  return std::all_of(d.begin(), d.end(), [](unsigned v) { return v == 0; });
}

Index Subspace::coset_label(Index x) const {
  const unsigned p = ctx_.p();
  Index label = 0, w = 1;
  for (const auto& r : rows_) {
    unsigned s = 0;
    Index y = x;
    for (unsigned j = 0; j < ctx_.n(); ++j) {
      s += static_cast<unsigned>(y % p) * r[j];
      y /= p;
    }
    label += (s % p) * w;
    w *= p;
  }
  return label;
}

Index Subspace::coset_rep_index(Index label) const {
  if (label >= coset_count()) throw Error("coset label out of range");
  Index x = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    x += (label % ctx_.p()) * ctx_.power(pivots_[i]);
    label /= ctx_.p();
  }
  return x;
}

std::vector<Index> Subspace::transversal_indices() const {
  if (coset_count() > kMaxCosets)
    throw Error("transversal budget exceeded: p^codim = " + std::to_string(coset_count()));
  std::vector<Index> out(coset_count());
  for (Index c = 0; c < out.size(); ++c) out[c] = coset_rep_index(c);
  return out;
}

std::vector<GroupElement> Subspace::transversal() const {
  std::vector<GroupElement> out;
  for (Index x : transversal_indices()) out.push_back(decode(ctx_, x));
  return out;
}

std::vector<Index> Subspace::coset_labels() const {
  ctx_.require_dense();
  const unsigned p = ctx_.p();
  const Index order = ctx_.order();
  std::vector<Index> labels(order, 0);
  std::vector<std::uint8_t> dots(order);
  Index w = 1;
  for (const auto& r : rows_) {
    dots[0] = 0;
    Index block = 1;
    for (unsigned m = 0; m < ctx_.n(); ++m) {
      for (unsigned v = 1; v < p; ++v)
        for (Index x = 0; x < block; ++x)
          dots[v * block + x] = static_cast<std::uint8_t>((dots[x] + v * r[m]) % p);
      block *= p;
    }
    for (Index x = 0; x < order; ++x) labels[x] += dots[x] * w;
    w *= p;
  }
  return labels;
}

std::vector<Index> Subspace::member_indices() const {
  ctx_.require_dense();
  // basis of H: one vector per free coordinate f, with -r_i[f] at pivot_i
  std::vector<Index> basis;
  std::vector<bool> is_pivot(ctx_.n(), false);
  for (auto c : pivots_) is_pivot[c] = true;
  const unsigned p = ctx_.p();
  for (unsigned f = 0; f < ctx_.n(); ++f) {
    if (is_pivot[f]) continue;
    Index v = ctx_.power(f);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      v += ((p - rows_[i][f]) % p) * ctx_.power(pivots_[i]);
    basis.push_back(v);
  }
  std::vector<Index> out{0};
  out.reserve(size());
  for (Index b : basis) {
    const std::size_t cur = out.size();
    Index mult = b;
    for (unsigned c = 1; c < p; ++c) {
      for (std::size_t i = 0; i < cur; ++i) out.push_back(ctx_.add(out[i], mult));
      mult = ctx_.add(mult, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> Subspace::annihilator_span() const {
  if (coset_count() > kMaxCosets) throw Error("annihilator too large to enumerate");
  std::vector<Index> out{0};
  for (const auto& r : rows_) {
    const Index b = Functional(ctx_, r).index();
    const std::size_t cur = out.size();
    Index mult = b;
    for (unsigned c = 1; c < ctx_.p(); ++c) {
      for (std::size_t i = 0; i < cur; ++i) out.push_back(ctx_.add(out[i], mult));
      mult = ctx_.add(mult, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace Subspace::intersect_hyperplane(const Functional& t) const {
  require_same(ctx_, t.context());
  if (t.is_zero()) throw Error("hyperplane_intersect: the zero functional does not define a hyperplane");
  Subspace h = *this;
  h.rows_.push_back(t.digits());
  h.pivots_ = row_reduce(h.rows_, ctx_.p(), ctx_.n());
  return h;
}

bool Subspace::is_subspace_of(const Subspace& other) const {
  require_same(ctx_, other.ctx_);
  // H <= K iff K^perp <= H^perp
  for (const auto& r : other.rows_)
    if (!annihilates(Functional(ctx_, r))) return false;
  return true;
}

Coset Coset::of(const Subspace& H, const GroupElement& g) {
  require_same(H.context(), g.context());
  return Coset{H, decode(H.context(), H.canonical_rep(g.index()))};
}

}  // namespace srl
