#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace srl {

using Index = std::uint64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certificate failed its own re-verification, or a guaranteed step did not
// deliver. Always indicates a bug, never bad input.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

inline constexpr unsigned kMaxPrime = 17;
inline constexpr Index kDenseCap = Index{1} << 26;

// The ambient group F_p^n. Elements are indexed little-endian in base p:
// index = sum_i x_i p^(i-1), coordinate 1 least significant.
class GroupContext {
 public:
  GroupContext() = default;
  static GroupContext make(unsigned p, unsigned n);

  unsigned p() const { return p_; }
  unsigned n() const { return n_; }
  Index order() const { return order_; }
  Index power(unsigned i) const;

  bool is_dense() const { return order_ <= kDenseCap; }
  void require_dense() const;
  void require_index(Index x) const;

  // 0-based coordinate i
  unsigned digit(Index x, unsigned i) const { return static_cast<unsigned>((x / power(i)) % p_); }
  Index add(Index x, Index y) const;
  Index sub(Index x, Index y) const { return add(x, neg(y)); }
  Index neg(Index x) const;
  Index scale(unsigned c, Index x) const;
  unsigned dot(Index x, Index t) const;
  // e_i for 1-based coordinate i
  Index unit(unsigned i) const;

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

 private:
  GroupContext(unsigned p, unsigned n, Index order) : p_(p), n_(n), order_(order) {}
  unsigned p_ = 2;
  unsigned n_ = 1;
  Index order_ = 2;
};

bool is_prime(unsigned p);
void require_same(const GroupContext& a, const GroupContext& b);

// Calls fn(y, y + shift) for every y in G in index order, in O(1) amortised per step.
void for_each_shift(const GroupContext& ctx, Index shift, const std::function<void(Index, Index)>& fn);

namespace detail {
struct ElementTag {};
struct FunctionalTag {};
}  // namespace detail

// A length-n residue vector tied to its context. Tag separates group elements
// from dual functionals so the two cannot be mixed up silently.
template <class Tag>
class Vector {
 public:
  Vector() = default;
  Vector(const GroupContext& ctx, std::vector<std::uint8_t> digits);

  static Vector zero(const GroupContext& ctx) { return Vector(ctx, std::vector<std::uint8_t>(ctx.n(), 0)); }
  static Vector from_index(const GroupContext& ctx, Index index);
  static Vector unit(const GroupContext& ctx, unsigned coordinate);

  const GroupContext& context() const { return ctx_; }
  const std::vector<std::uint8_t>& digits() const { return digits_; }
  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
  Index index() const;
  bool is_zero() const;

  Vector operator-() const;
  friend Vector operator+(const Vector& x, const Vector& y) {
    require_same(x.ctx_, y.ctx_);
    std::vector<std::uint8_t> out(x.digits_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<std::uint8_t>((x.digits_[i] + y.digits_[i]) % x.ctx_.p());
    return Vector(x.ctx_, std::move(out));
  }
  friend Vector operator-(const Vector& x, const Vector& y) { return x + (-y); }
  friend Vector operator*(unsigned c, const Vector& x) {
    std::vector<std::uint8_t> out(x.digits_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<std::uint8_t>((c % x.ctx_.p()) * x.digits_[i] % x.ctx_.p());
    return Vector(x.ctx_, std::move(out));
  }
  friend bool operator==(const Vector& x, const Vector& y) { return x.ctx_ == y.ctx_ && x.digits_ == y.digits_; }

  std::string to_string() const;

 private:
  GroupContext ctx_;
  std::vector<std::uint8_t> digits_;
};

using GroupElement = Vector<detail::ElementTag>;
using Functional = Vector<detail::FunctionalTag>;

extern template class Vector<detail::ElementTag>;
extern template class Vector<detail::FunctionalTag>;

// element_codec
Index encode(const GroupElement& x);
GroupElement decode(const GroupContext& ctx, Index index);

unsigned dot(const GroupElement& x, const Functional& t);

// A subspace H <= F_p^n stored by its annihilator H^perp in reduced row
// echelon form: each row has a leading 1 at its pivot coordinate (the lowest
// nonzero coordinate), pivots strictly increase, and every other row is zero
// in every pivot column.
class Subspace {
 public:
  Subspace() = default;
  static Subspace whole(const GroupContext& ctx);
  static Subspace from_annihilator(const GroupContext& ctx, std::span<const Functional> rows);

  const GroupContext& context() const { return ctx_; }
  unsigned codim() const { return static_cast<unsigned>(rows_.size()); }
  unsigned dim() const { return ctx_.n() - codim(); }
  Index size() const { return ctx_.power(dim()); }
  Index coset_count() const { return ctx_.power(codim()); }
  std::vector<Functional> annihilator() const;
  const std::vector<unsigned>& pivots() const { return pivots_; }

  bool contains(const GroupElement& x) const;
  bool contains_index(Index x) const;
  // t in H^perp
  bool annihilates(const Functional& t) const;
  bool annihilates_index(Index t) const;

  // Coset label of x: sum_i (r_i . x) p^i, a bijection G/H -> [0, p^codim).
  Index coset_label(Index x) const;
  // The transversal element with the given label: digits at pivot
  // coordinates, zero elsewhere.
  Index coset_rep_index(Index label) const;
  GroupElement coset_rep(Index label) const { return decode(ctx_, coset_rep_index(label)); }
  Index canonical_rep(Index x) const { return coset_rep_index(coset_label(x)); }

  // One representative per coset, ordered by label (lexicographic over the
  // pivot coordinates, first pivot least significant).
  std::vector<GroupElement> transversal() const;
  std::vector<Index> transversal_indices() const;
  // Coset label of every element of G (dense).
  std::vector<Index> coset_labels() const;
  // Members of H in ascending index order (dense).
  std::vector<Index> member_indices() const;
  // All of H^perp, as functional indices.
  std::vector<Index> annihilator_span() const;

  Subspace intersect_hyperplane(const Functional& t) const;
  bool is_subspace_of(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ctx_ == b.ctx_ && a.rows_ == b.rows_;
  }

 private:
  GroupContext ctx_;
  std::vector<std::vector<std::uint8_t>> rows_;
  std::vector<unsigned> pivots_;
};

inline constexpr Index kMaxCosets = Index{1} << 22;

// A coset H + g with its canonical (transversal) representative.
struct Coset {
  Subspace subspace;
  GroupElement representative;

  static Coset of(const Subspace& H, const GroupElement& g);
  friend bool operator==(const Coset& a, const Coset& b) {
    return a.subspace == b.subspace && a.representative == b.representative;
  }
};

}  // namespace srl
