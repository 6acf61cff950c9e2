#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "srl/generators.hpp"
#include "srl/group.hpp"
#include "srl/random.hpp"
#include "srl/set.hpp"

using namespace srl;

namespace {

GroupElement el(const GroupContext& ctx, std::vector<std::uint8_t> d) { return GroupElement(ctx, std::move(d)); }
Functional fn(const GroupContext& ctx, std::vector<std::uint8_t> d) { return Functional(ctx, std::move(d)); }

std::vector<oracle::Digits> rows_of(const Subspace& H) {
  std::vector<oracle::Digits> out;
  for (const auto& r : H.annihilator()) out.emplace_back(r.digits().begin(), r.digits().end());
  return out;
}

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("codec examples") {
    const auto c23 = GroupContext::make(2, 3);
    CHECK(encode(el(c23, {1, 0, 0})) == 1);
    CHECK(decode(c23, 0) == el(c23, {0, 0, 0}));
    const auto c32 = GroupContext::make(3, 2);
    CHECK(encode(el(c32, {2, 1})) == 5);
  }

  TEST_CASE("codec round trip") {
    for (auto [p, n] : {std::pair{2u, 12u}, {3u, 7u}, {5u, 5u}, {7u, 4u}, {17u, 2u}}) {
      const auto ctx = GroupContext::make(p, n);
      for (Index x = 0; x < ctx.order(); ++x) {
        const auto g = decode(ctx, x);
        REQUIRE(encode(g) == x);
        REQUIRE(oracle::index(p, oracle::Digits(g.digits().begin(), g.digits().end())) == x);
      }
    }
  }

  TEST_CASE("codec errors") {
    const auto ctx = GroupContext::make(3, 2);
    CHECK_THROWS_AS(decode(ctx, 9), Error);
    CHECK_THROWS_AS(el(ctx, {3, 0}), Error);
    CHECK_THROWS_AS(el(ctx, {1, 0, 0}), Error);
    CHECK_THROWS_AS(GroupContext::make(4, 2), Error);
    CHECK_THROWS_AS(GroupContext::make(19, 2), Error);
    CHECK_THROWS_AS(GroupContext::make(2, 0), Error);
  }

  TEST_CASE("vector ops") {
    const auto c2 = GroupContext::make(2, 2);
    CHECK(el(c2, {1, 0}) + el(c2, {1, 1}) == el(c2, {0, 1}));
    const auto c3 = GroupContext::make(3, 2);
    CHECK(-el(c3, {2, 1}) == el(c3, {1, 2}));
    CHECK(dot(el(c3, {2, 1}), fn(c3, {1, 1})) == 0);
    CHECK_THROWS_AS(el(c2, {1, 0}) + el(c3, {1, 0}), Error);
  }

  TEST_CASE("index arithmetic agrees with digits") {
    const auto ctx = GroupContext::make(5, 3);
    Rng rng(3);
    for (int r = 0; r < 500; ++r) {
      const Index x = rng.below(ctx.order()), y = rng.below(ctx.order());
      const unsigned c = static_cast<unsigned>(rng.below(5));
      CHECK(ctx.add(x, y) == oracle::add(5, 3, x, y));
      CHECK(ctx.neg(x) == oracle::neg(5, 3, x));
      CHECK(ctx.scale(c, x) == encode(c * decode(ctx, x)));
      CHECK(ctx.dot(x, y) == oracle::dot(5, oracle::digits(5, 3, x), oracle::digits(5, 3, y)));
    }
  }

  TEST_CASE("subspace from annihilator examples") {
    const auto ctx = GroupContext::make(2, 3);
    CHECK(Subspace::from_annihilator(ctx, {}).codim() == 0);
    const std::vector dup{fn(ctx, {1, 0, 0}), fn(ctx, {1, 0, 0})};
    const auto H = Subspace::from_annihilator(ctx, dup);
    CHECK(H.codim() == 1);
    for (Index x = 0; x < 8; ++x) CHECK(H.contains_index(x) == (ctx.digit(x, 0) == 0));
    const std::vector dep{fn(ctx, {1, 0, 0}), fn(ctx, {0, 1, 0}), fn(ctx, {1, 1, 0})};
    CHECK(Subspace::from_annihilator(ctx, dep).codim() == 2);
    const std::vector zero{fn(ctx, {0, 0, 0})};
    CHECK(Subspace::from_annihilator(ctx, zero) == Subspace::whole(ctx));
  }

  TEST_CASE("row reduced form is canonical") {
    const auto ctx = GroupContext::make(3, 4);
    const std::vector a{fn(ctx, {1, 2, 0, 1}), fn(ctx, {0, 1, 1, 0})};
    const std::vector b{fn(ctx, {1, 0, 1, 1}), fn(ctx, {2, 1, 0, 2})};
    const auto Ha = Subspace::from_annihilator(ctx, a);
    const auto Hb = Subspace::from_annihilator(ctx, b);
    bool same = true;
    for (Index x = 0; x < ctx.order(); ++x) same = same && Ha.contains_index(x) == Hb.contains_index(x);
    CHECK((Ha == Hb) == same);
    for (std::size_t i = 0; i < Ha.pivots().size(); ++i) {
      const auto r = Ha.annihilator()[i];
      CHECK(r[Ha.pivots()[i]] == 1);
      for (unsigned j = 0; j < Ha.pivots()[i]; ++j) CHECK(r[j] == 0);
      for (std::size_t k = 0; k < Ha.pivots().size(); ++k)
        if (k != i) CHECK(r[Ha.pivots()[k]] == 0);
    }
  }

  TEST_CASE("membership examples") {
    const auto ctx = GroupContext::make(2, 3);
    const auto H = random_subspace(ctx, 2, 4);
    CHECK(H.contains(GroupElement::zero(ctx)));
    const std::vector r{fn(ctx, {1, 0, 0})};
    CHECK_FALSE(Subspace::from_annihilator(ctx, r).contains(el(ctx, {1, 0, 0})));
    for (Index x = 0; x < 8; ++x) CHECK(Subspace::whole(ctx).contains_index(x));
  }

  TEST_CASE("subspace sizes and kernels match brute force") {
    for (auto [p, n] : {std::pair{2u, 6u}, {3u, 4u}, {5u, 3u}}) {
      const auto ctx = GroupContext::make(p, n);
      for (unsigned codim = 0; codim <= n; ++codim)
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
          const auto H = random_subspace(ctx, codim, seed * 31 + codim);
          REQUIRE(H.codim() == codim);
          const auto members = oracle::kernel(p, n, rows_of(H));
          CHECK(members.size() == H.size());
          CHECK(H.member_indices() == members);
          const auto perp = oracle::annihilator(p, n, members);
          CHECK(H.annihilator_span().size() == perp.size());
          for (auto t : perp) CHECK(H.annihilates_index(t));
        }
    }
  }

  TEST_CASE("transversal covers G once") {
    for (auto [p, n] : {std::pair{2u, 6u}, {3u, 4u}}) {
      const auto ctx = GroupContext::make(p, n);
      for (unsigned codim = 0; codim <= n; ++codim) {
        const auto H = random_subspace(ctx, codim, 7 + codim);
        const auto T = H.transversal_indices();
        CHECK(T.size() * H.size() == ctx.order());
        const auto mins = oracle::coset_min(p, n, H.member_indices());
        std::set<Index> seen;
        for (auto t : T) seen.insert(mins[t]);
        CHECK(seen.size() == T.size());
        // canonical representative is the minimal element of its coset
        for (Index x = 0; x < ctx.order(); ++x) REQUIRE(H.canonical_rep(x) == mins[x]);
        const auto labels = H.coset_labels();
        for (Index l = 0; l < T.size(); ++l) CHECK(labels[T[l]] == l);
      }
    }
    const auto c22 = GroupContext::make(2, 2);
    CHECK(Subspace::whole(c22).transversal().size() == 1);
    CHECK(Subspace::whole(c22).transversal()[0].is_zero());
  }

  TEST_CASE("coset label is additive") {
    const auto ctx = GroupContext::make(3, 5);
    const auto H = random_subspace(ctx, 3, 11);
    Rng rng(5);
    for (int r = 0; r < 300; ++r) {
      const Index x = rng.below(ctx.order()), y = rng.below(ctx.order());
      const auto lx = H.coset_label(x), ly = H.coset_label(y), lxy = H.coset_label(ctx.add(x, y));
      // labels are base-p digit vectors, combine digitwise
      const auto sub = GroupContext::make(3, 3);
      CHECK(lxy == sub.add(lx, ly));
      CHECK((H.coset_label(x) == H.coset_label(y)) == H.contains_index(ctx.sub(x, y)));
    }
  }

  TEST_CASE("hyperplane intersection") {
    const auto ctx = GroupContext::make(2, 3);
    const auto G = Subspace::whole(ctx);
    const auto H1 = G.intersect_hyperplane(fn(ctx, {1, 0, 0}));
    CHECK(H1.codim() == 1);
    CHECK(H1.intersect_hyperplane(fn(ctx, {1, 0, 0})) == H1);
    const auto H2 = H1.intersect_hyperplane(fn(ctx, {0, 1, 0}));
    CHECK(H2.codim() == 2);
    CHECK(H2.member_indices() == oracle::kernel(2, 3, {{1, 0, 0}, {0, 1, 0}}));
    CHECK_THROWS_AS(G.intersect_hyperplane(Functional::zero(ctx)), Error);

    const auto c = GroupContext::make(3, 4);
    Rng rng(9);
    auto H = Subspace::whole(c);
    for (int r = 0; r < 30; ++r) {
      const auto t = Functional::from_index(c, 1 + rng.below(c.order() - 1));
      const auto K = H.intersect_hyperplane(t);
      CHECK(K.is_subspace_of(H));
      CHECK(K.codim() == H.codim() + (H.annihilates(t) ? 0 : 1));
      H = K.codim() < 3 ? K : Subspace::whole(c);
    }
  }

  TEST_CASE("coset canonical representative") {
    const auto ctx = GroupContext::make(2, 5);
    const auto H = random_subspace(ctx, 2, 3);
    for (Index x = 0; x < ctx.order(); ++x)
      for (auto h : H.member_indices())
        CHECK(Coset::of(H, decode(ctx, x)) == Coset::of(H, decode(ctx, ctx.add(x, h))));
  }

  TEST_CASE("sumset") {
    const auto ctx = GroupContext::make(2, 4);
    const std::vector<Index> zero{0};
    const auto Z = SetIndicator::from_indices(ctx, zero);
    CHECK(sumset(Z, Z) == Z);
    const auto H = random_subspace(ctx, 2, 1);
    const auto S = SetIndicator::of_subspace(H);
    CHECK(sumset(S, S) == S);
    std::vector<Index> units;
    for (unsigned i = 1; i <= 4; ++i) units.push_back(ctx.unit(i));
    const auto E = SetIndicator::from_indices(ctx, units);
    CHECK(sumset(E, E).size() == 7);

    const auto c3 = GroupContext::make(3, 4);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto A = random_set(c3, 0.05, seed), B = random_set(c3, 0.2, seed + 10);
      std::vector<bool> a(c3.order()), b(c3.order());
      for (Index x = 0; x < c3.order(); ++x) a[x] = A.contains(x), b[x] = B.contains(x);
      const auto ref = oracle::sumset(3, 4, a, b);
      const auto got = sumset(A, B);
      for (Index x = 0; x < c3.order(); ++x) REQUIRE(got.contains(x) == ref[x]);
    }
  }

  TEST_CASE("count on coset") {
    const auto ctx = GroupContext::make(3, 5);
    const auto A = random_set(ctx, 0.4, 2);
    const auto H = random_subspace(ctx, 2, 2);
    std::vector<bool> a(ctx.order());
    for (Index x = 0; x < ctx.order(); ++x) a[x] = A.contains(x);
    const auto members = H.member_indices();
    for (Index y = 0; y < ctx.order(); y += 7)
      CHECK(count_on_coset(A, H, y) == oracle::count_on_coset(3, 5, a, members, y));
  }
}
