#include "srl/generators.hpp"

#include <cmath>
#include <sstream>

#include "srl/random.hpp"
#include "srl/regularity.hpp"

namespace srl {

namespace {

GroupElement e(const GroupContext& ctx, unsigned i) { return GroupElement::unit(ctx, i); }

std::string params(unsigned p, unsigned n) { return "p=" + std::to_string(p) + ",n=" + std::to_string(n); }

}  // namespace

std::string describe(const Claim& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ClaimStable>)
          return std::to_string(v.k) + "-stable" + (v.exhaustive ? "" : " (spot-check)");
        else if constexpr (std::is_same_v<T, ClaimStabilityNumber>)
          return "stability number " + std::to_string(v.value);
        else if constexpr (std::is_same_v<T, ClaimOrderWitness>)
          return std::to_string(v.witness.height()) + "-order witness for " + to_string(v.side);
        else if constexpr (std::is_same_v<T, ClaimCover>)
          return "cover of G by " + std::to_string(v.cover.translates.size()) + " translates of " +
                 to_string(v.cover.side);
        else {
          std::ostringstream os;
          os << "uniformity floor " << v.floor << " at y=0";
          return os.str();
        }
      },
      c);
}

Subspace random_subspace(const GroupContext& ctx, unsigned codim, std::uint64_t seed) {
  if (codim > ctx.n()) throw Error("codimension exceeds n");
  Rng rng(seed);
  std::vector<Functional> rows;
  Subspace H = Subspace::whole(ctx);
  while (H.codim() < codim) {
    std::vector<std::uint8_t> d(ctx.n());
    for (auto& v : d) v = static_cast<std::uint8_t>(rng.below(ctx.p()));
    Functional t(ctx, d);
    if (t.is_zero() || H.annihilates(t)) continue;
    rows.push_back(t);
    H = Subspace::from_annihilator(ctx, rows);
  }
  return H;
}

Fixture gen_example(const std::string& name, unsigned p, unsigned n, std::uint64_t seed) {
  const auto ctx = GroupContext::make(p, n);
  Fixture f;
  f.spec.name = name;
  f.spec.p = p;
  f.spec.n = n;

  if (name == "subgroup") {
    Rng rng(seed);
    const unsigned codim = n == 1 ? 0 : 1 + static_cast<unsigned>(rng.below(n - 1));
    const auto H = random_subspace(ctx, codim, rng.next());
    f.set = SetIndicator::of_subspace(H);
    f.spec.seed = seed;
    f.spec.extras["codim"] = std::to_string(codim);
    f.spec.claims.push_back(ClaimStabilityNumber{2});
  } else if (name == "basis_set") {
    if (p != 2 || n < 4) throw Error("basis_set needs p = 2 and n >= 4");
    f.set = SetIndicator(ctx);
    for (unsigned i = 1; i <= n; ++i) f.set.insert(ctx.unit(i));
    OrderWitness w;
    w.a = {GroupElement::zero(ctx), e(ctx, 2) + e(ctx, 3), e(ctx, 3) + e(ctx, 4)};
    w.b = {e(ctx, 1), e(ctx, 2), e(ctx, 3)};
    f.spec.claims.push_back(ClaimOrderWitness{Side::set, w});
    f.spec.claims.push_back(ClaimStable{4, n <= 5});
  } else if (name == "pairsum_complement") {
    if (p != 2 || n < 2) throw Error("pairsum_complement needs p = 2 and n >= 2");
    // B = {e_i + e_j : i <= j}, which contains 0 = e_i + e_i
    SetIndicator B(ctx);
    for (unsigned i = 1; i <= n; ++i)
      for (unsigned j = i; j <= n; ++j) B.insert(ctx.add(ctx.unit(i), ctx.unit(j)));
    f.set = B.complement();
    f.spec.claims.push_back(ClaimCover{{Side::set, {GroupElement::zero(ctx), e(ctx, 1), e(ctx, n)}}});
    OrderWitness w;
    for (unsigned i = 1; i <= n; ++i) {
      w.a.push_back(e(ctx, i));
      w.b.push_back(e(ctx, i));
    }
    f.spec.claims.push_back(ClaimOrderWitness{Side::complement, w});
  } else if (name == "green_sanders") {
    if (p != 3 || n < 3) throw Error("green_sanders needs p = 3 and n >= 3");
    // first nonzero coordinate equals 1
    f.set = SetIndicator::from_predicate(ctx, [&](Index x) {
      for (unsigned i = 0; i < n; ++i) {
        const unsigned d = ctx.digit(x, i);
        if (d != 0) return d == 1;
      }
      return false;
    });
    OrderWitness w;
    for (unsigned i = 1; i <= n - 2; ++i) {
      w.a.push_back(e(ctx, i + 1));
      auto b = GroupElement::zero(ctx);
      for (unsigned j = i + 2; j <= n; ++j) b = b + 2u * e(ctx, j);
      w.b.push_back(b);
    }
    f.spec.claims.push_back(ClaimOrderWitness{Side::set, w});
    f.spec.claims.push_back(ClaimUniformityFloor{std::sqrt(3.0) / 6.0});
  } else {
    throw Error("unknown example '" + name + "'");
  }
  f.set.set_source(name + "(" + params(p, n) + (f.spec.seed ? ",seed=" + std::to_string(seed) : "") + ")");
  return f;
}

SetIndicator gen_union_of_cosets(const Subspace& H, Index count, std::uint64_t seed) {
  const Index cosets = H.coset_count();
  if (count > cosets) throw Error("more cosets requested than exist");
  Rng rng(seed);
  std::vector<char> chosen(cosets, 0);
  for (auto l : rng.sample(cosets, count)) chosen[l] = 1;
  const auto& ctx = H.context();
  SetIndicator s(ctx);
  if (H.codim() == 0) {
    if (count == 1) s = SetIndicator::full(ctx);
  } else {
    const auto labels = H.coset_labels();
    for (Index x = 0; x < ctx.order(); ++x)
      if (chosen[labels[x]]) s.insert(x);
  }
  s.set_source("union_of_cosets(codim=" + std::to_string(H.codim()) + ",count=" + std::to_string(count) +
               ",seed=" + std::to_string(seed) + ")");
  return s;
}

NoisySet gen_noisy(const SetIndicator& A, double rate, std::uint64_t seed) {
  const auto B = random_set(A.context(), rate, seed);
  NoisySet r{A ^ B, B.size()};
  r.set.set_source((A.source().empty() ? std::string("set") : A.source()) + "+noise(rate=" + std::to_string(rate) +
                   ",seed=" + std::to_string(seed) + ")");
  return r;
}

ClaimResult check_claim(const SetIndicator& A, const Claim& c, const ClaimCheckOptions& opts) {
  const SearchOptions search{opts.effort, opts.threads};
  return std::visit(
      [&](const auto& v) -> ClaimResult {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ClaimStable>) {
          auto r = find_order_witness(A, v.k, search);
          if (r.status == SearchStatus::found) return {false, true, "a " + std::to_string(v.k) + "-order witness exists"};
          if (r.status == SearchStatus::budget_exhausted)
            return {true, false, "no witness within " + std::to_string(r.nodes) + " nodes (budget exhausted)"};
          return {true, true, "exhaustive search: no " + std::to_string(v.k) + "-order witness"};
        } else if constexpr (std::is_same_v<T, ClaimStabilityNumber>) {
          auto r = stability_number(A, v.value, search);
          if (!r.exact) return {false, false, "lower bound " + std::to_string(r.value) + " only"};
          return {r.value == v.value, true, "stability number " + std::to_string(r.value)};
        } else if constexpr (std::is_same_v<T, ClaimOrderWitness>) {
          const bool ok = verify_order_witness(side_of(A, v.side), v.witness);
          return {ok, true, ok ? "witness verifies" : "witness fails exact verification"};
        } else if constexpr (std::is_same_v<T, ClaimCover>) {
          const bool ok = verify_cover(A, v.cover);
          return {ok, true, ok ? "translates cover G" : "translates do not cover G"};
        } else {
          const auto& ctx = A.context();
          Rng rng(opts.seed);
          double lowest = 1;
          for (unsigned s = 0; s < opts.floor_samples; ++s) {
            const unsigned codim = static_cast<unsigned>(rng.below(ctx.n()));  // dim >= 1
            const auto V = random_subspace(ctx, codim, rng.next());
            lowest = std::min(lowest, uniformity(A, V, Index{0}, 0).sup_coeff);
          }
          std::ostringstream os;
          os << "lowest sup over " << opts.floor_samples << " subspaces: " << lowest;
          return {lowest >= v.floor - 1e-9, true, os.str()};
        }
      },
      c);
}

}  // namespace srl
