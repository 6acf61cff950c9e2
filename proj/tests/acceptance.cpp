// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "srl/budget.hpp"
#include "srl/fourier.hpp"
#include "srl/generators.hpp"
#include "srl/random.hpp"
#include "srl/regularity.hpp"

using namespace srl;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

std::vector<bool> bits(const SetIndicator& A) {
  std::vector<bool> out(A.context().order());
  for (Index x = 0; x < out.size(); ++x) out[x] = A.contains(x);
  return out;
}

std::vector<std::uint64_t> indices(const std::vector<GroupElement>& xs) {
  std::vector<std::uint64_t> out;
  for (const auto& x : xs) out.push_back(x.index());
  return out;
}

bool oracle_witness(const SetIndicator& A, const OrderWitness& w) {
  const auto& ctx = A.context();
  return oracle::verify_order(ctx.p(), ctx.n(), bits(A), indices(w.a), indices(w.b));
}

// G = union of (S - g), checked element by element.
bool oracle_cover(const SetIndicator& S, const std::vector<GroupElement>& translates) {
  const auto& ctx = S.context();
  const auto s = bits(S);
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    bool hit = false;
    for (const auto& g : translates) hit = hit || s[oracle::add(ctx.p(), ctx.n(), x, g.index())];
    if (!hit) return false;
  }
  return true;
}

// Counts of A on the cosets of H, walked from the member list alone.
bool oracle_good(const SetIndicator& A, const Subspace& H, double eps) {
  const auto& ctx = A.context();
  const auto members = H.member_indices();
  std::vector<bool> seen(ctx.order(), false);
  const double size = static_cast<double>(members.size());
  for (std::uint64_t x = 0; x < ctx.order(); ++x) {
    if (seen[x]) continue;
    double c = 0;
    for (auto h : members) {
      const auto y = oracle::add(ctx.p(), ctx.n(), x, h);
      seen[y] = true;
      c += A.contains(y);
    }
    const double d = c / size;
    if (d > eps && d < 1 - eps) return false;
  }
  return true;
}

// Tree conditions and the extraction identity, recomputed from the build record.
bool oracle_tree(const SetIndicator& A, const TreeResult& r) {
  const auto& w = r.witness;
  const unsigned d = w.height;
  if (w.leaves.size() != (std::size_t{1} << d) || w.nodes.size() != (std::size_t{1} << d) - 1) return false;
  const auto& ctx = A.context();
  for (const auto& [eta, a] : w.leaves)
    for (unsigned s = 0; s < d; ++s) {
      const auto sigma = eta.substr(0, s);
      const auto sum = oracle::add(ctx.p(), ctx.n(), a.index(), w.nodes.at(sigma).index());
      if (A.contains(sum) != (eta[s] == '1')) return false;
      auto rhs = oracle::add(ctx.p(), ctx.n(), r.info.c.at(eta).index(), r.info.nodes.at(sigma).g.index());
      for (unsigned j = s + 1; j <= d; ++j)
        rhs = oracle::add(ctx.p(), ctx.n(), rhs, r.info.nodes.at(eta.substr(0, j)).x.index());
      if (sum != rhs) return false;
    }
  return true;
}

SetIndicator lowest_bit_even(const GroupContext& ctx) {
  return SetIndicator::from_predicate(ctx, [&](Index x) {
    if (x == 0) return false;
    unsigned i = 0;
    while (ctx.digit(x, i) == 0) ++i;
    return i % 2 == 0;
  });
}

SetIndicator structured_set(const GroupContext& ctx, Rng& rng) {
  SetIndicator A(ctx);
  const unsigned parts = 1 + static_cast<unsigned>(rng.below(2));
  for (unsigned i = 0; i < parts; ++i) {
    const auto H = random_subspace(ctx, 1 + static_cast<unsigned>(rng.below(std::min(3u, ctx.n()))), rng.next());
    A |= gen_union_of_cosets(H, 1 + rng.below(H.coset_count() - 1), rng.next());
  }
  return A;
}

struct Emitted {
  SetIndicator A;
  Subspace H;
  double eps;
};

std::vector<Emitted> emitted_good;

std::string str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Outcome transforms() {
  Rng rng(1);
  std::vector<std::pair<unsigned, unsigned>> shapes;
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 6; ++n) shapes.emplace_back(p, n);
  double worst = 0;
  int functions = 0;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    const auto [p, n] = shapes[s];
    const auto ctx = GroupContext::make(p, n);
    const int count = 100 / static_cast<int>(shapes.size()) + (s < 100 % shapes.size() ? 1 : 0);
    std::vector<std::vector<oracle::Cplx>> fs;
    std::vector<Spectrum> fast;
    for (int i = 0; i < count; ++i) {
      auto f = DenseFunction::zeros(ctx);
      for (auto& v : f.values) v = Complex(2 * rng.unit() - 1, 2 * rng.unit() - 1);
      fs.emplace_back(f.values.begin(), f.values.end());
      fast.push_back(dft(f));
    }
    const auto slow = oracle::naive_dft_many(p, n, fs);
    for (int i = 0; i < count; ++i)
      for (std::size_t t = 0; t < slow[i].size(); ++t) worst = std::max(worst, std::abs(fast[i].values[t] - slow[i][t]));
    functions += count;
  }
  double parseval = 0;
  for (auto [p, n] : {std::pair{2u, 10u}, {3u, 6u}}) {
    const auto ctx = GroupContext::make(p, n);
    for (int i = 0; i < 5; ++i) {
      auto f = DenseFunction::zeros(ctx);
      for (auto& v : f.values) v = Complex(2 * rng.unit() - 1, 2 * rng.unit() - 1);
      parseval = std::max(parseval, parseval_energy(f).relative_gap());
    }
  }
  return {functions == 100 && worst <= 1e-9 && parseval <= 1e-10,
          std::to_string(functions) + " functions, max |fast - naive| = " + str(worst) +
              ", Parseval gap = " + str(parseval)};
}

Outcome basis_set_example() {
  const auto ctx = GroupContext::make(2, 4);
  const auto A = gen_example("basis_set", 2, 4).set;
  const auto e = [&](unsigned i) { return GroupElement::unit(ctx, i); };
  const OrderWitness w{{GroupElement::zero(ctx), e(2) + e(3), e(3) + e(4)}, {e(1), e(2), e(3)}};
  const bool wit = verify_order_witness(A, w) && oracle_witness(A, w);
  const auto r = find_order_witness(A, 4);
  const bool stable = r.status == SearchStatus::none_found && !oracle::has_order(2, 4, bits(A), 4);
  return {wit && stable, std::string("3-order witness ") + (wit ? "verifies" : "rejected") + ", k=4 search " +
                             to_string(r.status) + " after " + std::to_string(r.nodes) + " nodes"};
}

Outcome subgroups() {
  int ok = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto A = gen_example("subgroup", 2, 8, seed).set;
    const auto s = stability_number(A, 3);
    ok += s.exact && s.value == 2;
  }
  return {ok == 20, std::to_string(ok) + "/20 subgroups have stability number 2 (exhaustive)"};
}

Outcome green_sanders_example() {
  int witnesses = 0;
  for (unsigned n = 5; n <= 10; ++n) {
    const auto ctx = GroupContext::make(3, n);
    const auto A = gen_example("green_sanders", 3, n).set;
    OrderWitness w;
    for (unsigned i = 1; i <= n - 2; ++i) {
      w.a.push_back(GroupElement::unit(ctx, i + 1));
      auto b = GroupElement::zero(ctx);
      for (unsigned m = i + 2; m <= n; ++m) b = b + GroupElement::unit(ctx, m) + GroupElement::unit(ctx, m);
      w.b.push_back(b);
    }
    witnesses += verify_order_witness(A, w) && oracle_witness(A, w);
  }
  const auto ctx = GroupContext::make(3, 7);
  const auto A = gen_example("green_sanders", 3, 7).set;
  const double floor = std::sqrt(3.0) / 6 - 1e-9;
  double least = 1;
  int above = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto V = random_subspace(ctx, static_cast<unsigned>(seed % 7), seed);
    const double s = uniformity(A, V, Index{0}, 0.1).sup_coeff;
    least = std::min(least, s);
    above += s >= floor;
  }
  return {witnesses == 6 && above == 50, std::to_string(witnesses) + "/6 witnesses verify (n=5..10), " +
                                             std::to_string(above) + "/50 subspaces above sqrt(3)/6, least " +
                                             str(least)};
}

Outcome pairsum_example() {
  int covers = 0, witnesses = 0;
  for (unsigned n = 4; n <= 16; ++n) {
    const auto ctx = GroupContext::make(2, n);
    const auto A = gen_example("pairsum_complement", 2, n).set;
    const std::vector<GroupElement> t{GroupElement::zero(ctx), GroupElement::unit(ctx, 1), GroupElement::unit(ctx, n)};
    // over F_2 the translate A + g is A with indices xored by g
    bool cover = verify_cover(A, {Side::set, t});
    for (Index x = 0; x < ctx.order() && cover; ++x)
      cover = A.contains(x) || A.contains(x ^ Index{1}) || A.contains(x ^ (Index{1} << (n - 1)));
    covers += cover;
    const auto B = A.complement();
    OrderWitness w;
    for (unsigned i = 1; i <= n; ++i) {
      w.a.push_back(GroupElement::unit(ctx, i));
      w.b.push_back(GroupElement::unit(ctx, i));
    }
    witnesses += verify_order_witness(B, w) && oracle_witness(B, w);
  }
  std::string search;
  for (unsigned n = 4; n <= 7; ++n) {
    const auto B = gen_example("pairsum_complement", 2, n).set.complement();
    const auto r = find_order_witness(B, n, {2'000'000, 1});
    search += " n=" + std::to_string(n) + ":" + to_string(r.status);
  }
  return {covers == 13 && witnesses == 13, std::to_string(covers) + "/13 covers verify, " + std::to_string(witnesses) +
                                               "/13 witnesses a_i = b_j = e_i verify; search for an n-order "
                                               "witness of the complement:" + search};
}

Outcome covering() {
  std::vector<SetIndicator> sets;
  sets.push_back(gen_example("subgroup", 2, 8, 1).set);
  sets.push_back(gen_example("subgroup", 2, 6, 2).set);
  sets.push_back(gen_example("basis_set", 2, 4).set);
  sets.push_back(gen_example("basis_set", 2, 7).set);
  sets.push_back(gen_example("green_sanders", 3, 5).set);
  sets.push_back(gen_example("green_sanders", 3, 6).set);
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    const auto ctx = GroupContext::make(i % 4 == 3 ? 3 : 2, i % 4 == 3 ? 5 : 6 + i % 3);
    sets.push_back(random_set(ctx, 0.05 + 0.9 * rng.unit(), rng.next()));
  }
  int runs = 0, ok = 0, covers = 0;
  for (const auto& A : sets)
    for (unsigned k = 2; k <= 4; ++k) {
      ++runs;
      const auto cw = cover_or_witness(A, k);
      if (cw.is_cover()) {
        const auto& c = std::get<CoverCertificate>(cw.certificate);
        const bool good = c.translates.size() <= 2 * k + 1 && verify_cover(A, c) &&
                          oracle_cover(side_of(A, c.side), c.translates);
        ok += good;
        covers += good;
      } else {
        const auto& w = std::get<OrderWitness>(cw.certificate);
        const auto S = side_of(A, cw.witness_side);
        const unsigned want = cw.witness_side == Side::set ? k : k + 1;
        ok += w.height() == want && verify_order_witness(S, w) && oracle_witness(S, w);
      }
    }
  return {ok == runs, std::to_string(ok) + "/" + std::to_string(runs) + " certificates verified (" +
                          std::to_string(covers) + " covers, " + std::to_string(ok - covers) + " witnesses)"};
}

Outcome search_positive() {
  const auto ctx = GroupContext::make(2, 12);
  const double eps = 0.01;
  int ok = 0;
  std::string codims;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const auto H = random_subspace(ctx, 1 + static_cast<unsigned>(rng.below(6)), rng.next());
    const auto A = gen_union_of_cosets(H, 1 + rng.below(H.coset_count() - 1), rng.next());
    const auto out = good_subspace_search(A, eps, ctx.n());
    const auto* g = std::get_if<GoodSubspace>(&out);
    if (!g) continue;
    emitted_good.push_back({A, g->H, eps});
    const bool good = g->H.codim() <= H.codim() && goodness(A, g->H, eps).good() && oracle_good(A, g->H, eps);
    ok += good;
    codims += " " + std::to_string(g->H.codim()) + "/" + std::to_string(H.codim());
  }
  return {ok == 20, std::to_string(ok) + "/20 verified good subspaces; codim found/planted:" + codims};
}

Outcome implication_chain() {
  Rng rng(8);
  static const std::pair<unsigned, unsigned> shapes[] = {{2, 8}, {2, 10}, {3, 5}, {3, 6}, {5, 4}};
  for (int r = 0; r < 30; ++r) {
    const auto [p, n] = shapes[rng.below(std::size(shapes))];
    const auto ctx = GroupContext::make(p, n);
    const auto K = random_subspace(ctx, 1 + static_cast<unsigned>(rng.below(3)), rng.next());
    const auto A = gen_noisy(gen_union_of_cosets(K, 1 + rng.below(K.coset_count() - 1), rng.next()), 0.002,
                             rng.next()).set;
    const double eps = 0.02 + 0.08 * rng.unit();
    const auto out = good_subspace_search(A, eps, n);
    if (const auto* g = std::get_if<GoodSubspace>(&out)) emitted_good.push_back({A, g->H, eps});
  }
  for (unsigned k : {2u, 3u}) {
    const auto A = gen_example("subgroup", 2, 8, k).set;
    const auto out = dichotomy_tree_builder(A, k, 0.05, 8);
    if (const auto* g = std::get_if<GoodSubspace>(&out)) emitted_good.push_back({A, g->H, 0.05});
  }
  int ok = 0;
  double worst_ratio = 0;
  for (const auto& e : emitted_good) {
    const auto& ctx = e.A.context();
    const double sup = total_uniformity(e.A, e.H, e.eps).sup_coeff;
    const auto approx = coset_approximation(e.A, e.H, e.eps);
    const auto part = cayley_partition_verify(e.A, e.H, e.eps);
    worst_ratio = std::max(worst_ratio, sup / ((ctx.p() + 1) * e.eps));
    ok += sup <= (ctx.p() + 1) * e.eps + 1e-9 &&
          static_cast<double>(approx.sym_diff) <= e.eps * static_cast<double>(ctx.order()) &&
          part.violations.empty();
  }
  return {!emitted_good.empty() && ok == static_cast<int>(emitted_good.size()),
          std::to_string(ok) + "/" + std::to_string(emitted_good.size()) +
              " good subspaces pass all three bounds, worst sup/((p+1)eps) = " + str(worst_ratio)};
}

Outcome density_increments() {
  int fired = 0, ok = 0;
  for (std::uint64_t seed = 1; fired < 200 && seed < 5000; ++seed) {
    Rng rng(seed);
    const unsigned p = seed % 3 == 0 ? 3 : 2;
    const auto ctx = GroupContext::make(p, p == 2 ? 8 : 5);
    const auto H = random_subspace(ctx, static_cast<unsigned>(rng.below(3)), rng.next());
    const auto A = random_set(ctx, 0.1 + 0.8 * rng.unit(), rng.next());
    const Index y = rng.below(ctx.order());
    const double eps = 0.02 + 0.2 * rng.unit();
    const auto s = density_increment_step(A, H, y, eps);
    if (!s) continue;
    ++fired;
    const double alpha = static_cast<double>(count_on_coset(A, H, y)) / static_cast<double>(H.size());
    const auto next = s->H_next.member_indices();
    const double direct =
        static_cast<double>(oracle::count_on_coset(p, ctx.n(), bits(A), {next.begin(), next.end()}, s->new_y.index())) /
        static_cast<double>(next.size());
    ok += s->new_density >= alpha + eps / 2 - 1e-12 && s->H_next.codim() == H.codim() + 1 &&
          s->H_next.is_subspace_of(H) && std::abs(direct - s->new_density) <= 1e-12;
  }
  return {fired == 200 && ok == 200, std::to_string(ok) + "/" + std::to_string(fired) + " fired steps meet the contract"};
}

Outcome dichotomy_sweep() {
  struct Case {
    std::string name;
    SetIndicator A;
    unsigned max_codim;
  };
  std::vector<Case> cases;
  for (unsigned n : {6u, 7u, 8u}) cases.push_back({"green_sanders(3," + std::to_string(n) + ")",
                                                   gen_example("green_sanders", 3, n).set, n - 2});
  cases.push_back({"lowest_bit_even(2,10)", lowest_bit_even(GroupContext::make(2, 10)), 8});
  cases.push_back({"lowest_bit_even(2,12)", lowest_bit_even(GroupContext::make(2, 12)), 7});
  cases.push_back({"random(2,10)", random_set(GroupContext::make(2, 10), 0.5, 10), 6});
  {
    const auto H = random_subspace(GroupContext::make(2, 10), 3, 10);
    cases.push_back({"union(2,10)", gen_union_of_cosets(H, 3, 10), 6});
  }
  cases.push_back({"basis_set(2,8)", gen_example("basis_set", 2, 8).set, 6});
  cases.push_back({"pairsum_complement(2,8)", gen_example("pairsum_complement", 2, 8).set, 6});

  int trees = 0, good = 0, inconclusive = 0, bad = 0;
  for (const auto& c : cases)
    for (unsigned h = 1; h <= 4; ++h)
      for (std::optional<double> theta : {std::optional<double>{}, std::optional<double>{0.1}, std::optional<double>{0.3}}) {
        TreeOptions opts;
        opts.working_epsilon = 0.05;
        opts.theta = theta;
        opts.height = h;
        const auto out = dichotomy_tree_builder(c.A, 2, 0.01, c.max_codim, opts);
        if (const auto* t = std::get_if<TreeResult>(&out)) {
          ++trees;
          const bool sound = t->witness.height == h && verify_tree_witness(c.A, t->witness) &&
                             extraction_identity_holds(c.A, *t) && oracle_tree(c.A, *t);
          if (!sound) {
            ++bad;
            std::fprintf(stderr, "unsound tree: %s height %u\n", c.name.c_str(), h);
          }
        } else if (std::holds_alternative<GoodSubspace>(out)) {
          ++good;
        } else {
          ++inconclusive;
        }
      }
  return {trees > 0 && bad == 0, std::to_string(trees) + " trees emitted, " + std::to_string(trees - bad) +
                                     " verified; " + std::to_string(good) + " good subspaces, " +
                                     std::to_string(inconclusive) + " inconclusive"};
}

Outcome budget() {
  const auto a = budget_eval(2, 2, 0.1, 0.1);
  const auto b = budget_eval(2, 2, 0.1, 0.1);
  const bool values = a.h == 65 && a.d_max == 13 && a.text.f(1).exact == BigInt(161) &&
                      a.statement.f(1).exact == BigInt(65) && a.text.f_iterates.size() == 15 &&
                      a.statement.f_iterates.size() == 15;
  const bool stable = a.text.codim_bound.digits().to_string() == b.text.codim_bound.digits().to_string() &&
                      a.statement.codim_bound.digits().to_string() == b.statement.codim_bound.digits().to_string();
  return {values && stable, "h=" + a.h.str() + " d_max=" + std::to_string(a.d_max) + " f^1 text=" +
                                a.text.f(1).to_string() + " statement=" + a.statement.f(1).to_string() +
                                ", codim digits text " + a.text.codim_bound.digits().to_string() + ", statement " +
                                a.statement.codim_bound.digits().to_string()};
}

Outcome sumset_dichotomy() {
  auto holds = [](const SetIndicator& A, unsigned k) {
    const auto N = A.complement();
    const auto ab = oracle::sumset(2, A.context().n(), bits(A), bits(A));
    const auto nb = oracle::sumset(2, A.context().n(), bits(N), bits(N));
    const Index sa = static_cast<Index>(std::count(ab.begin(), ab.end(), true));
    const Index sn = static_cast<Index>(std::count(nb.begin(), nb.end(), true));
    return sa == sumset(A, A).size() && sn == sumset(N, N).size() &&
           (sa <= (2 * k + 1) * A.size() || sn <= (2 * k + 1) * N.size());
  };
  const auto basis = gen_example("basis_set", 2, 4).set;
  const auto sb = stability_number(basis, 5);
  bool ok = sb.exact && sb.value == 4 && holds(basis, 4);
  Rng rng(12);
  int certified = 0, passed = 0;
  for (int tries = 0; certified < 10 && tries < 200; ++tries) {
    const auto A = structured_set(GroupContext::make(2, 5 + static_cast<unsigned>(rng.below(2))), rng);
    const auto s = stability_number(A, 6, {5'000'000, 1});
    if (!s.exact) continue;
    ++certified;
    passed += holds(A, s.value);
  }
  ok = ok && certified == 10 && passed == 10;
  return {ok, std::string("basis_set ") + (sb.exact ? "certified " : "uncertified ") + std::to_string(sb.value) +
                  "-stable; " + std::to_string(passed) + "/" + std::to_string(certified) +
                  " certified random sets satisfy the bound"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "transform conformance", 10, transforms},
      {2, "basis set: 3-order witness, 4-stable", 300, basis_set_example},
      {3, "subgroups are 2-stable", 60, subgroups},
      {4, "green-sanders witnesses and uniformity floor", 120, green_sanders_example},
      {5, "pairsum complement: cover and n-order witness", 60, pairsum_example},
      {6, "covering certificates", 120, covering},
      {7, "good-subspace search, positive case", 120, search_positive},
      {8, "implication chain on good subspaces", 120, implication_chain},
      {9, "density increment contract", 60, density_increments},
      {10, "dichotomy soundness", 300, dichotomy_sweep},
      {11, "budget table", 1, budget},
      {12, "sumset dichotomy for stable sets", 60, sumset_dichotomy},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && s < c.limit_s;
    failed += !pass;
    std::printf("%s %2d %s (%.2fs, limit %gs): %s\n", pass ? "PASS" : "FAIL", c.id, c.title, s, c.limit_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
