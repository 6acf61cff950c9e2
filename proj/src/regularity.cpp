#include "srl/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "srl/budget.hpp"
#include "srl/fourier.hpp"
#include "srl/random.hpp"

namespace srl {

UniformityReport uniformity(const SetIndicator& A, const Subspace& H, Index y, double epsilon) {
  require_same(A.context(), H.context());
  const auto& ctx = A.context();
  const auto spec = dft(balanced_function(A, H, y));
  UniformityReport r;
  r.y = decode(ctx, y);
  r.epsilon = epsilon;
  Index arg = 0;
  for (Index t = 0; t < ctx.order(); ++t) {
    if (H.annihilates_index(t)) continue;
    const double v = std::abs(spec.values[t]);
    if (v > r.sup_coeff) {
      r.sup_coeff = v;
      arg = t;
    }
  }
  if (r.sup_coeff < kSpectralZero) {
    r.sup_coeff = 0;
    arg = 0;
  }
  r.argmax_t = Functional::from_index(ctx, arg);
  return r;
}

UniformityReport uniformity(const SetIndicator& A, const Subspace& H, const GroupElement& y, double epsilon) {
  require_same(A.context(), y.context());
  return uniformity(A, H, y.index(), epsilon);
}

UniformityReport total_uniformity(const SetIndicator& A, const Subspace& H, double epsilon) {
  std::optional<UniformityReport> worst;
  for (Index y : H.transversal_indices()) {
    auto r = uniformity(A, H, y, epsilon);
    if (!worst || r.sup_coeff > worst->sup_coeff) worst = std::move(r);
  }
  return *worst;
}

const char* to_string(CosetVerdict v) {
  switch (v) {
    case CosetVerdict::low: return "low";
    case CosetVerdict::high: return "high";
    case CosetVerdict::bad: return "bad";
  }
  return "?";
}

CosetVerdict classify(Index count, Index coset_size, double epsilon) {
  const double bound = epsilon * static_cast<double>(coset_size);
  if (static_cast<double>(count) <= bound) return CosetVerdict::low;
  if (static_cast<double>(coset_size - count) <= bound) return CosetVerdict::high;
  return CosetVerdict::bad;
}

std::size_t GoodnessReport::bad_count() const {
  std::size_t n = 0;
  for (auto v : verdicts) n += v == CosetVerdict::bad;
  return n;
}

std::vector<Index> coset_counts(const SetIndicator& A, const Subspace& H) {
  require_same(A.context(), H.context());
  if (H.coset_count() > kMaxCosets) throw Error("transversal budget exceeded");
  std::vector<Index> counts(H.coset_count(), 0);
  if (H.codim() == 0) {
    counts[0] = A.size();
    return counts;
  }
  const auto labels = H.coset_labels();
  for (Index x : A.elements()) ++counts[labels[x]];
  return counts;
}

GoodnessReport goodness(const SetIndicator& A, const Subspace& H, double epsilon) {
  GoodnessReport r;
  r.H = H;
  r.epsilon = epsilon;
  r.reps = H.transversal_indices();
  r.counts = coset_counts(A, H);
  const Index size = H.size();
  Index best_gap = 0;
  for (std::size_t i = 0; i < r.counts.size(); ++i) {
    r.verdicts.push_back(classify(r.counts[i], size, epsilon));
    if (r.verdicts.back() != CosetVerdict::bad) continue;
    const Index twice = 2 * r.counts[i];
    const Index gap = twice > size ? twice - size : size - twice;
    if (!r.worst || gap < best_gap) {
      r.worst = i;
      best_gap = gap;
    }
  }
  return r;
}

std::optional<DensityIncrement> density_increment_step(const SetIndicator& A, const Subspace& H, Index y,
                                                       double epsilon) {
  const auto u = uniformity(A, H, y, epsilon);
  if (u.uniform()) return std::nullopt;
  const auto& ctx = A.context();
  const Index t = u.argmax_t.index();
  DensityIncrement inc;
  inc.t = u.argmax_t;
  inc.sup_coeff = u.sup_coeff;
  inc.H_next = H.intersect_hyperplane(u.argmax_t);

  const unsigned p = ctx.p();
  std::vector<Index> counts(p, 0);
  std::vector<Index> first(p, ctx.order());
  Index total = 0;
  for (Index h : H.member_indices()) {
    const unsigned j = ctx.dot(h, t);
    if (first[j] == ctx.order()) first[j] = h;
    if (A.contains(ctx.add(y, h))) {
      ++counts[j];
      ++total;
    }
  }
  unsigned best = 0;
  for (unsigned j = 1; j < p; ++j)
    if (counts[j] > counts[best]) best = j;

  inc.old_density = static_cast<double>(total) / static_cast<double>(H.size());
  inc.new_density = static_cast<double>(counts[best]) / static_cast<double>(inc.H_next.size());
  inc.x0 = decode(ctx, first[best]);
  inc.new_y = decode(ctx, inc.H_next.canonical_rep(ctx.add(y, first[best])));
  if (inc.new_density < inc.old_density + epsilon / 2 - 1e-12)
    throw InternalInconsistency("density increment fell short of epsilon/2");
  if (inc.H_next.codim() != H.codim() + 1) throw InternalInconsistency("density increment did not refine H");
  return inc;
}

SearchOutcome good_subspace_search(const SetIndicator& A, double epsilon, unsigned max_codim) {
  const auto& ctx = A.context();
  Subspace H = Subspace::whole(ctx);
  std::vector<RefinementStep> trace;
  std::vector<Anomaly> anomalies;
  double working = epsilon;
  bool halved = false;
  for (;;) {
    auto report = goodness(A, H, epsilon);
    if (report.good()) {
      if (!goodness(A, H, epsilon).good()) throw InternalInconsistency("good subspace failed re-verification");
      return GoodSubspace{H, epsilon, std::move(report), std::move(trace), std::move(anomalies)};
    }
    const Index y = report.reps[*report.worst];
    auto u = uniformity(A, H, y, working);
    if (u.uniform()) {
      anomalies.push_back({"uniform-but-bad", "y=" + u.y.to_string() + " sup=" + std::to_string(u.sup_coeff) +
                                                  " density=" + std::to_string(report.density(*report.worst))});
      if (!halved) {
        halved = true;
        working /= 2;
        continue;
      }
      return FailureTrace{"uniform-but-bad coset persists after halving epsilon", epsilon, H, std::move(trace),
                          std::move(report), std::move(u), std::move(anomalies)};
    }
    if (H.codim() + 1 > max_codim)
      return FailureTrace{"codimension budget exhausted", epsilon, H, std::move(trace), std::move(report),
                          std::move(u), std::move(anomalies)};
    H = H.intersect_hyperplane(u.argmax_t);
    trace.push_back({u.y, u.argmax_t, H.codim(), u.sup_coeff});
  }
}

double default_theta(double epsilon, unsigned k) { return std::pow(epsilon, 1.0 / (2.0 * k + 2.0)); }

LocatorResult dense_coset_locator(const SetIndicator& S, const Subspace& H, double epsilon, unsigned k,
                                  std::optional<double> theta) {
  require_same(S.context(), H.context());
  if (!(epsilon > 0 && epsilon <= 1)) throw Error("epsilon must lie in (0, 1]");
  const auto& ctx = S.context();
  LocatorResult r;
  r.theta = theta.value_or(default_theta(epsilon, k));
  const unsigned m = static_cast<unsigned>(std::floor(2.0 / epsilon));
  Subspace cur = H;
  Index y = 0;
  auto density_at = [&] {
    return static_cast<double>(count_on_coset(S, cur, y)) / static_cast<double>(cur.size());
  };
  const double start = density_at();
  if (!(start > r.theta)) {
    r.H = cur;
    r.x = decode(ctx, y);
    r.density = start;
    r.anomaly = Anomaly{"precondition", "density " + std::to_string(start) + " does not exceed theta " +
                                            std::to_string(r.theta)};
    return r;
  }
  for (;;) {
    auto inc = density_increment_step(S, cur, y, epsilon);
    if (!inc) break;
    if (r.steps == m) {
      r.anomaly = Anomaly{"step-budget", "no uniform coset after floor(2/epsilon) increments"};
      break;
    }
    cur = inc->H_next;
    y = inc->new_y.index();
    ++r.steps;
    r.trace.push_back({inc->new_y, inc->t, cur.codim(), inc->sup_coeff});
  }
  if (cur.codim() - H.codim() > m) throw InternalInconsistency("locator exceeded floor(2/epsilon) refinements");
  r.H = cur;
  r.x = decode(ctx, y);
  r.density = density_at();
  if (r.anomaly) return r;
  if (r.density >= 1 - r.theta) {
    r.located = true;
  } else {
    r.anomaly = Anomaly{"uniform-but-bad", "uniform coset density " + std::to_string(r.density) +
                                               " below 1 - theta = " + std::to_string(1 - r.theta)};
  }
  return r;
}

namespace {

std::string describe(const std::string& eta) { return eta.empty() ? "<>" : eta; }

// x_{eta|from} + ... + x_{eta|to}
GroupElement path_sum(const TreeBuildInfo& info, const std::string& eta, std::size_t from, std::size_t to,
                      const GroupContext& ctx) {
  auto s = GroupElement::zero(ctx);
  for (std::size_t j = from; j <= to && j <= eta.size(); ++j) s = s + info.nodes.at(eta.substr(0, j)).x;
  return s;
}

}  // namespace

DichotomyOutcome dichotomy_tree_builder(const SetIndicator& A, unsigned k, double mu, unsigned max_codim,
                                        const TreeOptions& opts) {
  if (!(mu > 0 && mu < 1)) throw Error("mu must lie in (0, 1)");
  const auto& ctx = A.context();
  TreeBuildInfo info;
  info.k = k;
  info.mu = mu;
  info.epsilon = opts.working_epsilon.value_or(mu / 4);
  if (!(info.epsilon > 0 && info.epsilon <= 1)) throw Error("working epsilon must lie in (0, 1]");
  info.theta = opts.theta.value_or(default_theta(info.epsilon, k));
  if (!(info.theta > 0 && info.theta < 1)) throw Error("theta must lie in (0, 1)");
  info.m = static_cast<unsigned>(std::floor(2.0 / info.epsilon));
  info.height = opts.height.value_or(d_max(k));
  if (info.height < 1) throw Error("tree height must be at least 1");

  std::vector<RefinementStep> none;
  auto emit_good = [&](GoodnessReport report, const std::vector<RefinementStep>& trace) {
    return GoodSubspace{report.H, mu, std::move(report), trace, info.anomalies};
  };
  auto inconclusive = [&](unsigned level, const std::string& eta, std::string why) {
    return Inconclusive{level, describe(eta), std::move(why), info};
  };

  std::map<std::string, SetIndicator> X;
  {
    TreeNode root{"", Subspace::whole(ctx), GroupElement::zero(ctx), GroupElement::zero(ctx), ctx.order(),
                  ctx.order(), {}};
    auto report = goodness(A, root.H, mu);
    if (report.good()) return emit_good(std::move(report), none);
    auto found = good_subspace_search(A, mu, max_codim);
    if (auto* g = std::get_if<GoodSubspace>(&found)) {
      g->anomalies.insert(g->anomalies.begin(), info.anomalies.begin(), info.anomalies.end());
      return std::move(*g);
    }
    info.checks.push_back("no mu-good subspace of codim <= max-codim found by search");
    root.g = decode(ctx, report.reps[*report.worst]);
    info.nodes.emplace("", std::move(root));
    X.emplace("", SetIndicator::full(ctx));
  }

  for (unsigned t = 0; t < info.height; ++t) {
    std::map<std::string, SetIndicator> next;
    for (const auto& eta : binary_strings(t)) {
      const TreeNode parent = info.nodes.at(eta);
      const SetIndicator& Xp = X.at(eta);
      for (int i = 0; i < 2; ++i) {
        const std::string tau = eta + static_cast<char>('0' + i);
        const auto S = neighborhood(A, parent.g, i) & Xp;
        auto loc = dense_coset_locator(S, parent.H, info.epsilon, k, info.theta);
        if (!loc.located) {
          info.anomalies.push_back(*loc.anomaly);
          return inconclusive(t + 1, tau, "dense coset locator: " + loc.anomaly->kind + " (" + loc.anomaly->detail + ")");
        }
        if (loc.H.codim() > max_codim)
          return inconclusive(t + 1, tau, "codimension " + std::to_string(loc.H.codim()) + " exceeds max-codim");
        if (loc.H.codim() > info.m * (t + 1)) throw InternalInconsistency("condition (i) failed at " + tau);

        TreeNode child;
        child.eta = tau;
        child.H = loc.H;
        child.x = loc.x;
        child.trace = parent.trace;
        child.trace.insert(child.trace.end(), loc.trace.begin(), loc.trace.end());
        auto Xc = S.translate(-loc.x);
        // (v)
        if (Xc != (neighborhood(A, parent.g + loc.x, i) & Xp.translate(-loc.x)))
          throw InternalInconsistency("condition (v) failed at " + tau);
        child.x_set_size = Xc.size();
        child.x_on_h = count_on_coset(Xc, child.H, 0);
        // (iii)
        if (static_cast<double>(child.x_on_h) < (1 - info.theta) * static_cast<double>(child.H.size()))
          throw InternalInconsistency("condition (iii) failed at " + tau);

        auto report = goodness(A, child.H, mu);
        if (report.good()) return emit_good(std::move(report), child.trace);
        child.g = decode(ctx, report.reps[*report.worst]);
        // (ii)
        const auto on_h = count_on_coset(A, child.H, child.g.index());
        if (classify(on_h, child.H.size(), mu) != CosetVerdict::bad)
          throw InternalInconsistency("condition (ii) failed at " + tau);
        info.nodes.emplace(tau, std::move(child));
        next.emplace(tau, std::move(Xc));
      }
    }
    X = std::move(next);
    // (vi) for every node of the new level, exhaustively over X_tau
    for (const auto& tau : binary_strings(t + 1)) {
      const auto& Xt = X.at(tau);
      for (std::size_t s = 0; s <= t; ++s) {
        const auto& sigma = info.nodes.at(tau.substr(0, s));
        const auto shift = sigma.g + path_sum(info, tau, s + 1, t + 1, ctx);
        const auto shifted = A.translate(-shift);
        const bool ok = tau[s] == '1' ? (Xt & shifted) == Xt : (Xt & shifted).empty();
        if (!ok) throw InternalInconsistency("condition (vi) failed at " + tau);
      }
    }
    info.levels_built = t + 1;
    info.checks.push_back("level " + std::to_string(t + 1) +
                          ": (i) (ii) (iii) (v) (vi) verified; (iv) is a stability hypothesis, not checked");
  }

  const unsigned d = info.height;
  TreeResult result;
  result.witness.height = d;
  for (const auto& eta : binary_strings(d)) {
    const auto& Xe = X.at(eta);
    if (Xe.empty()) return inconclusive(d, eta, "X_eta is empty");
    const auto c = decode(ctx, Xe.first());
    info.c.emplace(eta, c);
    result.witness.leaves.emplace(eta, c + path_sum(info, eta, 1, d, ctx));
  }
  for (unsigned len = 0; len < d; ++len)
    for (const auto& sigma : binary_strings(len))
      result.witness.nodes.emplace(sigma, info.nodes.at(sigma).g - path_sum(info, sigma, 1, len, ctx));
  result.info = std::move(info);
  if (!extraction_identity_holds(A, result)) throw InternalInconsistency("extraction identity failed");
  if (!verify_tree_witness(A, result.witness)) throw InternalInconsistency("extracted tree witness failed verification");
  return result;
}

bool extraction_identity_holds(const SetIndicator& A, const TreeResult& r) {
  const auto& ctx = A.context();
  const unsigned d = r.witness.height;
  for (const auto& [eta, a] : r.witness.leaves) {
    const auto& c = r.info.c.at(eta);
    for (unsigned s = 0; s < d; ++s) {
      const auto sigma = eta.substr(0, s);
      const auto rhs = c + r.info.nodes.at(sigma).g + path_sum(r.info, eta, s + 1, d, ctx);
      if (a + r.witness.nodes.at(sigma) != rhs) return false;
    }
  }
  return true;
}

RegularPairEstimate regular_pair_estimate(const SetIndicator& A, const Subspace& H, Index y, double epsilon,
                                          unsigned samples, std::uint64_t seed) {
  const auto& ctx = A.context();
  RegularPairEstimate r;
  r.samples = samples;
  r.sup_coeff = uniformity(A, H, y, epsilon).sup_coeff;
  r.fourier_bound = std::sqrt(r.sup_coeff);
  const Index size = H.size();
  r.pair_density = static_cast<double>(count_on_coset(A, H, y)) / static_cast<double>(size);
  const auto members = H.member_indices();
  const Index min_size = std::max<Index>(1, static_cast<Index>(std::ceil(r.fourier_bound * static_cast<double>(size) - 1e-9)));
  Rng rng(seed);
  auto draw = [&] {
    const Index n = min_size + rng.below(size - min_size + 1);
    std::vector<Index> out;
    for (auto i : rng.sample(size, n)) out.push_back(members[i]);
    return out;
  };
  for (unsigned s = 0; s < samples; ++s) {
    const auto U = draw();
    const auto W = draw();
    Index edges = 0;
    for (Index u : U) {
      const Index uy = ctx.add(u, y);
      for (Index w : W) edges += A.contains(ctx.add(uy, w));
    }
    const double d = static_cast<double>(edges) / (static_cast<double>(U.size()) * static_cast<double>(W.size()));
    r.monte_carlo_worst = std::max(r.monte_carlo_worst, std::abs(d - r.pair_density));
  }
  return r;
}

CosetApproximation coset_approximation(const SetIndicator& A, const Subspace& H, double epsilon) {
  const auto& ctx = A.context();
  const auto counts = coset_counts(A, H);
  const double need = (1 - epsilon) * static_cast<double>(H.size());
  std::vector<char> in(counts.size(), 0);
  CosetApproximation r;
  for (std::size_t l = 0; l < counts.size(); ++l)
    if (static_cast<double>(counts[l]) >= need) {
      in[l] = 1;
      r.labels.push_back(l);
    }
  r.X = SetIndicator(ctx);
  if (H.codim() == 0) {
    if (in[0]) r.X = SetIndicator::full(ctx);
  } else {
    const auto labels = H.coset_labels();
    for (Index x = 0; x < ctx.order(); ++x)
      if (in[labels[x]]) r.X.insert(x);
  }
  r.sym_diff = (A ^ r.X).size();
  if (goodness(A, H, epsilon).good()) {
    r.bound_asserted = true;
    if (static_cast<double>(r.sym_diff) > epsilon * static_cast<double>(ctx.order()) + 1e-9)
      throw InternalInconsistency("good subspace but |A delta X| exceeds epsilon |G|");
  }
  return r;
}

PartitionReport cayley_partition_verify(const SetIndicator& A, const Subspace& H, double epsilon) {
  const auto& ctx = A.context();
  PartitionReport r;
  r.H = H;
  r.epsilon = epsilon;
  r.reps = H.transversal_indices();
  const auto counts = coset_counts(A, H);
  const double size = static_cast<double>(H.size());
  const std::size_t M = r.reps.size();
  r.table.assign(M, std::vector<std::int8_t>(M, -1));
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      const double delta = static_cast<double>(counts[H.coset_label(ctx.add(r.reps[i], r.reps[j]))]) / size;
      if (delta >= 1 - epsilon)
        r.table[i][j] = 1;
      else if (delta <= epsilon)
        r.table[i][j] = 0;
      else
        r.violations.push_back({i, j, delta});
    }
  return r;
}

PerturbationReport perturbation_uniformity_check(const SetIndicator& A_prime, const Subspace& H, double epsilon,
                                                 double rate, std::uint64_t seed) {
  if (!goodness(A_prime, H, epsilon).good()) throw Error("H is not epsilon-good for the unperturbed set");
  PerturbationReport r;
  const double q = rate * static_cast<double>(A_prime.size()) / static_cast<double>(A_prime.context().order());
  const auto B = random_set(A_prime.context(), std::min(1.0, q), seed);
  r.perturbed = A_prime ^ B;
  r.sym_diff = B.size();
  if (static_cast<double>(r.sym_diff) > epsilon * static_cast<double>(r.perturbed.size()))
    throw Error("perturbation exceeds epsilon |A| at this rate");
  r.base_worst = total_uniformity(A_prime, H, epsilon).sup_coeff;
  r.measured_worst = total_uniformity(r.perturbed, H, epsilon).sup_coeff;
  r.three_epsilon = 3 * epsilon;
  r.difference_bound = 2.0 * static_cast<double>(r.sym_diff) / static_cast<double>(H.size());
  r.size_ratio = static_cast<double>(r.perturbed.size()) / static_cast<double>(H.size());
  if (r.measured_worst > r.base_worst + r.difference_bound + 1e-9)
    throw InternalInconsistency("perturbed spectrum moved further than the difference bound");
  return r;
}

}  // namespace srl
