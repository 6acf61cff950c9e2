#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "srl/group.hpp"
#include "srl/set.hpp"
#include "srl/stability.hpp"

namespace srl {

// Spectral values below this are treated as zero.
inline constexpr double kSpectralZero = 1e-12;

struct UniformityReport {
  GroupElement y;
  double sup_coeff = 0;  // max |f^(t)| over t outside H^perp
  Functional argmax_t;   // zero functional when the spectrum vanishes
  double epsilon = 0;

  bool uniform() const { return sup_coeff <= epsilon; }
};

UniformityReport uniformity(const SetIndicator& A, const Subspace& H, Index y, double epsilon);
UniformityReport uniformity(const SetIndicator& A, const Subspace& H, const GroupElement& y, double epsilon);

// Worst report over a transversal of H.
UniformityReport total_uniformity(const SetIndicator& A, const Subspace& H, double epsilon);

enum class CosetVerdict { low, high, bad };
const char* to_string(CosetVerdict v);

CosetVerdict classify(Index count, Index coset_size, double epsilon);

struct GoodnessReport {
  Subspace H;
  double epsilon = 0;
  std::vector<Index> reps;    // canonical representatives, by coset label
  std::vector<Index> counts;  // |(A - y) ∩ H|
  std::vector<CosetVerdict> verdicts;
  std::optional<std::size_t> worst;  // bad coset with density nearest 1/2

  double density(std::size_t i) const { return static_cast<double>(counts[i]) / static_cast<double>(H.size()); }
  std::size_t bad_count() const;
  bool good() const { return !worst.has_value(); }
};

// Counts of A on every coset of H, indexed by coset label.
std::vector<Index> coset_counts(const SetIndicator& A, const Subspace& H);

GoodnessReport goodness(const SetIndicator& A, const Subspace& H, double epsilon);

struct DensityIncrement {
  Functional t;
  GroupElement x0;  // x0 in H with x0 . t equal to the densest class
  Subspace H_next;  // H ∩ <t>^perp
  double old_density = 0;
  double new_density = 0;
  GroupElement new_y;  // canonical representative of y + x0 modulo H_next
  double sup_coeff = 0;
};

// None when y is epsilon-uniform. Throws InternalInconsistency when the
// increment falls short of epsilon/2.
std::optional<DensityIncrement> density_increment_step(const SetIndicator& A, const Subspace& H, Index y,
                                                       double epsilon);

struct RefinementStep {
  GroupElement y;
  Functional t;
  unsigned codim = 0;  // after the step
  double sup_coeff = 0;
};

struct Anomaly {
  std::string kind;
  std::string detail;
};

struct GoodSubspace {
  Subspace H;
  double epsilon = 0;
  GoodnessReport report;
  std::vector<RefinementStep> trace;
  std::vector<Anomaly> anomalies;
};

struct FailureTrace {
  std::string reason;
  double epsilon = 0;
  Subspace H;  // last subspace reached
  std::vector<RefinementStep> trace;
  std::optional<GoodnessReport> blocking;
  std::optional<UniformityReport> blocking_uniformity;
  std::vector<Anomaly> anomalies;
};

using SearchOutcome = std::variant<GoodSubspace, FailureTrace>;

SearchOutcome good_subspace_search(const SetIndicator& A, double epsilon, unsigned max_codim);

// epsilon^(1 / (2k + 2))
double default_theta(double epsilon, unsigned k);

struct LocatorResult {
  bool located = false;
  Subspace H;
  GroupElement x;
  double density = 0;  // |(S - x) ∩ H| / |H|
  double theta = 0;
  unsigned steps = 0;
  std::vector<RefinementStep> trace;
  std::optional<Anomaly> anomaly;
};

// Runs density increments for S from y = 0 inside H, at most floor(2/eps)
// of them, and accepts the final coset when its density is at least 1 - theta.
LocatorResult dense_coset_locator(const SetIndicator& S, const Subspace& H, double epsilon, unsigned k,
                                  std::optional<double> theta = std::nullopt);

struct TreeOptions {
  std::optional<double> working_epsilon;  // default mu / 4
  std::optional<double> theta;            // default working_epsilon^(1/(2k+2))
  std::optional<unsigned> height;         // default d_max(k)
};

struct TreeNode {
  std::string eta;
  Subspace H;
  GroupElement g;
  GroupElement x;
  Index x_set_size = 0;  // |X_eta|
  Index x_on_h = 0;      // |X_eta ∩ H_eta|
  std::vector<RefinementStep> trace;
};

struct TreeBuildInfo {
  unsigned k = 2;
  double mu = 0;
  double epsilon = 0;
  double theta = 0;
  unsigned m = 0;
  unsigned height = 0;
  unsigned levels_built = 0;
  std::map<std::string, TreeNode> nodes;
  std::map<std::string, GroupElement> c;  // c_eta, minimal element of X_eta
  std::vector<std::string> checks;        // conditions verified, per level
  std::vector<Anomaly> anomalies;
};

struct TreeResult {
  TreeWitness witness;
  TreeBuildInfo info;
};

struct Inconclusive {
  unsigned level = 0;
  std::string node;
  std::string condition;
  TreeBuildInfo info;
};

using DichotomyOutcome = std::variant<GoodSubspace, TreeResult, Inconclusive>;

// Runs good_subspace_search at mu first; the tree is only built when no
// mu-good subspace of codimension <= max_codim turns up.

DichotomyOutcome dichotomy_tree_builder(const SetIndicator& A, unsigned k, double mu, unsigned max_codim,
                                        const TreeOptions& opts = {});

// a_eta + b_sigma = c_eta + g_sigma + x_{eta|s+1} + ... + x_{eta|d} for all sigma below eta
bool extraction_identity_holds(const SetIndicator& A, const TreeResult& r);

struct RegularPairEstimate {
  double sup_coeff = 0;
  double fourier_bound = 0;  // sqrt(sup_coeff)
  double monte_carlo_worst = 0;
  double pair_density = 0;  // d(H, H + y) = alpha_{y+H}
  unsigned samples = 0;
};

RegularPairEstimate regular_pair_estimate(const SetIndicator& A, const Subspace& H, Index y, double epsilon,
                                          unsigned samples, std::uint64_t seed);

struct CosetApproximation {
  std::vector<Index> labels;  // cosets in I, by label
  SetIndicator X;
  Index sym_diff = 0;
  bool bound_asserted = false;  // H was epsilon-good, so sym_diff <= epsilon |G| was checked
};

CosetApproximation coset_approximation(const SetIndicator& A, const Subspace& H, double epsilon);

struct PartitionViolation {
  std::size_t i = 0, j = 0;
  double delta = 0;
};

struct PartitionReport {
  Subspace H;
  double epsilon = 0;
  std::vector<Index> reps;
  std::vector<std::vector<std::int8_t>> table;  // t(i, j), -1 where violated
  std::vector<PartitionViolation> violations;
};

PartitionReport cayley_partition_verify(const SetIndicator& A, const Subspace& H, double epsilon);

struct PerturbationReport {
  SetIndicator perturbed;
  Index sym_diff = 0;            // |A Δ A'|
  double base_worst = 0;         // worst coefficient for A'
  double measured_worst = 0;     // worst coefficient for A
  double three_epsilon = 0;
  double difference_bound = 0;   // 2 |A Δ A'| / |H|
  double size_ratio = 0;         // |A| / |H|
  bool within_three_epsilon() const { return measured_worst <= three_epsilon; }
};

// A = A' Δ B with B seeded-random, each element kept with probability
// rate |A'| / |G|, so E|B| = rate |A'|. Throws Error when H is not
// epsilon-good for A' or when |B| > epsilon |A|.
PerturbationReport perturbation_uniformity_check(const SetIndicator& A_prime, const Subspace& H, double epsilon,
                                                 double rate, std::uint64_t seed);

}  // namespace srl
