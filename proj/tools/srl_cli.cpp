// srl: command-line front end for the stable-regularity toolkit.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "srl/budget.hpp"
#include "srl/fourier.hpp"
#include "srl/generators.hpp"
#include "srl/io.hpp"
#include "srl/regularity.hpp"
#include "srl/stability.hpp"

using namespace srl;

namespace {

constexpr int kVerdict = 0;
constexpr int kUsage = 1;
constexpr int kBudget = 2;

struct RunConfig {
  std::string command;
  std::string in, out, report, subspace, witness;
  unsigned p = 2, n = 4;
  double epsilon = 0.1, mu = 0.1;
  unsigned k = 2, l = 2;
  unsigned max_codim = 8;
  std::optional<double> working_epsilon, theta;
  std::optional<unsigned> height;
  std::uint64_t effort = 100'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string name = "basis_set";
  std::string mode = "number";
  std::string y;
  unsigned codim = 2;
  Index count = 1;
  double rate = 0.0, density = 0.5;
  bool binary = false, total = false, check = false;
};

unsigned default_threads() {
  if (const char* env = std::getenv("SRL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Json parameters(const RunConfig& c) {
  Json j{{"in", c.in},           {"out", c.out},       {"p", c.p},           {"n", c.n},
         {"epsilon", c.epsilon}, {"mu", c.mu},         {"k", c.k},           {"l", c.l},
         {"max_codim", c.max_codim}, {"effort", c.effort}, {"seed", c.seed}, {"threads", c.threads}};
  j["working_epsilon"] = c.working_epsilon ? Json(*c.working_epsilon) : Json(nullptr);
  j["theta"] = c.theta ? Json(*c.theta) : Json(nullptr);
  j["height"] = c.height ? Json(*c.height) : Json(nullptr);
  return j;
}

Subspace load_subspace(const RunConfig& c, const GroupContext& ctx) {
  if (c.subspace.empty()) return Subspace::whole(ctx);
  std::ifstream in(c.subspace);
  if (!in) throw IoError("cannot open " + c.subspace);
  auto H = read_subspace(in);
  require_same(H.context(), ctx);
  return H;
}

void save_subspace(const std::string& path, const Subspace& H) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_subspace(out, H);
}

template <class W>
void save_witness(const std::string& path, const W& w, const std::string& source) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_witness(out, w, source);
}

Index parse_element(const std::string& text, const GroupContext& ctx) {
  if (text.empty()) return 0;
  std::string s = text;
  for (auto& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<std::uint8_t> d;
  unsigned v;
  while (in >> v) d.push_back(static_cast<std::uint8_t>(v));
  if (!in.eof()) throw IoError("malformed element '" + text + "'");
  return GroupElement(ctx, d).index();
}

struct Outcome {
  int code = kVerdict;
  std::string verdict;
  Json certificate = nullptr;
  Json result = Json::object();
  Json trace = Json::array();
};

Outcome run_gen(const RunConfig& c) {
  Outcome o;
  SetIndicator A;
  Json spec = nullptr;
  if (c.name == "union_of_cosets") {
    const auto ctx = GroupContext::make(c.p, c.n);
    const auto H = random_subspace(ctx, c.codim, c.seed);
    A = gen_union_of_cosets(H, c.count, c.seed + 1);
    o.result["subspace"] = to_json(H);
  } else if (c.name == "random") {
    A = random_set(GroupContext::make(c.p, c.n), c.density, c.seed);
  } else if (c.name == "noisy") {
    auto noisy = gen_noisy(load_set(c.in), c.rate, c.seed);
    o.result["changed"] = noisy.changed;
    A = std::move(noisy.set);
  } else {
    auto f = gen_example(c.name, c.p, c.n, c.seed);
    spec = to_json(f.spec);
    if (c.check) {
      Json checks = Json::array();
      ClaimCheckOptions opts;
      opts.effort = c.effort;
      opts.threads = c.threads;
      opts.seed = c.seed;
      for (const auto& claim : f.spec.claims) {
        const auto r = check_claim(f.set, claim, opts);
        checks.push_back({{"claim", describe(claim)}, {"passed", r.passed}, {"conclusive", r.conclusive}, {"detail", r.detail}});
      }
      o.result["claim_checks"] = checks;
    }
    A = std::move(f.set);
  }
  o.result["fixture"] = spec;
  o.result["size"] = A.size();
  o.result["source"] = A.source();
  if (!c.out.empty()) {
    save_set(c.out, A, c.binary);
    o.certificate = c.out;
  } else {
    write_set_text(std::cout, A);
  }
  o.verdict = "generated";
  return o;
}

Outcome run_dft(const RunConfig& c) {
  Outcome o;
  const auto A = load_set(c.in);
  const auto f = DenseFunction::indicator(A);
  const auto s = dft(f);
  const auto e = parseval_energy(f);
  std::vector<Index> order(s.values.size());
  for (Index t = 0; t < order.size(); ++t) order[t] = t;
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::abs(s.values[a]) > std::abs(s.values[b]); });
  Json top = Json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(10, order.size()); ++i)
    top.push_back({{"t", to_json(Functional::from_index(A.context(), order[i]))},
                   {"re", s.values[order[i]].real()},
                   {"im", s.values[order[i]].imag()},
                   {"abs", std::abs(s.values[order[i]])}});
  o.result = {{"time_energy", e.time}, {"spectral_energy", e.spectral}, {"relative_gap", e.relative_gap()}, {"top", top}};
  if (!c.out.empty()) {
    std::ofstream out(c.out);
    if (!out) throw IoError("cannot write " + c.out);
    out.precision(17);
    for (Index t = 0; t < s.values.size(); ++t) out << t << ' ' << s.values[t].real() << ' ' << s.values[t].imag() << '\n';
    o.certificate = c.out;
  }
  o.verdict = "computed";
  return o;
}

Outcome run_stability(const RunConfig& c) {
  Outcome o;
  const auto A = load_set(c.in);
  const SearchOptions opts{c.effort, c.threads};
  if (c.mode == "number") {
    const auto r = stability_number(A, c.k, opts);
    o.result = {{"value", r.value}, {"exact", r.exact}, {"nodes", r.nodes}};
    if (r.exact) {
      o.verdict = std::to_string(r.value) + "-stable (exhaustive)";
    } else if (r.value == c.k) {
      o.verdict = "has the " + std::to_string(r.value) + "-order property; stability number exceeds k_max";
    } else {
      o.verdict = "lower bound " + std::to_string(r.value) + " (budget exhausted)";
      o.code = kBudget;
    }
    if (r.witness) {
      o.result["witness"] = to_json(*r.witness);
      if (!c.out.empty()) save_witness(c.out, *r.witness, A.source()), o.certificate = c.out;
    }
  } else if (c.mode == "find") {
    const auto r = find_order_witness(A, c.k, opts);
    o.result = {{"status", to_string(r.status)}, {"nodes", r.nodes}};
    if (r.status == SearchStatus::found) {
      o.verdict = "has the " + std::to_string(c.k) + "-order property";
      o.result["witness"] = to_json(*r.witness);
      if (!c.out.empty()) save_witness(c.out, *r.witness, A.source()), o.certificate = c.out;
    } else if (r.status == SearchStatus::none_found) {
      o.verdict = std::to_string(c.k) + "-stable (exhaustive)";
    } else {
      o.verdict = "unknown (budget exhausted)";
      o.code = kBudget;
    }
  } else if (c.mode == "cover") {
    const auto r = cover_or_witness(A, c.k);
    if (r.is_cover()) {
      const auto& cv = std::get<CoverCertificate>(r.certificate);
      o.verdict = "covered by " + std::to_string(cv.translates.size()) + " translates of " + to_string(cv.side);
      o.result["cover"] = to_json(cv);
    } else {
      const auto& w = std::get<OrderWitness>(r.certificate);
      o.verdict = std::to_string(w.height()) + "-order witness for " + to_string(r.witness_side);
      o.result["witness"] = to_json(w);
      o.result["side"] = to_string(r.witness_side);
      if (!c.out.empty()) save_witness(c.out, w, A.source()), o.certificate = c.out;
    }
  } else if (c.mode == "verify") {
    std::ifstream in(c.witness);
    if (!in) throw IoError("cannot open " + c.witness);
    const auto f = read_witness(in, A.context());
    bool ok;
    if (const auto* w = std::get_if<OrderWitness>(&f.witness))
      ok = verify_order_witness(A, *w);
    else
      ok = verify_tree_witness(A, std::get<TreeWitness>(f.witness));
    o.verdict = ok ? "witness verifies" : "witness fails";
    o.result = {{"valid", ok}, {"witness_source", f.source}};
  } else {
    throw CLI::ValidationError("--mode", "expected number, find, cover or verify");
  }
  return o;
}

Outcome run_goodness(const RunConfig& c) {
  Outcome o;
  const auto A = load_set(c.in);
  const auto H = load_subspace(c, A.context());
  const auto r = goodness(A, H, c.epsilon);
  o.result = to_json(r);
  o.verdict = r.good() ? "good" : "not good (" + std::to_string(r.bad_count()) + " bad cosets)";
  return o;
}

Outcome run_uniformity(const RunConfig& c) {
  Outcome o;
  const auto A = load_set(c.in);
  const auto H = load_subspace(c, A.context());
  const auto r = c.total ? total_uniformity(A, H, c.epsilon) : uniformity(A, H, parse_element(c.y, A.context()), c.epsilon);
  o.result = to_json(r);
  o.verdict = r.uniform() ? (c.total ? "totally uniform" : "uniform") : "non-uniform";
  return o;
}

Outcome run_search(const RunConfig& c) {
  Outcome o;
  const auto A = load_set(c.in);
  const auto r = good_subspace_search(A, c.epsilon, c.max_codim);
  if (const auto* g = std::get_if<GoodSubspace>(&r)) {
    o.verdict = "epsilon-good subspace of codimension " + std::to_string(g->H.codim());
    o.result = to_json(*g);
    o.trace = o.result["trace"];
    if (!c.out.empty()) save_subspace(c.out, g->H), o.certificate = c.out;
  } else {
    const auto& f = std::get<FailureTrace>(r);
    o.verdict = "failure: " + f.reason;
    o.result = to_json(f);
    o.trace = o.result["trace"];
    o.code = kBudget;
  }
  return o;
}

Outcome run_dichotomy(const RunConfig& c) {
  Outcome o;
  const auto A = load_set(c.in);
  TreeOptions opts;
  opts.working_epsilon = c.working_epsilon;
  opts.theta = c.theta;
  opts.height = c.height;
  const auto r = dichotomy_tree_builder(A, c.k, c.mu, c.max_codim, opts);
  if (const auto* g = std::get_if<GoodSubspace>(&r)) {
    o.verdict = "mu-good subspace of codimension " + std::to_string(g->H.codim());
    o.result = to_json(*g);
    if (!c.out.empty()) save_subspace(c.out, g->H), o.certificate = c.out;
  } else if (const auto* t = std::get_if<TreeResult>(&r)) {
    o.verdict = "tree witness of height " + std::to_string(t->witness.height);
    o.result = {{"witness", to_json(t->witness)}, {"build", to_json(t->info)}};
    if (!c.out.empty()) save_witness(c.out, t->witness, A.source()), o.certificate = c.out;
  } else {
    const auto& i = std::get<Inconclusive>(r);
    o.verdict = "inconclusive at level " + std::to_string(i.level) + ", node " + i.node + ": " + i.condition;
    o.result = to_json(i);
    o.code = kBudget;
  }
  return o;
}

Outcome run_approx(const RunConfig& c) {
  Outcome o;
  const auto A = load_set(c.in);
  const auto H = load_subspace(c, A.context());
  const auto r = coset_approximation(A, H, c.epsilon);
  o.result = to_json(r);
  o.verdict = "|A delta X| = " + std::to_string(r.sym_diff);
  if (!c.out.empty()) save_set(c.out, r.X, c.binary), o.certificate = c.out;
  return o;
}

Outcome run_partition(const RunConfig& c) {
  Outcome o;
  const auto A = load_set(c.in);
  const auto H = load_subspace(c, A.context());
  const auto r = cayley_partition_verify(A, H, c.epsilon);
  o.result = to_json(r);
  o.verdict = r.violations.empty() ? "partition verified" : std::to_string(r.violations.size()) + " violations";
  return o;
}

Outcome run_budget(const RunConfig& c) {
  Outcome o;
  const auto b = budget_eval(c.k, c.l, c.mu, c.epsilon);
  o.result = to_json(b);
  o.verdict = "h=" + b.h.str() + " d_max=" + std::to_string(b.d_max) + " D(text) digits=" +
              b.text.D.digits().to_string() + " codim bound digits=" + b.text.codim_bound.digits().to_string();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable arithmetic regularity toolkit over F_p^n"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  c.threads = default_threads();

  app.add_option("--in", c.in, "Input set file (text or SRL2)");
  app.add_option("--out", c.out, "Certificate / output file");
  app.add_option("--report", c.report, "JSON report path (default stdout)");
  app.add_option("--p", c.p, "Prime")->check(CLI::Range(2u, kMaxPrime));
  app.add_option("--n", c.n, "Dimension")->check(CLI::Range(1u, 64u));
  app.add_option("--epsilon", c.epsilon, "Goodness / uniformity threshold")->check(CLI::Range(0.0, 1.0));
  app.add_option("--mu", c.mu, "Target goodness for the tree builder")->check(CLI::Range(0.0, 1.0));
  app.add_option("--k", c.k, "Stability parameter / witness height")->check(CLI::Range(1u, 64u));
  app.add_option("--l", c.l, "Second argument of h(k, l)");
  app.add_option("--max-codim", c.max_codim, "Codimension budget");
  app.add_option("--working-epsilon", c.working_epsilon, "Tree builder working epsilon (default mu/4)");
  app.add_option("--theta", c.theta, "Locator goodness threshold (default eps^(1/(2k+2)))");
  app.add_option("--height", c.height, "Tree height (default 2^(k+2)-3)");
  app.add_option("--effort", c.effort, "Search-node budget");
  app.add_option("--seed", c.seed, "Seed");
  app.add_option("--threads", c.threads, "Worker threads (default SRL_THREADS or all cores)")->check(CLI::PositiveNumber);
  app.add_option("--subspace", c.subspace, "Subspace file (default: G itself)");
  app.add_option("--y", c.y, "Element digits, e.g. \"0 1 0\"");

  auto* gen = app.add_subcommand("gen", "Generate a fixture set");
  gen->add_option("--name", c.name, "subgroup|basis_set|pairsum_complement|green_sanders|union_of_cosets|random|noisy");
  gen->add_option("--codim", c.codim, "union_of_cosets: codimension of H");
  gen->add_option("--count", c.count, "union_of_cosets: number of cosets");
  gen->add_option("--density", c.density, "random: inclusion probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--rate", c.rate, "noisy: flip probability")->check(CLI::Range(0.0, 1.0));
  gen->add_flag("--binary", c.binary, "Write the SRL2 binary format");
  gen->add_flag("--check", c.check, "Execute the attached claims");
  app.add_subcommand("dft", "Fourier transform of a set indicator");
  auto* stab = app.add_subcommand("stability", "Order-property search, stability number, covers, verification");
  stab->add_option("--mode", c.mode, "number|find|cover|verify");
  stab->add_option("--witness", c.witness, "Witness file for --mode verify");
  auto* unif = app.add_subcommand("uniformity", "Uniformity of y (or of every coset with --total)");
  unif->add_flag("--total", c.total, "Worst case over a transversal");
  app.add_subcommand("goodness", "Per-coset goodness verdicts");
  app.add_subcommand("search", "Density-increment search for an epsilon-good subspace");
  app.add_subcommand("dichotomy", "Tree builder: good subspace or tree witness");
  auto* approx = app.add_subcommand("approx", "Coset approximation of A by a union of cosets");
  approx->add_flag("--binary", c.binary, "Write X in the SRL2 binary format");
  app.add_subcommand("partition", "Cayley-graph partition verification");
  app.add_subcommand("budget", "Stability budget table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (c.command != "gen" && c.command != "budget" && c.in.empty()) throw CLI::RequiredError("--in");
    if (c.command == "gen") o = run_gen(c);
    else if (c.command == "dft") o = run_dft(c);
    else if (c.command == "stability") o = run_stability(c);
    else if (c.command == "goodness") o = run_goodness(c);
    else if (c.command == "uniformity") o = run_uniformity(c);
    else if (c.command == "search") o = run_search(c);
    else if (c.command == "dichotomy") o = run_dichotomy(c);
    else if (c.command == "approx") o = run_approx(c);
    else if (c.command == "partition") o = run_partition(c);
    else o = run_budget(c);
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  Json report{{"operation", c.command},
              {"parameters", parameters(c)},
              {"verdict", o.verdict},
              {"exit_code", o.code},
              {"certificate", o.certificate},
              {"result", o.result},
              {"trace", o.trace},
              {"timings", {{"wall_ms", ms}}}};
  if (c.report.empty() || c.report == "-") {
    // gen without --out already wrote the set to stdout
    if (!(c.command == "gen" && c.out.empty())) std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream out(c.report);
    if (!out) {
      std::cerr << "error: cannot write " << c.report << '\n';
      return kUsage;
    }
    out << report.dump(2) << '\n';
  }
  std::cerr << c.command << ": " << o.verdict << '\n';
  return o.code;
}
