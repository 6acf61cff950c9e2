#include "srl/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace srl {

namespace {

// Next line that is neither blank nor a '#' comment.
bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

std::vector<std::uint8_t> parse_digits(std::istringstream& in, const GroupContext& ctx, const std::string& line) {
  std::vector<std::uint8_t> d;
  unsigned v;
  while (in >> v) {
    if (v >= ctx.p()) throw IoError("digit " + std::to_string(v) + " out of range in line '" + line + "'");
    d.push_back(static_cast<std::uint8_t>(v));
  }
  if (d.size() != ctx.n()) throw IoError("expected " + std::to_string(ctx.n()) + " digits in line '" + line + "'");
  return d;
}

std::vector<std::uint8_t> parse_digits(const std::string& line, const GroupContext& ctx) {
  std::istringstream in(line);
  return parse_digits(in, ctx, line);
}

std::string digits_of(const std::vector<std::uint8_t>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(d[i]);
  }
  return s;
}

GroupContext read_header(std::istream& is, unsigned* extra) {
  std::string line;
  if (!next_line(is, line)) throw IoError("missing header");
  std::istringstream in(line);
  unsigned p = 0, n = 0;
  if (!(in >> p >> n)) throw IoError("malformed header '" + line + "'");
  if (extra && !(in >> *extra)) throw IoError("header needs 'p n d'");
  try {
    return GroupContext::make(p, n);
  } catch (const Error& e) {
    throw IoError(e.what());
  }
}

}  // namespace

void write_subspace(std::ostream& os, const Subspace& H) {
  const auto& ctx = H.context();
  os << ctx.p() << ' ' << ctx.n() << ' ' << H.codim() << '\n';
  for (const auto& r : H.annihilator()) os << digits_of(r.digits()) << '\n';
}

Subspace read_subspace(std::istream& is) {
  unsigned d = 0;
  const auto ctx = read_header(is, &d);
  std::vector<Functional> rows;
  std::string line;
  for (unsigned i = 0; i < d; ++i) {
    if (!next_line(is, line)) throw IoError("expected " + std::to_string(d) + " annihilator rows");
    rows.emplace_back(ctx, parse_digits(line, ctx));
  }
  return Subspace::from_annihilator(ctx, rows);
}

void write_set_text(std::ostream& os, const SetIndicator& A) {
  const auto& ctx = A.context();
  if (!A.source().empty()) os << "# source: " << A.source() << '\n';
  os << ctx.p() << ' ' << ctx.n() << '\n';
  for (Index x : A.elements()) os << digits_of(decode(ctx, x).digits()) << '\n';
}

SetIndicator read_set_text(std::istream& is) {
  // keep a leading provenance comment if present
  std::string source;
  if (is.peek() == '#') {
    std::string first;
    std::getline(is, first);
    const std::string tag = "# source: ";
    if (first.rfind(tag, 0) == 0) source = first.substr(tag.size());
  }
  const auto ctx = read_header(is, nullptr);
  SetIndicator A(ctx);
  std::string line;
  while (next_line(is, line)) A.insert(GroupElement(ctx, parse_digits(line, ctx)).index());
  A.set_source(source);
  return A;
}

void write_set_binary(std::ostream& os, const SetIndicator& A) {
  const auto& ctx = A.context();
  if (ctx.p() != 2) throw IoError("binary set format requires p = 2");
  os.write("SRL2", 4);
  const std::uint32_t n = ctx.n();
  for (int i = 0; i < 4; ++i) os.put(static_cast<char>((n >> (8 * i)) & 0xFF));
  const Index bytes = (ctx.order() + 7) / 8;
  const auto words = A.words();
  for (Index b = 0; b < bytes; ++b) os.put(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFF));
}

SetIndicator read_set_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != "SRL2") throw IoError("bad magic, expected SRL2");
  unsigned char nb[4];
  if (!is.read(reinterpret_cast<char*>(nb), 4)) throw IoError("truncated header");
  const std::uint32_t n = nb[0] | (nb[1] << 8) | (nb[2] << 16) | (static_cast<std::uint32_t>(nb[3]) << 24);
  GroupContext ctx;
  try {
    ctx = GroupContext::make(2, n);
  } catch (const Error& e) {
    throw IoError(e.what());
  }
  SetIndicator A(ctx);
  const Index bytes = (ctx.order() + 7) / 8;
  std::vector<unsigned char> buf(bytes);
  if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes))) throw IoError("truncated bit array");
  for (Index x = 0; x < ctx.order(); ++x)
    if (buf[x / 8] >> (x % 8) & 1) A.insert(x);
  return A;
}

SetIndicator read_set(std::istream& is) {
  char head[4] = {};
  is.read(head, 4);
  const bool binary = is.gcount() == 4 && std::string(head, 4) == "SRL2";
  is.clear();
  is.seekg(0);
  return binary ? read_set_binary(is) : read_set_text(is);
}

SetIndicator load_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  auto A = read_set(in);
  if (A.source().empty()) A.set_source("file:" + path);
  return A;
}

void save_set(const std::string& path, const SetIndicator& A, bool binary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  if (binary)
    write_set_binary(out, A);
  else
    write_set_text(out, A);
}

void write_witness(std::ostream& os, const OrderWitness& w, const std::string& source) {
  os << "order " << w.height() << '\n';
  if (!source.empty()) os << "source " << source << '\n';
  for (const auto& a : w.a) os << digits_of(a.digits()) << '\n';
  for (const auto& b : w.b) os << digits_of(b.digits()) << '\n';
}

void write_witness(std::ostream& os, const TreeWitness& w, const std::string& source) {
  os << "tree " << w.height << '\n';
  if (!source.empty()) os << "source " << source << '\n';
  for (const auto& [eta, a] : w.leaves) os << "eta " << eta << ' ' << digits_of(a.digits()) << '\n';
  for (const auto& [rho, b] : w.nodes) os << "rho " << (rho.empty() ? "-" : rho) << ' ' << digits_of(b.digits()) << '\n';
}

WitnessFile read_witness(std::istream& is, const GroupContext& ctx) {
  std::string line;
  if (!next_line(is, line)) throw IoError("empty witness file");
  std::istringstream head(line);
  std::string kind;
  unsigned size = 0;
  if (!(head >> kind >> size) || (kind != "order" && kind != "tree")) throw IoError("bad witness header '" + line + "'");
  WitnessFile f;
  std::vector<std::string> body;
  while (next_line(is, line)) {
    if (line.rfind("source ", 0) == 0 && body.empty() && f.source.empty()) {
      f.source = line.substr(7);
      continue;
    }
    body.push_back(line);
  }
  if (kind == "order") {
    if (body.size() != 2 * size) throw IoError("order witness needs " + std::to_string(2 * size) + " element lines");
    OrderWitness w;
    for (unsigned i = 0; i < size; ++i) w.a.emplace_back(ctx, parse_digits(body[i], ctx));
    for (unsigned i = 0; i < size; ++i) w.b.emplace_back(ctx, parse_digits(body[size + i], ctx));
    f.witness = std::move(w);
    return f;
  }
  if (size > 24) throw IoError("tree height too large");
  TreeWitness w;
  w.height = size;
  for (const auto& l : body) {
    std::istringstream in(l);
    std::string tag, bits;
    if (!(in >> tag >> bits)) throw IoError("bad tree line '" + l + "'");
    if (bits == "-") bits.clear();
    if (bits.find_first_not_of("01") != std::string::npos) throw IoError("bad binary string in '" + l + "'");
    GroupElement x(ctx, parse_digits(in, ctx, l));
    if (tag == "eta" && bits.size() == size)
      w.leaves.insert_or_assign(bits, x);
    else if (tag == "rho" && bits.size() < size)
      w.nodes.insert_or_assign(bits, x);
    else
      throw IoError("bad tree line '" + l + "'");
  }
  f.witness = std::move(w);
  return f;
}

Json to_json(const GroupElement& x) { return Json(std::vector<unsigned>(x.digits().begin(), x.digits().end())); }
Json to_json(const Functional& t) { return Json(std::vector<unsigned>(t.digits().begin(), t.digits().end())); }

Json to_json(const Subspace& H) {
  Json rows = Json::array();
  for (const auto& r : H.annihilator()) rows.push_back(to_json(r));
  return {{"p", H.context().p()}, {"n", H.context().n()}, {"codim", H.codim()}, {"annihilator", rows}};
}

Json to_json(const Magnitude& m) {
  Json j{{"value", m.to_string()}, {"level", m.level}, {"decimal_digits", m.digits().to_string()}};
  j["exact"] = m.exact.has_value();
  return j;
}

Json to_json(const OrderWitness& w) {
  Json a = Json::array(), b = Json::array();
  for (const auto& x : w.a) a.push_back(to_json(x));
  for (const auto& x : w.b) b.push_back(to_json(x));
  return {{"k", w.height()}, {"a", a}, {"b", b}};
}

Json to_json(const TreeWitness& w) {
  Json leaves = Json::object(), nodes = Json::object();
  for (const auto& [k, v] : w.leaves) leaves[k] = to_json(v);
  for (const auto& [k, v] : w.nodes) nodes[k.empty() ? "-" : k] = to_json(v);
  return {{"d", w.height}, {"leaves", leaves}, {"nodes", nodes}};
}

Json to_json(const CoverCertificate& c) {
  Json t = Json::array();
  for (const auto& g : c.translates) t.push_back(to_json(g));
  return {{"side", to_string(c.side)}, {"translates", t}};
}

Json to_json(const UniformityReport& r) {
  return {{"y", to_json(r.y)},
          {"sup_coeff", r.sup_coeff},
          {"argmax_t", to_json(r.argmax_t)},
          {"epsilon", r.epsilon},
          {"verdict", r.uniform() ? "uniform" : "non-uniform"}};
}

Json to_json(const GoodnessReport& r, bool per_coset) {
  Json j{{"subspace", to_json(r.H)}, {"epsilon", r.epsilon}, {"cosets", r.counts.size()}, {"bad", r.bad_count()}};
  j["verdict"] = r.good() ? "good" : "not-good";
  if (r.worst) {
    j["worst_y"] = to_json(decode(r.H.context(), r.reps[*r.worst]));
    j["worst_density"] = r.density(*r.worst);
  }
  if (per_coset) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < r.counts.size(); ++i)
      rows.push_back({{"y", to_json(decode(r.H.context(), r.reps[i]))},
                      {"density", r.density(i)},
                      {"verdict", to_string(r.verdicts[i])}});
    j["per_coset"] = rows;
  }
  return j;
}

Json to_json(const RefinementStep& s) {
  return {{"y", to_json(s.y)}, {"t", to_json(s.t)}, {"codim", s.codim}, {"sup_coeff", s.sup_coeff}};
}

Json to_json(const Anomaly& a) { return {{"kind", a.kind}, {"detail", a.detail}}; }

namespace {

template <class T>
Json list(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

}  // namespace

Json to_json(const GoodSubspace& g) {
  return {{"subspace", to_json(g.H)},
          {"epsilon", g.epsilon},
          {"report", to_json(g.report, g.report.counts.size() <= 64)},
          {"trace", list(g.trace)},
          {"anomalies", list(g.anomalies)}};
}

Json to_json(const FailureTrace& f) {
  Json j{{"reason", f.reason}, {"epsilon", f.epsilon}, {"subspace", to_json(f.H)}, {"trace", list(f.trace)}};
  if (f.blocking) j["blocking_goodness"] = to_json(*f.blocking, false);
  if (f.blocking_uniformity) j["blocking_uniformity"] = to_json(*f.blocking_uniformity);
  j["anomalies"] = list(f.anomalies);
  return j;
}

Json to_json(const TreeBuildInfo& info) {
  Json nodes = Json::array();
  for (const auto& [eta, n] : info.nodes)
    nodes.push_back({{"eta", eta.empty() ? "-" : eta},
                     {"codim", n.H.codim()},
                     {"g", to_json(n.g)},
                     {"x", to_json(n.x)},
                     {"X_size", n.x_set_size},
                     {"X_on_H", n.x_on_h}});
  Json c = Json::object();
  for (const auto& [eta, v] : info.c) c[eta] = to_json(v);
  return {{"k", info.k},         {"mu", info.mu},       {"working_epsilon", info.epsilon},
          {"theta", info.theta}, {"m", info.m},         {"height", info.height},
          {"levels_built", info.levels_built},          {"nodes", nodes},
          {"c", c},              {"checks", info.checks}, {"anomalies", list(info.anomalies)}};
}

Json to_json(const Inconclusive& i) {
  return {{"level", i.level}, {"node", i.node}, {"condition", i.condition}, {"build", to_json(i.info)}};
}

namespace {

Json variant_json(const VariantBudget& v) {
  Json f = Json::array();
  for (std::size_t i = 0; i < v.f_iterates.size(); ++i)
    f.push_back({{"i", static_cast<int>(i) - 1}, {"value", v.f_iterates[i].to_string()}});
  return {{"variant", to_string(v.variant)},
          {"f_iterates", f},
          {"D", to_json(v.D)},
          {"neg_log2_nominal_epsilon", to_json(v.neg_log2_epsilon)},
          {"m_nominal", to_json(v.m)},
          {"codim_bound", to_json(v.codim_bound)}};
}

}  // namespace

Json to_json(const StabilityBudget& b) {
  return {{"k", b.k},
          {"l", b.l},
          {"mu", b.mu},
          {"working_epsilon", b.epsilon},
          {"h", b.h.str()},
          {"d_max", b.d_max},
          {"m_working", b.m_working},
          {"text", variant_json(b.text)},
          {"statement", variant_json(b.statement)}};
}

Json to_json(const CosetApproximation& c) {
  return {{"cosets_in_I", c.labels.size()},
          {"X_size", c.X.size()},
          {"sym_diff", c.sym_diff},
          {"bound_asserted", c.bound_asserted}};
}

Json to_json(const PartitionReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back({{"i", x.i}, {"j", x.j}, {"delta", x.delta}});
  Json j{{"subspace", to_json(r.H)}, {"epsilon", r.epsilon}, {"parts", r.reps.size()}, {"violations", v}};
  if (r.reps.size() <= 16) j["table"] = r.table;
  return j;
}

Json to_json(const FixtureSpec& s) {
  Json claims = Json::array();
  for (const auto& c : s.claims) {
    Json j{{"claim", describe(c)}};
    if (const auto* w = std::get_if<ClaimOrderWitness>(&c)) {
      j["side"] = to_string(w->side);
      j["witness"] = to_json(w->witness);
    } else if (const auto* cv = std::get_if<ClaimCover>(&c)) {
      j["cover"] = to_json(cv->cover);
    }
    claims.push_back(j);
  }
  Json j{{"name", s.name}, {"p", s.p}, {"n", s.n}};
  if (s.seed) j["seed"] = *s.seed;
  j["extras"] = s.extras;
  j["claims"] = claims;
  return j;
}

}  // namespace srl
