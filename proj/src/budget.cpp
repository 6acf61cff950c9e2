#include "srl/budget.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "srl/group.hpp"

namespace srl {

namespace {

constexpr long double kLevelCap = 1e300L;
const long double kLog2Cap = std::log2(kLevelCap);
constexpr unsigned kExactBits = 1u << 20;

Magnitude normalize(Magnitude m) {
  if (m.level == 0 && m.top > kLevelCap) {
    m.level = 1;
    m.top = std::log2(m.top);
  }
  while (m.level > 0 && m.top > kLevelCap) {
    ++m.level;
    m.top = std::log2(m.top);
  }
  while (m.level > 0 && m.top <= kLog2Cap) {
    --m.level;
    m.top = std::exp2(m.top);
  }
  return m;
}

long double to_long_double(const BigInt& v) {
  const auto bits = boost::multiprecision::msb(v);
  if (bits < 62) return static_cast<long double>(static_cast<std::uint64_t>(v));
  const unsigned shift = static_cast<unsigned>(bits) - 60;
  const auto head = static_cast<std::uint64_t>(v >> shift);
  return std::ldexp(static_cast<long double>(head), static_cast<int>(shift));
}

bool small_exact(const Magnitude& m) { return m.exact && boost::multiprecision::msb(*m.exact + 1) < kExactBits; }

}  // namespace

Magnitude Magnitude::of(const BigInt& v) {
  if (v <= 0) throw Error("magnitudes are positive");
  Magnitude m;
  m.exact = v;
  const auto bits = boost::multiprecision::msb(v);
  if (bits < 16000) {
    m.top = to_long_double(v);
    if (m.top <= kLevelCap) return m;
  }
  const unsigned shift = bits > 60 ? static_cast<unsigned>(bits) - 60 : 0;
  const auto head = static_cast<std::uint64_t>(v >> shift);
  m.level = 1;
  m.top = static_cast<long double>(shift) + std::log2(static_cast<long double>(head));
  auto n = normalize(m);
  n.exact = v;
  return n;
}

Magnitude Magnitude::of(long double v) {
  Magnitude m;
  m.top = v;
  return normalize(m);
}

Magnitude Magnitude::log2() const {
  if (level == 0) return of(std::log2(top));
  return normalize({level - 1, top, std::nullopt});
}

Magnitude Magnitude::exp2() const {
  if (level == 0 && top >= 0 && top < kExactBits && top == std::floor(top)) return of(BigInt(1) << static_cast<unsigned>(top));
  if (level == 0) return normalize({1, top, std::nullopt});
  return normalize({level + 1, top, std::nullopt});
}

Magnitude Magnitude::digits() const {
  if (exact && level == 0) return of(BigInt(exact->str().size()));
  if (exact && small_exact(*this)) return of(BigInt(exact->str().size()));
  if (level == 0) return of(std::floor(std::log10(top)) + 1);
  auto lg = log2();
  // log10(v) = log2(v) * log10(2)
  auto l10 = mul(lg, of(std::log10(2.0L)));
  if (l10.level == 0) return of(std::floor(l10.top) + 1);
  return l10;
}

std::string Magnitude::to_string() const {
  if (exact && boost::multiprecision::msb(*exact) < 512) return exact->str();
  std::ostringstream os;
  os << std::setprecision(10);
  if (level == 0) {
    os << top;
    return os.str();
  }
  for (unsigned i = 0; i < level; ++i) os << "2^(";
  os << top;
  for (unsigned i = 0; i < level; ++i) os << ")";
  return os.str();
}

bool operator<(const Magnitude& a, const Magnitude& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  if (a.level != b.level) return a.level < b.level;
  return a.top < b.top;
}

Magnitude add(const Magnitude& a, const Magnitude& b) {
  if (a.exact && b.exact) return Magnitude::of(*a.exact + *b.exact);
  const Magnitude& hi = (a < b) ? b : a;
  const Magnitude& lo = (a < b) ? a : b;
  if (hi.level == 0) return Magnitude::of(hi.top + lo.top);
  if (hi.level == 1) {
    // hi = 2^T; lo / hi = 2^(log2(lo) - T)
    const long double lo_log = lo.level == 0 ? std::log2(std::fabs(lo.top)) : lo.top;
    const long double ratio = std::exp2(lo_log - hi.top) * (lo.level == 0 && lo.top < 0 ? -1 : 1);
    return normalize({1, hi.top + std::log1p(ratio) / std::log(2.0L), std::nullopt});
  }
  return {hi.level, hi.top, std::nullopt};
}

Magnitude mul(const Magnitude& a, const Magnitude& b) {
  if (small_exact(a) && small_exact(b)) return Magnitude::of(*a.exact * *b.exact);
  if (a.level == 0 && b.level == 0) return Magnitude::of(a.top * b.top);
  return add(a.log2(), b.log2()).exp2();
}

BigInt h_bound(const BigInt& k, const BigInt& l) {
  const BigInt s = k + l;
  if (s < 0 || s >= kExactBits) throw Error("h(k, l) too large for exact evaluation");
  return s * (BigInt(1) << static_cast<unsigned>(s)) + 1;
}

Magnitude h_bound(unsigned c, const Magnitude& y) {
  if (small_exact(y) && *y.exact + c < kExactBits) return Magnitude::of(h_bound(BigInt(c), *y.exact));
  // log2 h = s + log2 s, s = c + y
  const auto s = add(y, Magnitude::of(static_cast<long double>(c)));
  return add(s, s.log2()).exp2();
}

const char* to_string(FVariant v) { return v == FVariant::text ? "text: f_k(y)=h(k+1,y)" : "statement: f_k(y)=h(k,y)"; }

unsigned d_max(unsigned k) {
  if (k < 2 || k > 28) throw Error("k must lie in [2, 28]");
  return (1u << (k + 2)) - 3;
}

Magnitude f_iterate(unsigned k, int i, FVariant v) {
  if (i < -1) throw Error("f iterates start at -1");
  if (i == -1) return Magnitude::of(BigInt(2));
  Magnitude y = Magnitude::of(BigInt(k));
  const unsigned c = v == FVariant::text ? k + 1 : k;
  for (int j = 0; j < i; ++j) y = h_bound(c, y);
  return y;
}

namespace {

VariantBudget variant_budget(unsigned k, unsigned d, double mu, FVariant v) {
  VariantBudget out;
  out.variant = v;
  out.f_iterates.push_back(Magnitude::of(BigInt(2)));
  Magnitude y = Magnitude::of(BigInt(k));
  out.f_iterates.push_back(y);
  const unsigned c = v == FVariant::text ? k + 1 : k;
  for (unsigned j = 0; j < d; ++j) {
    y = h_bound(c, y);
    out.f_iterates.push_back(y);
  }
  out.D = y;
  const long double log_ratio = std::log2(4.0L / mu);
  const auto first = mul(Magnitude::of(2 * log_ratio), out.D);
  const auto second = mul(Magnitude::of(2.0L), mul(out.D, out.D));
  out.neg_log2_epsilon = first < second ? second : first;
  out.m = add(out.neg_log2_epsilon, Magnitude::of(1.0L)).exp2();
  const auto lead = Magnitude::of(1.0L + std::log2(static_cast<long double>(d)));
  const auto c1 = add(first, lead).exp2();
  const auto c2 = add(second, lead).exp2();
  out.codim_bound = c1 < c2 ? c2 : c1;
  return out;
}

}  // namespace

StabilityBudget budget_eval(unsigned k, unsigned l, double mu, double epsilon) {
  if (k < 2) throw Error("budgets need k >= 2");
  if (!(mu > 0 && mu < 1)) throw Error("mu must lie in (0, 1)");
  if (!(epsilon > 0 && epsilon <= 1)) throw Error("epsilon must lie in (0, 1]");
  StabilityBudget b;
  b.k = k;
  b.l = l;
  b.mu = mu;
  b.epsilon = epsilon;
  b.h = h_bound(BigInt(k), BigInt(l));
  b.d_max = d_max(k);
  b.m_working = static_cast<unsigned>(std::floor(2.0 / epsilon));
  b.text = variant_budget(k, b.d_max, mu, FVariant::text);
  b.statement = variant_budget(k, b.d_max, mu, FVariant::statement);
  return b;
}

}  // namespace srl
