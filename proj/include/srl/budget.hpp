#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace srl {

using BigInt = boost::multiprecision::cpp_int;

// A positive quantity too large for native types: value = 2^2^...^top with
// `level` exponentiations. Level 0 keeps `top` <= 1e300; a level L > 0 value
// always exceeds 1e300, so (level, top) orders magnitudes. `exact` is set
// while the value still fits comfortably.
struct Magnitude {
  unsigned level = 0;
  long double top = 0;
  std::optional<BigInt> exact;

  static Magnitude of(const BigInt& v);
  static Magnitude of(long double v);

  // log2 of the value (loses `exact`)
  Magnitude log2() const;
  Magnitude exp2() const;
  // decimal digit count of the integer part
  Magnitude digits() const;

  std::string to_string() const;
  friend bool operator<(const Magnitude& a, const Magnitude& b);
};

Magnitude add(const Magnitude& a, const Magnitude& b);
Magnitude mul(const Magnitude& a, const Magnitude& b);

// h(k, l) = (k + l) 2^(k + l) + 1
BigInt h_bound(const BigInt& k, const BigInt& l);
// h(c, y) for a magnitude y
Magnitude h_bound(unsigned c, const Magnitude& y);

enum class FVariant {
  text,       // f_k(y) = h(k+1, y)
  statement,  // f_k(y) = h(k, y)
};
const char* to_string(FVariant v);

struct VariantBudget {
  FVariant variant = FVariant::text;
  std::vector<Magnitude> f_iterates;  // f^-1(k), f^0(k), ..., f^dmax(k)
  Magnitude D;
  Magnitude neg_log2_epsilon;  // -log2 of min{(mu/4)^(2D), 4^(-D^2)}
  Magnitude m;                 // floor(2 / epsilon)
  Magnitude codim_bound;       // max{d floor(2 (4/mu)^(2D)), d floor(2 4^(D^2))}

  const Magnitude& f(int i) const { return f_iterates.at(static_cast<std::size_t>(i + 1)); }
};

struct StabilityBudget {
  unsigned k = 2;
  unsigned l = 2;
  double mu = 0.1;
  double epsilon = 0.1;  // the caller's working epsilon
  BigInt h;              // h(k, l)
  unsigned d_max = 0;    // 2^(k+2) - 3
  unsigned m_working = 0;  // floor(2 / epsilon) at the working epsilon
  VariantBudget text;
  VariantBudget statement;
};

unsigned d_max(unsigned k);
Magnitude f_iterate(unsigned k, int i, FVariant v);

StabilityBudget budget_eval(unsigned k, unsigned l, double mu, double epsilon);

}  // namespace srl
