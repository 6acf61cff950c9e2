#include "srl/fourier.hpp"

#include <cmath>
#include <numbers>

namespace srl {

namespace {

// One radix-p butterfly pass per coordinate; sign = +1 forward, -1 inverse.
void transform_in_place(const GroupContext& ctx, std::vector<Complex>& v, int sign) {
  const unsigned p = ctx.p();
  std::vector<Complex> twiddle(p);
  for (unsigned j = 0; j < p; ++j) {
    const double angle = sign * 2.0 * std::numbers::pi * j / p;
    twiddle[j] = {std::cos(angle), std::sin(angle)};
  }
  // exact values where they are known, so p = 2 stays a pure +-1 transform
  twiddle[0] = 1.0;

  const Index order = ctx.order();
  if (p == 2) {
    for (Index s = 1; s < order; s <<= 1)
      for (Index base = 0; base < order; base += 2 * s)
        for (Index off = 0; off < s; ++off) {
          const Complex a = v[base + off], b = v[base + off + s];
          v[base + off] = a + b;
          v[base + off + s] = a - b;
        }
    return;
  }
  std::vector<Complex> in(p), out(p);
  for (Index s = 1; s < order; s *= p)
    for (Index base = 0; base < order; base += s * p)
      for (Index off = 0; off < s; ++off) {
        for (unsigned j = 0; j < p; ++j) in[j] = v[base + off + j * s];
        for (unsigned t = 0; t < p; ++t) {
          Complex acc = 0;
          for (unsigned j = 0; j < p; ++j) acc += in[j] * twiddle[(j * t) % p];
          out[t] = acc;
        }
        for (unsigned t = 0; t < p; ++t) v[base + off + t * s] = out[t];
      }
}

void require_length(const GroupContext& ctx, std::size_t len) {
  ctx.require_dense();
  if (len != ctx.order()) throw Error("function length does not match p^n");
}

}  // namespace

DenseFunction DenseFunction::zeros(const GroupContext& ctx) {
  ctx.require_dense();
  return {ctx, std::vector<Complex>(ctx.order())};
}

DenseFunction DenseFunction::constant(const GroupContext& ctx, Complex c) {
  ctx.require_dense();
  return {ctx, std::vector<Complex>(ctx.order(), c)};
}

DenseFunction DenseFunction::indicator(const SetIndicator& A) {
  auto f = zeros(A.context());
  for (Index x : A.elements()) f.values[x] = 1.0;
  return f;
}

Complex DenseFunction::mean() const {
  Complex s = 0;
  for (auto v : values) s += v;
  return s / static_cast<double>(values.size());
}

double DenseFunction::mean_abs() const {
  double s = 0;
  for (auto v : values) s += std::abs(v);
  return s / static_cast<double>(values.size());
}

Spectrum dft(const DenseFunction& f) {
  require_length(f.context, f.values.size());
  Spectrum s{f.context, f.values};
  transform_in_place(f.context, s.values, +1);
  const double scale = 1.0 / static_cast<double>(f.context.order());
  for (auto& v : s.values) v *= scale;
  return s;
}

DenseFunction inverse_dft(const Spectrum& s) {
  require_length(s.context, s.values.size());
  DenseFunction f{s.context, s.values};
  transform_in_place(s.context, f.values, -1);
  return f;
}

double Energy::relative_gap() const {
  const double scale = std::max(std::abs(time), std::abs(spectral));
  return scale == 0 ? 0.0 : std::abs(time - spectral) / scale;
}

Energy parseval_energy(const DenseFunction& f) {
  Energy e;
  for (auto v : f.values) e.time += std::norm(v);
  e.time /= static_cast<double>(f.values.size());
  for (auto v : dft(f).values) e.spectral += std::norm(v);
  return e;
}

DenseFunction characteristic_measure(const SetIndicator& B) {
  if (B.empty()) throw Error("characteristic measure of the empty set is undefined");
  auto f = DenseFunction::zeros(B.context());
  const double w = static_cast<double>(B.context().order()) / static_cast<double>(B.size());
  for (Index x : B.elements()) f.values[x] = w;
  return f;
}

DenseFunction balanced_function(const SetIndicator& A, const Subspace& H, Index y) {
  require_same(A.context(), H.context());
  const auto& ctx = A.context();
  ctx.require_index(y);
  auto f = DenseFunction::zeros(ctx);
  const auto members = H.member_indices();
  Index hits = 0;
  for (Index h : members)
    if (A.contains(ctx.add(h, y))) ++hits;
  const double alpha = static_cast<double>(hits) / static_cast<double>(members.size());
  const double mu = static_cast<double>(ctx.order()) / static_cast<double>(members.size());
  for (Index h : members) f.values[h] = ((A.contains(ctx.add(h, y)) ? 1.0 : 0.0) - alpha) * mu;
  return f;
}

DenseFunction balanced_function(const SetIndicator& A, const Subspace& H, const GroupElement& y) {
  require_same(A.context(), y.context());
  return balanced_function(A, H, y.index());
}

}  // namespace srl
