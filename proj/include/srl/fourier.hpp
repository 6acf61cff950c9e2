#pragma once

#include <complex>
#include <vector>

#include "srl/group.hpp"
#include "srl/set.hpp"

namespace srl {

using Complex = std::complex<double>;

// f : F_p^n -> C, values indexed by the element codec.
struct DenseFunction {
  GroupContext context;
  std::vector<Complex> values;

  static DenseFunction zeros(const GroupContext& ctx);
  static DenseFunction constant(const GroupContext& ctx, Complex c);
  static DenseFunction indicator(const SetIndicator& A);
  double mean_abs() const;
  Complex mean() const;
};

// Fourier coefficients indexed by the functional codec.
struct Spectrum {
  GroupContext context;
  std::vector<Complex> values;
};

// f^(t) = E_x f(x) w^(x.t), w = exp(2 pi i / p). Radix-p butterfly, O(n p^(n+1)).
Spectrum dft(const DenseFunction& f);
// f(x) = sum_t f^(t) w^(-x.t)
DenseFunction inverse_dft(const Spectrum& s);

struct Energy {
  double time = 0;      // E_x |f(x)|^2
  double spectral = 0;  // sum_t |f^(t)|^2
  double relative_gap() const;
};
Energy parseval_energy(const DenseFunction& f);

// mu_B = (|G|/|B|) 1_B
DenseFunction characteristic_measure(const SetIndicator& B);

// f^y_{H,A}(x) = (1_{(A-y)∩H}(x) - alpha_{y+H}) mu_H(x)
DenseFunction balanced_function(const SetIndicator& A, const Subspace& H, const GroupElement& y);
DenseFunction balanced_function(const SetIndicator& A, const Subspace& H, Index y);

}  // namespace srl
