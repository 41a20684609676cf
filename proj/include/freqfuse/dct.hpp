#pragma once

#include "freqfuse/matrix.hpp"

namespace freqfuse {

// C(0) = 1/sqrt(2), C(k) = 1 for k != 0.
double normalization_coefficient(int index);

// Forward 2-D DCT via the separable fast path: a direct O(n^2) 1-D DCT-II is
// applied to every row, then to every column of the intermediate, giving
// O(H*W*(H+W)) overall. Summation order per output element is fixed, so
// results are bitwise reproducible.
//
// Orthonormal: F(u,v) = (2/sqrt(N*M)) C(u) C(v) sum_x sum_y f(x,y) cos cos
// PaperQuarter: same with a 1/4 prefactor instead.
// u in [0,N) indexes horizontal frequency (N = width), v in [0,M) vertical.
Spectrum dct2_forward(const GrayMatrix& image, ScalingMode mode);

// Inverse 2-D DCT, separable as above. `mode` must equal spectrum.scaling;
// a mismatch signals a pipeline wiring bug and throws.
// For Orthonormal, dct2_inverse(dct2_forward(x)) == x to ~1e-12.
GrayMatrix dct2_inverse(const Spectrum& spectrum, ScalingMode mode);

// Literal quadruple-loop evaluation of the forward/inverse transform, kept
// deliberately independent of the separable path for equivalence testing.
// Guarded to height*width <= 64*64 because of the quartic cost.
Spectrum dct2_naive_oracle(const GrayMatrix& image, ScalingMode mode);
GrayMatrix idct2_naive_oracle(const Spectrum& spectrum, ScalingMode mode);

}  // namespace freqfuse
