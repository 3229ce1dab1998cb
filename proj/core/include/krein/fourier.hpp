#pragma once

#include "krein/grid.hpp"

#include <vector>

namespace krein {

enum class FourierDirection { forward, inverse };

/// Discrete version of fhat(xi) = int f(x) e^{-2 pi i x xi} dx (forward) and
/// fcheck(x) = int f(xi) e^{2 pi i x xi} dxi (inverse), with the grid spacing
/// as quadrature weight and phases matching the -Lambda origin.  The output
/// lives on the dual grid with half-width N/(4*Lambda); inverse(forward(f))
/// reproduces f on the original grid exactly up to roundoff.
GridFunction fourier_pair(const GridFunction& f, FourierDirection dir);

/// Hilbert transform via the multiplier -i*sign(xi), with sign(0) = 0.
GridFunction hilbert_transform(const GridFunction& f);

/// Fourier projection onto the band [a, b] in e^{i*lambda*s} units.
/// DFT bins landing exactly on a band endpoint receive weight 1/2.
GridFunction band_project(const GridFunction& f, double a, double b);

/// Pointwise multiplication by e^{i*lambda*r} on the grid nodes.
GridFunction modulate(const GridFunction& f, double r);

namespace detail {
/// Unnormalized in-place DFT, sign = -1 forward / +1 inverse convention
/// sum_j x_j e^{sign * 2 pi i jk / n}.  n must be a power of two.
void dft_pow2(std::vector<cplx>& data, int sign);

/// Raw frequency-domain coefficients c_k = DFT[(-1)^j f_j]_k so that the bin
/// k carries frequency s_k = pi (k - N/2) / Lambda.  apply_multiplier maps a
/// per-bin multiplier back to node space.  These conjugations are what
/// hilbert_transform and band_project are built from.
std::vector<cplx> to_bins(const GridFunction& f);
GridFunction from_bins(const LambdaGrid& grid, std::vector<cplx> bins);
} // namespace detail

} // namespace krein
