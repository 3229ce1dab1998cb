#pragma once

#include "krein/grid.hpp"
#include "krein/weight.hpp"

#include <functional>
#include <span>

namespace krein {

/// Local structure of an integrand near `center`:
///   exponent != 0: integrand = |l - center|^exponent * (smooth cofactor)
///   log_coeff != 0: integrand = log_coeff * log|l - center| + smooth
/// Cells near such a point are integrated by exact local moments against a
/// linear model of the smooth part; exponent must be > -1.
struct SingularCell {
    double center;
    double exponent = 0.0;
    double log_coeff = 0.0;
    double window = 0.5; // half-width within which the local model is valid
};

/// Integral over the grid window [-L, L] of node samples h (trapezoid cells,
/// periodic wrap cell, moment cells near the singular centers).
double integrate_grid(const LambdaGrid& g, std::span<const double> h,
                      std::span<const SingularCell> sing);
cplx integrate_grid(const LambdaGrid& g, std::span<const cplx> h,
                    std::span<const SingularCell> sing);

/// Closed-form integrand over [a, b]: cells split at breakpoints, geometric
/// refinement plus exact moments toward each singular center.  `cells` sets
/// the base resolution per smooth piece.
double integrate_interval(const std::function<double(double)>& h, double a, double b,
                          std::span<const SingularCell> sing, std::span<const double> breaks,
                          int cells = 256);

/// (int |f|^p w <l>^q dl)^(1/p) over the grid window, singularity-adapted.
double weighted_lp_norm(const GridFunction& f, const Weight& w, double p, double q);

/// (1/2pi) int f conj(g) w dl over the grid window.
cplx sigma_inner_product(const GridFunction& f, const GridFunction& g, const Weight& w);

/// int_{-L}^{L} (w(l) - 1) e^{i l x} dl to ~1e-12 absolute, resolved against
/// oscillation by Gauss-Legendre panels and exact singular moments.
cplx fourier_deviation_integral(const Weight& w, double x, double half_width);

/// Trapezoid sum of v_j e^{i sign lam s_j} ds on s_j = j ds, j = 0..n-1, with
/// an Euler-Maclaurin endpoint correction that keeps oscillatory quadrature
/// error at fourth order.  Used for P(r,lam), remainders, and their kin.
/// Output has one entry per lambda-grid node.
std::vector<cplx> oscillatory_sum(std::span<const cplx> v, double ds, int sign,
                                  const LambdaGrid& g, bool endpoint_correction = true);

} // namespace krein
