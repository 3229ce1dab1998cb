#include "krein/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace krein {

namespace {

// signed moments of |t|^e against 1 and t over [t0, t1] (t0 <= t1, may cross 0)
double power_m0(double e, double t0, double t1) {
    auto prim = [e](double t) { return std::pow(std::abs(t), e + 1.0) / (e + 1.0); };
    if (t0 >= 0) return prim(t1) - prim(t0);
    if (t1 <= 0) return prim(t0) - prim(t1);
    return prim(t0) + prim(t1);
}
double power_m1(double e, double t0, double t1) {
    auto prim = [e](double t) { return std::pow(std::abs(t), e + 2.0) / (e + 2.0); };
    if (t0 >= 0) return prim(t1) - prim(t0);
    if (t1 <= 0) return -(prim(t0) - prim(t1));
    return prim(t1) - prim(t0);
}
// antiderivatives of log|t| and t log|t| (continuous across 0)
double log_prim0(double t) { return t == 0.0 ? 0.0 : t * std::log(std::abs(t)) - t; }
double log_prim1(double t) { return t == 0.0 ? 0.0 : 0.5 * t * t * std::log(std::abs(t)) - 0.25 * t * t; }

template <typename T>
bool finite(const T& x) {
    if constexpr (std::is_same_v<T, double>)
        return std::isfinite(x);
    else
        return std::isfinite(x.real()) && std::isfinite(x.imag());
}

// Cell [x0, x1] near the singular point s; cofactor linear model built from
// the node array so a node sitting exactly on the center is never read.
template <typename T>
T moment_cell(const SingularCell& s, double x0, double x1, std::span<const T> h,
              std::size_t j0, std::size_t j1, double dl) {
    if (s.exponent <= -1.0) throw NonFinite("local exponent <= -1 is not integrable");
    const double tiny = 1e-10 * dl;
    double t0 = x0 - s.center, t1 = x1 - s.center;

    if (s.log_coeff != 0.0) {
        // integrand = smooth + L log|t|
        auto smooth = [&](std::size_t j, double t) { return h[j] - T(s.log_coeff * std::log(std::abs(t))); };
        T m0, m1;
        double u0 = t0, u1 = t1;
        if (std::abs(t0) <= tiny) {
            m0 = smooth(j1, t1);
            m1 = smooth(std::min(j1 + 1, h.size() - 1), t1 + dl);
            u0 = t1;
            u1 = t1 + dl;
        } else if (std::abs(t1) <= tiny) {
            m1 = smooth(j0, t0);
            m0 = smooth(j0 == 0 ? 0 : j0 - 1, t0 - dl);
            u0 = t0 - dl;
            u1 = t0;
        } else {
            m0 = smooth(j0, t0);
            m1 = smooth(j1, t1);
        }
        T slope = (u1 > u0) ? (m1 - m0) / (u1 - u0) : T(0.0);
        T alpha = m0 - slope * u0;
        double a = std::max(t0, std::abs(t0) <= tiny ? 0.0 : t0);
        double b = std::abs(t1) <= tiny ? 0.0 : t1;
        if (std::abs(t0) <= tiny) a = 0.0;
        if (std::abs(t1) <= tiny) b = 0.0;
        if (a == 0.0) a = std::abs(t0) <= tiny ? 0.0 : t0;
        double lo = (std::abs(t0) <= tiny) ? 0.0 : t0;
        double hi = (std::abs(t1) <= tiny) ? 0.0 : t1;
        T lin = alpha * (hi - lo) + slope * 0.5 * (hi * hi - lo * lo);
        double lg0 = log_prim0(hi) - log_prim0(lo);
        (void)m1;
        (void)a;
        (void)b;
        return lin + T(s.log_coeff * lg0);
    }

    const double e = s.exponent;
    T k0, k1;
    double u0 = t0, u1 = t1;
    if (std::abs(t0) <= tiny) {
        // right cell with the center on its left endpoint: extrapolate inward
        k0 = h[j1] / std::pow(std::abs(t1), e);
        std::size_t j2 = std::min(j1 + 1, h.size() - 1);
        k1 = h[j2] / std::pow(std::abs(t1) + dl, e);
        u0 = t1;
        u1 = t1 + dl;
        t0 = 0.0;
    } else if (std::abs(t1) <= tiny) {
        k1 = h[j0] / std::pow(std::abs(t0), e);
        std::size_t jm = j0 == 0 ? 0 : j0 - 1;
        k0 = h[jm] / std::pow(std::abs(t0) + dl, e);
        u0 = t0 - dl;
        u1 = t0;
        t1 = 0.0;
    } else {
        k0 = h[j0] / std::pow(std::abs(t0), e);
        k1 = h[j1] / std::pow(std::abs(t1), e);
    }
    T slope = (u1 > u0) ? (k1 - k0) / (u1 - u0) : T(0.0);
    T alpha = k0 - slope * u0;
    return alpha * power_m0(e, t0, t1) + slope * power_m1(e, t0, t1);
}

template <typename T>
T integrate_grid_impl(const LambdaGrid& g, std::span<const T> h, std::span<const SingularCell> sing) {
    const auto n = static_cast<std::size_t>(g.size());
    const double dl = g.spacing();
    const int adapt_cells = 8;
    T total{};
    for (std::size_t j = 0; j < n; ++j) {
        double x0 = g.node(static_cast<std::int64_t>(j));
        double x1 = x0 + dl;
        std::size_t j1 = (j + 1 < n) ? j + 1 : 0; // wrap cell closes the window
        const SingularCell* near = nullptr;
        double best = 0.0;
        for (const auto& s : sing) {
            double mid = 0.5 * (x0 + x1);
            double d = std::abs(mid - s.center);
            double win = std::min(s.window, adapt_cells * dl);
            if (d <= std::max(win, 0.51 * dl) && (!near || d < best)) {
                near = &s;
                best = d;
            }
        }
        if (near && j + 1 < n) {
            total += moment_cell<T>(*near, x0, x1, h, j, j1, dl);
        } else {
            const T& h0 = h[j];
            const T& h1 = h[j1];
            if (!finite(h0) || !finite(h1)) throw NonFinite("non-finite integrand sample");
            total += (h0 + h1) * (0.5 * dl);
        }
    }
    return total;
}

// composite Simpson over [a, b] with m cells (m rounded up to even)
double simpson(const std::function<double(double)>& h, double a, double b, int m) {
    if (b <= a) return 0.0;
    m = std::max(2, m + (m & 1));
    double step = (b - a) / m;
    double acc = h(a) + h(b);
    for (int i = 1; i < m; ++i) acc += h(a + i * step) * ((i & 1) ? 4.0 : 2.0);
    return acc * step / 3.0;
}

// piece with a singular endpoint: geometric panels toward the center plus an
// exact-moment core cell
double singular_piece(const std::function<double(double)>& h, const SingularCell& s, double from,
                      double to, bool center_at_from, int cells) {
    double len = to - from;
    if (len <= 0) return 0.0;
    const int levels = 50;
    double total = 0.0;
    double outer = len;
    for (int g = 0; g < levels - 1; ++g) {
        double inner = outer * 0.5;
        double a = center_at_from ? from + inner : to - outer;
        double b = center_at_from ? from + outer : to - inner;
        total += simpson(h, a, b, std::max(8, cells / 16));
        outer = inner;
        if (outer < 1e-15 * len) break;
    }
    // innermost cell: |t|^e (or log) against a linear model of the smooth part
    double l = outer;
    double c = s.center;
    auto t_of = [&](double frac) { return center_at_from ? from + frac * l - c + (from - c) * 0 : to - l + frac * l - c; };
    double ta = center_at_from ? (from - c) : (to - l - c);
    double tb = center_at_from ? (from + l - c) : (to - c);
    (void)t_of;
    double t1 = center_at_from ? tb : ta;     // far endpoint (nonzero)
    double tm = 0.5 * (ta + tb);              // middle sample
    double sgn = center_at_from ? 1.0 : -1.0; // direction away from center
    (void)sgn;
    if (s.log_coeff != 0.0) {
        double m1 = h(c + t1) - s.log_coeff * std::log(std::abs(t1));
        double mm = h(c + tm) - s.log_coeff * std::log(std::abs(tm));
        double slope = (m1 - mm) / (t1 - tm);
        double alpha = mm - slope * tm;
        double lo = std::min(0.0, std::min(ta, tb)), hi = std::max(0.0, std::max(ta, tb));
        lo = center_at_from ? 0.0 : ta;
        hi = center_at_from ? tb : 0.0;
        total += alpha * (hi - lo) + slope * 0.5 * (hi * hi - lo * lo) +
                 s.log_coeff * (log_prim0(hi) - log_prim0(lo));
    } else {
        double e = s.exponent;
        if (e <= -1.0) throw NonFinite("local exponent <= -1 is not integrable");
        double k1 = h(c + t1) / std::pow(std::abs(t1), e);
        double km = h(c + tm) / std::pow(std::abs(tm), e);
        double slope = (k1 - km) / (t1 - tm);
        double alpha = km - slope * tm;
        double lo = center_at_from ? 0.0 : ta;
        double hi = center_at_from ? tb : 0.0;
        total += alpha * power_m0(e, lo, hi) + slope * power_m1(e, lo, hi);
    }
    return total;
}

} // namespace

double integrate_grid(const LambdaGrid& g, std::span<const double> h,
                      std::span<const SingularCell> sing) {
    return integrate_grid_impl<double>(g, h, sing);
}
cplx integrate_grid(const LambdaGrid& g, std::span<const cplx> h,
                    std::span<const SingularCell> sing) {
    return integrate_grid_impl<cplx>(g, h, sing);
}

double integrate_interval(const std::function<double(double)>& h, double a, double b,
                          std::span<const SingularCell> sing, std::span<const double> breaks,
                          int cells) {
    if (b <= a) return 0.0;
    std::vector<double> cuts{a, b};
    for (double x : breaks)
        if (x > a && x < b) cuts.push_back(x);
    for (const auto& s : sing)
        if (s.center > a && s.center < b) cuts.push_back(s.center);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double tol = 1e-12 * (b - a);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double u = cuts[i], v = cuts[i + 1];
        const SingularCell* at_u = nullptr;
        const SingularCell* at_v = nullptr;
        for (const auto& s : sing) {
            if (std::abs(s.center - u) <= tol) at_u = &s;
            if (std::abs(s.center - v) <= tol) at_v = &s;
        }
        int m = std::max(8, static_cast<int>(std::lround(cells * (v - u) / (b - a))));
        if (at_u && at_v) {
            double mid = 0.5 * (u + v);
            total += singular_piece(h, *at_u, u, mid, true, m);
            total += singular_piece(h, *at_v, mid, v, false, m);
        } else if (at_u) {
            total += singular_piece(h, *at_u, u, v, true, m);
        } else if (at_v) {
            total += singular_piece(h, *at_v, u, v, false, m);
        } else {
            total += simpson(h, u, v, m);
        }
    }
    return total;
}

double weighted_lp_norm(const GridFunction& f, const Weight& w, double p, double q) {
    if (!(p >= 1.0)) throw BadParameter("lp norm needs p >= 1");
    if (!(q >= 0.0)) throw BadParameter("lp norm needs q >= 0");
    const auto& g = f.grid;
    std::vector<double> h(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        double lam = g.node(static_cast<std::int64_t>(j));
        double mu = q == 0.0 ? 1.0 : std::pow(1.0 + lam * lam, 0.5 * q);
        h[j] = std::pow(std::abs(f[j]), p) * w(lam) * mu;
    }
    std::vector<SingularCell> sing;
    for (const auto& s : w.singularities()) sing.push_back({s.center, s.beta, 0.0, s.scale});
    double total = integrate_grid(g, h, sing);
    double out = std::pow(total, 1.0 / p);
    if (!std::isfinite(out)) throw NonFinite("weighted norm is not finite");
    return out;
}

cplx sigma_inner_product(const GridFunction& f, const GridFunction& g, const Weight& w) {
    require_same_grid(f, g);
    std::vector<cplx> h(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
        double lam = f.grid.node(static_cast<std::int64_t>(j));
        h[j] = f[j] * std::conj(g[j]) * w(lam);
    }
    std::vector<SingularCell> sing;
    for (const auto& s : w.singularities()) sing.push_back({s.center, s.beta, 0.0, s.scale});
    return integrate_grid(f.grid, h, sing) / (2.0 * M_PI);
}

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double gl_x[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272, -0.7244177313601701,
    -0.5709721726085388, -0.3941513470775634, -0.2011940939974345, 0.0,
    0.2011940939974345,  0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double gl_w[15] = {
    0.03075324199611727, 0.07036604748810812, 0.10715922046717194, 0.13957067792615432,
    0.16626920581699392, 0.18616100001556221, 0.19843148532711158, 0.20257824192556127,
    0.19843148532711158, 0.18616100001556221, 0.16626920581699392, 0.13957067792615432,
    0.10715922046717194, 0.07036604748810812, 0.03075324199611727};

// int_a^b e^{i x l} dl, stable for all x
cplx unit_oscillatory(double a, double b, double x) {
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    double arg = x * half;
    double s = std::abs(arg) < 1e-8 ? 1.0 - arg * arg / 6.0 : std::sin(arg) / arg;
    return (b - a) * s * std::polar(1.0, x * mid);
}

cplx gl_panel(const Weight& w, double a, double b, double x) {
    cplx acc = 0.0;
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < 15; ++i) {
        double lam = mid + half * gl_x[i];
        acc += gl_w[i] * w.deviation(lam) * std::polar(1.0, x * lam);
    }
    return acc * half;
}

cplx osc_smooth_piece(const Weight& w, double u, double v, double x) {
    double target = std::min({v - u, 0.5, M_PI / (2.0 * (std::abs(x) + 1.0))});
    int panels = std::max(1, static_cast<int>(std::ceil((v - u) / target)));
    cplx acc = 0.0;
    double step = (v - u) / panels;
    for (int i = 0; i < panels; ++i) acc += gl_panel(w, u + i * step, u + (i + 1) * step, x);
    return acc;
}

// geometric panels toward a singular endpoint, exact power moments with a
// phase-carrying linear cofactor model on the innermost cell
cplx osc_singular_piece(const Weight& w, const Singularity& s, std::size_t sing_index, double from,
                        double to, bool center_at_from, double x) {
    double len = to - from;
    if (len <= 0) return 0.0;
    cplx total = 0.0;
    double outer = len;
    for (int g = 0; g < 52; ++g) {
        double inner = outer * 0.5;
        double a = center_at_from ? from + inner : to - outer;
        double b = center_at_from ? from + outer : to - inner;
        total += osc_smooth_piece(w, a, b, x);
        outer = inner;
        if (outer < 1e-15 * len) break;
    }
    double l = outer;
    double c = s.center;
    double lo = center_at_from ? 0.0 : (to - l - c) - l * 0 - (to - c) + (to - c) - l; // [-l, 0]
    lo = center_at_from ? 0.0 : -l;
    double hi = center_at_from ? l : 0.0;
    // w * e^{ixl} = |t/scale|^beta * F(t), F = cofactor * e^{ix(c+t)} smooth
    auto F = [&](double t) { return cplx(w.cofactor(sing_index, c + t)) * std::polar(1.0, x * (c + t)); };
    double tq1 = center_at_from ? l / 3.0 : -l / 3.0;
    double tq2 = center_at_from ? 2.0 * l / 3.0 : -2.0 * l / 3.0;
    cplx f1 = F(tq1), f2 = F(tq2);
    cplx slope = (f2 - f1) / (tq2 - tq1);
    cplx alpha = f1 - slope * tq1;
    double sb = std::pow(s.scale, -s.beta);
    cplx core = sb * (alpha * power_m0(s.beta, lo, hi) + slope * power_m1(s.beta, lo, hi));
    // subtract the "-1" part of (w - 1) over the innermost cell
    core -= unit_oscillatory(c + lo, c + hi, x);
    return total + core;
}

} // namespace

cplx fourier_deviation_integral(const Weight& w, double x, double half_width) {
    const double a = -half_width, b = half_width;
    std::vector<double> cuts{a, b};
    for (double br : w.breakpoints())
        if (br > a && br < b) cuts.push_back(br);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto& sing = w.singularities();
    const double tol = 1e-12 * (b - a);
    cplx total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double u = cuts[i], v = cuts[i + 1];
        const Singularity* at_u = nullptr;
        const Singularity* at_v = nullptr;
        std::size_t iu = 0, iv = 0;
        for (std::size_t k = 0; k < sing.size(); ++k) {
            if (std::abs(sing[k].center - u) <= tol) {
                at_u = &sing[k];
                iu = k;
            }
            if (std::abs(sing[k].center - v) <= tol) {
                at_v = &sing[k];
                iv = k;
            }
        }
        if (at_u && at_v) {
            double mid = 0.5 * (u + v);
            total += osc_singular_piece(w, *at_u, iu, u, mid, true, x);
            total += osc_singular_piece(w, *at_v, iv, mid, v, false, x);
        } else if (at_u) {
            total += osc_singular_piece(w, *at_u, iu, u, v, true, x);
        } else if (at_v) {
            total += osc_singular_piece(w, *at_v, iv, u, v, false, x);
        } else {
            total += osc_smooth_piece(w, u, v, x);
        }
    }
    if (!std::isfinite(total.real()) || !std::isfinite(total.imag()))
        throw NonFinite("fourier integral of the deviation is not finite");
    return total;
}

std::vector<cplx> oscillatory_sum(std::span<const cplx> v, double ds, int sign,
                                  const LambdaGrid& g, bool endpoint_correction) {
    const auto n = v.size();
    const auto nl = static_cast<std::size_t>(g.size());
    std::vector<cplx> out(nl, cplx(0.0));
    if (n == 0) return out;
    if (n == 1) return out; // r = 0: empty integral

    const double sgn = sign >= 0 ? 1.0 : -1.0;
    const double lam0 = g.node(0);
    const double dlam = g.spacing();
    for (std::size_t j = 0; j < n; ++j) {
        double s = static_cast<double>(j) * ds;
        double wq = (j == 0 || j + 1 == n) ? 0.5 * ds : ds;
        cplx coef = v[j] * wq;
        cplx phase = std::polar(1.0, sgn * lam0 * s);
        cplx rot = std::polar(1.0, sgn * dlam * s);
        for (std::size_t k = 0; k < nl; ++k) {
            out[k] += coef * phase;
            phase *= rot;
        }
    }

    if (endpoint_correction && n >= 5) {
        // trapezoid EM term: -(ds^2/12) [f'(r) - f'(0)], f = v e^{i sgn lam s}
        auto d1 = [&](bool at_end) {
            static const double c[5] = {-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25};
            cplx acc = 0.0;
            for (int i = 0; i < 5; ++i)
                acc += c[i] * (at_end ? v[n - 1 - static_cast<std::size_t>(i)] : v[static_cast<std::size_t>(i)]);
            return (at_end ? -acc : acc) / ds;
        };
        cplx v0 = v[0], ve = v[n - 1];
        cplx d0 = d1(false), de = d1(true);
        double r = static_cast<double>(n - 1) * ds;
        const double fac = ds * ds / 12.0;
        for (std::size_t k = 0; k < nl; ++k) {
            double lam = g.node(static_cast<std::int64_t>(k));
            cplx il(0.0, sgn * lam);
            cplx er = std::polar(1.0, sgn * lam * r);
            out[k] -= fac * ((de + il * ve) * er - (d0 + il * v0));
        }
    }
    return out;
}

} // namespace krein
