#pragma once

#include "krein/errors.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace krein {

using cplx = std::complex<double>;

inline bool is_pow2(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

/// Uniform grid on [-L, L) for the spatial variable.  Nodes are
/// lambda_j = -L + (j + offset) * dl, j = 0..N-1, with offset in {0, 1/2}.
/// The half-cell offset variant keeps nodes off weight singularities.
class LambdaGrid {
public:
    LambdaGrid(double half_width, std::int64_t n_points, double offset = 0.0)
        : half_width_(half_width), n_(n_points), offset_(offset) {
        if (!(half_width > 0)) throw BadParameter("lambda grid half_width must be positive");
        if (!is_pow2(n_points) || n_points < 16)
            throw BadParameter("lambda grid size must be a power of two >= 16");
        if (offset != 0.0 && offset != 0.5) throw BadParameter("grid offset must be 0 or 1/2");
        dl_ = 2.0 * half_width / static_cast<double>(n_);
    }

    double half_width() const { return half_width_; }
    std::int64_t size() const { return n_; }
    double spacing() const { return dl_; }
    double offset() const { return offset_; }
    double node(std::int64_t j) const { return -half_width_ + (static_cast<double>(j) + offset_) * dl_; }

    /// Largest band frequency representable on this grid, in e^{i*lambda*s} units.
    double nyquist_s() const { return M_PI * static_cast<double>(n_) / (2.0 * half_width_); }
    /// Band frequency of DFT bin k (k = 0..N-1), in e^{i*lambda*s} units.
    double bin_s(std::int64_t k) const {
        return M_PI * static_cast<double>(k - n_ / 2) / half_width_;
    }

    std::vector<double> nodes() const {
        std::vector<double> v(static_cast<std::size_t>(n_));
        for (std::int64_t j = 0; j < n_; ++j) v[static_cast<std::size_t>(j)] = node(j);
        return v;
    }

    bool operator==(const LambdaGrid& o) const {
        return half_width_ == o.half_width_ && n_ == o.n_ && offset_ == o.offset_;
    }
    bool operator!=(const LambdaGrid& o) const { return !(*this == o); }

private:
    double half_width_;
    std::int64_t n_;
    double offset_;
    double dl_;
};

/// Uniform grid 0, dr, 2*dr, ..., M*dr = R for the frequency variable r.
class RGrid {
public:
    RGrid(double step, double r_max) : dr_(step), rmax_(r_max) {
        if (!(step > 0)) throw BadParameter("r grid step must be positive");
        if (!(r_max >= step)) throw BadParameter("r grid needs R >= step");
        double m = r_max / step;
        m_ = static_cast<std::int64_t>(std::llround(m));
        if (m_ < 1 || std::abs(m - static_cast<double>(m_)) > 1e-9)
            throw BadParameter("R must be an integer multiple of the r step");
    }

    double step() const { return dr_; }
    double r_max() const { return rmax_; }
    std::int64_t segments() const { return m_; }         // M
    std::int64_t size() const { return m_ + 1; }         // number of nodes
    double node(std::int64_t i) const { return static_cast<double>(i) * dr_; }

    /// Nearest node index for a value expected to sit on the grid.
    std::int64_t index_of(double r) const {
        auto i = static_cast<std::int64_t>(std::llround(r / dr_));
        if (i < 0 || i > m_ || std::abs(r - node(i)) > 1e-9 * std::max(1.0, rmax_))
            throw GridMismatch("value is not a node of the r grid");
        return i;
    }

    bool operator==(const RGrid& o) const { return dr_ == o.dr_ && m_ == o.m_; }
    bool operator!=(const RGrid& o) const { return !(*this == o); }

private:
    double dr_;
    double rmax_;
    std::int64_t m_;
};

/// Complex samples bound to the lambda grid that produced them.
struct GridFunction {
    LambdaGrid grid;
    std::vector<cplx> values;

    GridFunction(LambdaGrid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
        if (static_cast<std::int64_t>(values.size()) != grid.size())
            throw GridMismatch("value count does not match grid size");
    }
    explicit GridFunction(LambdaGrid g) : grid(g), values(static_cast<std::size_t>(g.size()), cplx(0.0)) {}

    std::size_t size() const { return values.size(); }
    cplx& operator[](std::size_t j) { return values[j]; }
    const cplx& operator[](std::size_t j) const { return values[j]; }

    template <typename F>
    static GridFunction sample(const LambdaGrid& g, F&& f) {
        GridFunction out(g);
        for (std::int64_t j = 0; j < g.size(); ++j) out.values[static_cast<std::size_t>(j)] = f(g.node(j));
        return out;
    }
};

inline void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.grid != b.grid) throw GridMismatch("grid functions live on different grids");
}

/// Builds the lambda/r grid pair and enforces the Nyquist compatibility
/// R < pi*N/(2*Lambda) needed so frequencies up to R are representable.
inline std::pair<LambdaGrid, RGrid> make_grids(double half_width, std::int64_t n_points,
                                               double dr, double r_max, double offset = 0.0) {
    if (!(dr > 0) || !(r_max > 0)) throw BadParameter("grid steps must be positive");
    LambdaGrid lg(half_width, n_points, offset);
    RGrid rg(dr, r_max);
    if (r_max >= lg.nyquist_s())
        throw NyquistViolation("R exceeds the lambda grid band limit pi*N/(2*Lambda)");
    return {lg, rg};
}

} // namespace krein
