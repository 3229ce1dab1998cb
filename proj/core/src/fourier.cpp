#include "krein/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace krein {
namespace detail {

namespace {

// FFTW plan cache.  Plans are created unaligned so they can execute on any
// caller buffer; creation is serialized (the FFTW planner is not thread-safe),
// execution via fftw_execute_dft is concurrent.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    void execute(std::vector<cplx>& data, int sign) {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto key = std::make_pair(data.size(), sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                std::vector<cplx> probe(data.size());
                auto* p = reinterpret_cast<fftw_complex*>(probe.data());
                plan = fftw_plan_dft_1d(static_cast<int>(data.size()), p, p,
                                        sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        auto* d = reinterpret_cast<fftw_complex*>(data.data());
        fftw_execute_dft(plan, d, d);
    }

private:
    PlanCache() = default;
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

} // namespace

void dft_pow2(std::vector<cplx>& data, int sign) {
    PlanCache::instance().execute(data, sign);
}

std::vector<cplx> to_bins(const GridFunction& f) {
    std::vector<cplx> bins(f.values);
    for (std::size_t j = 1; j < bins.size(); j += 2) bins[j] = -bins[j];
    dft_pow2(bins, -1);
    return bins;
}

GridFunction from_bins(const LambdaGrid& grid, std::vector<cplx> bins) {
    dft_pow2(bins, +1);
    const double inv_n = 1.0 / static_cast<double>(bins.size());
    for (std::size_t j = 0; j < bins.size(); ++j) {
        bins[j] *= inv_n;
        if (j & 1) bins[j] = -bins[j];
    }
    return GridFunction(grid, std::move(bins));
}

} // namespace detail

GridFunction fourier_pair(const GridFunction& f, FourierDirection dir) {
    const auto& g = f.grid;
    const auto n = g.size();
    const double dual_half_width = static_cast<double>(n) / (4.0 * g.half_width());
    // Dual grid carries no offset; the node offset of the source grid enters
    // only through the phase below.
    LambdaGrid dual(dual_half_width, n, 0.0);

    if (dir == FourierDirection::forward) {
        auto bins = detail::to_bins(f);
        std::vector<cplx> out(bins.size());
        const double dl = g.spacing();
        for (std::int64_t k = 0; k < n; ++k) {
            // phase e^{-2 pi i (origin) xi_k} with origin = -Lambda + offset*dl
            double frac = static_cast<double>(k - n / 2) / static_cast<double>(n);
            cplx phase = std::polar(1.0, -2.0 * M_PI * g.offset() * frac);
            if ((k - n / 2) & 1) phase = -phase;
            out[static_cast<std::size_t>(k)] = dl * phase * bins[static_cast<std::size_t>(k)];
        }
        return GridFunction(dual, std::move(out));
    }

    // inverse: f lives on a frequency grid with spacing dxi; result sits on
    // the grid whose dual is f.grid, i.e. half-width N/(4*Xi), offset 0.
    std::vector<cplx> bins(f.values);
    const double dxi = g.spacing();
    for (std::int64_t k = 0; k < n; ++k) {
        double frac = static_cast<double>(k - n / 2) / static_cast<double>(n);
        cplx phase = std::polar(1.0, 2.0 * M_PI * g.offset() * frac);
        if ((k - n / 2) & 1) phase = -phase;
        bins[static_cast<std::size_t>(k)] *= phase;
    }
    detail::dft_pow2(bins, +1);
    for (std::size_t j = 0; j < bins.size(); ++j) {
        bins[j] *= dxi;
        if (j & 1) bins[j] = -bins[j];
    }
    return GridFunction(dual, std::move(bins));
}

GridFunction hilbert_transform(const GridFunction& f) {
    auto bins = detail::to_bins(f);
    const auto n = f.grid.size();
    for (std::int64_t k = 0; k < n; ++k) {
        auto& b = bins[static_cast<std::size_t>(k)];
        if (k == n / 2)
            b = 0.0; // sign(0) = 0
        else if (k > n / 2)
            b *= cplx(0.0, -1.0);
        else
            b *= cplx(0.0, 1.0);
    }
    return detail::from_bins(f.grid, std::move(bins));
}

GridFunction band_project(const GridFunction& f, double a, double b) {
    if (!(a < b)) throw BadParameter("band requires a < b");
    const auto& g = f.grid;
    if (std::max(std::abs(a), std::abs(b)) > g.nyquist_s())
        throw BandOutOfRange("band endpoint exceeds the grid Nyquist frequency");
    auto bins = detail::to_bins(f);
    const double tol = 1e-9 * (M_PI / g.half_width()); // 1e-9 of one bin spacing
    for (std::int64_t k = 0; k < g.size(); ++k) {
        double s = g.bin_s(k);
        double m;
        if (std::abs(s - a) <= tol || std::abs(s - b) <= tol)
            m = 0.5;
        else if (s > a && s < b)
            m = 1.0;
        else
            m = 0.0;
        bins[static_cast<std::size_t>(k)] *= m;
    }
    return detail::from_bins(g, std::move(bins));
}

GridFunction modulate(const GridFunction& f, double r) {
    GridFunction out(f.grid);
    for (std::int64_t j = 0; j < f.grid.size(); ++j)
        out[static_cast<std::size_t>(j)] =
            f[static_cast<std::size_t>(j)] * std::polar(1.0, f.grid.node(j) * r);
    return out;
}

} // namespace krein
