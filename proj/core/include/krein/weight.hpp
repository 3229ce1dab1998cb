#pragma once

#include "krein/errors.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace krein {

/// Location and exponent of a power-law singularity |(l - center)/scale|^beta.
struct Singularity {
    double center;
    double beta;
    double scale;
};

struct ConstantFactor {
    double value;
};
struct BumpFactor {
    double delta, left, right; // 1 + delta * chi_[left,right]
};
struct PowerFactor {
    double beta, center, scale; // |x|^beta for |x| <= 1, else 1, x = (l-center)/scale
};
struct GaussFactor {
    double delta, center, width; // 1 + delta * exp(-(l-center)^2 / (2 width^2))
};
struct LogTailFactor {
    double decay, log_decay, delta; // 1 + delta * <l>^-decay * log(e+|l|)^-log_decay
};

using WeightFactor = std::variant<ConstantFactor, BumpFactor, PowerFactor, GaussFactor, LogTailFactor>;

/// Closed-form nonnegative weight on the line, stored as a finite product of
/// unit factors.  All metadata the quadrature and the analysis operations use
/// (singularities, kinks, tails, moment certificates) is derived exactly from
/// the closed form.
///
/// CLI grammar, one factor per item:
///   const:c=1
///   bump:delta=0.1,a=-1,b=1
///   power:beta=0.5,center=0,scale=1
///   gauss:delta=0.1,center=0,width=1
///   logtail:a=1.5,b=2,delta=0.1
///   prod:[item;item;...]
class Weight {
public:
    static Weight parse(const std::string& spec);
    static Weight constant(double c);
    static Weight bump(double delta, double a = -1.0, double b = 1.0);
    static Weight power(double beta, double center = 0.0, double scale = 1.0);
    static Weight gauss(double delta, double center = 0.0, double width = 1.0);
    static Weight logtail(double decay, double log_decay, double delta);
    static Weight product(const std::vector<Weight>& parts);

    /// Weight value; +infinity at a singular point with beta < 0, 0 with beta > 0.
    double operator()(double lam) const;
    double log_value(double lam) const; // log w, +-infinity at singular points
    double deviation(double lam) const { return (*this)(lam)-1.0; }

    const std::vector<WeightFactor>& factors() const { return factors_; }
    const std::vector<Singularity>& singularities() const { return sing_; }

    /// Kinks of the closed form (factor edges, singular centers, |l| corner).
    const std::vector<double>& breakpoints() const { return breaks_; }

    /// w(l) with the singular power part |x_i|^beta_i of singularity i divided
    /// out; smooth across that center, valid for |l - center| <= scale.
    double cofactor(std::size_t sing_index, double lam) const;

    /// Interval outside which w-1 vanishes exactly (compact case) or is below
    /// ~1e-16 (gauss).  Empty (lo > hi) for w == const.
    std::pair<double, double> deviation_support() const { return support_; }
    bool compact_deviation() const { return compact_; }
    bool unbounded_deviation() const { return unbounded_; } // logtail / const != 1

    /// Largest integer k with <l>^k (w-1) in L1; a large sentinel when the
    /// deviation has compact support or gaussian decay.
    int moment_certified() const;

    double tail_deviation_l1(double half_width) const; // int_{|l|>L} |w-1|
    double ess_inf(double window_half_width) const;    // certified lower bound

    std::pair<double, double> deviation_exponents() const { return {p1_, p2_}; }
    void set_deviation_exponents(double p1, double p2);

    const std::string& id() const { return id_; }
    std::uint64_t id_hash() const;

private:
    Weight() = default;
    void finalize(); // computes metadata + canonical id, validates

    std::vector<WeightFactor> factors_;
    std::vector<Singularity> sing_;
    std::vector<double> breaks_;
    std::pair<double, double> support_{1.0, -1.0};
    bool compact_ = true;
    bool unbounded_ = false;
    double p1_ = 1.0, p2_ = 2.0;
    std::string id_;
};

} // namespace krein
