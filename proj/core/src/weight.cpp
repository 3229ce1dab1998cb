#include "krein/weight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace krein {

namespace {

double factor_value(const WeightFactor& f, double lam) {
    return std::visit(
        [lam](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantFactor>) {
                return v.value;
            } else if constexpr (std::is_same_v<T, BumpFactor>) {
                return (lam >= v.left && lam <= v.right) ? 1.0 + v.delta : 1.0;
            } else if constexpr (std::is_same_v<T, PowerFactor>) {
                double x = std::abs((lam - v.center) / v.scale);
                if (x > 1.0) return 1.0;
                if (x == 0.0) return v.beta > 0 ? 0.0 : (v.beta < 0 ? std::numeric_limits<double>::infinity() : 1.0);
                return std::pow(x, v.beta);
            } else if constexpr (std::is_same_v<T, GaussFactor>) {
                double t = (lam - v.center) / v.width;
                return 1.0 + v.delta * std::exp(-0.5 * t * t);
            } else {
                double al = std::abs(lam);
                return 1.0 + v.delta * std::pow(1.0 + lam * lam, -0.5 * v.decay) *
                                 std::pow(std::log(M_E + al), -v.log_decay);
            }
        },
        f);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string factor_id(const WeightFactor& f) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantFactor>) {
                return "const:c=" + fmt(v.value);
            } else if constexpr (std::is_same_v<T, BumpFactor>) {
                return "bump:delta=" + fmt(v.delta) + ",a=" + fmt(v.left) + ",b=" + fmt(v.right);
            } else if constexpr (std::is_same_v<T, PowerFactor>) {
                return "power:beta=" + fmt(v.beta) + ",center=" + fmt(v.center) + ",scale=" + fmt(v.scale);
            } else if constexpr (std::is_same_v<T, GaussFactor>) {
                return "gauss:delta=" + fmt(v.delta) + ",center=" + fmt(v.center) + ",width=" + fmt(v.width);
            } else {
                return "logtail:a=" + fmt(v.decay) + ",b=" + fmt(v.log_decay) + ",delta=" + fmt(v.delta);
            }
        },
        f);
}

std::map<std::string, double> parse_kv(const std::string& body, const std::string& ctx) {
    std::map<std::string, double> kv;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw BadSpec("expected key=value in '" + ctx + "'");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        try {
            std::size_t pos = 0;
            double d = std::stod(val, &pos);
            if (pos != val.size()) throw std::invalid_argument(val);
            kv[key] = d;
        } catch (const std::exception&) {
            throw BadSpec("bad numeric value '" + val + "' in '" + ctx + "'");
        }
    }
    return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key, double fallback,
            bool required = false) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (required) throw BadSpec("missing parameter '" + key + "'");
        return fallback;
    }
    double v = it->second;
    kv.erase(it);
    return v;
}

} // namespace

Weight Weight::constant(double c) {
    Weight w;
    w.factors_.push_back(ConstantFactor{c});
    w.finalize();
    return w;
}

Weight Weight::bump(double delta, double a, double b) {
    Weight w;
    w.factors_.push_back(BumpFactor{delta, a, b});
    w.finalize();
    return w;
}

Weight Weight::power(double beta, double center, double scale) {
    Weight w;
    w.factors_.push_back(PowerFactor{beta, center, scale});
    w.finalize();
    return w;
}

Weight Weight::gauss(double delta, double center, double width) {
    Weight w;
    w.factors_.push_back(GaussFactor{delta, center, width});
    w.finalize();
    return w;
}

Weight Weight::logtail(double decay, double log_decay, double delta) {
    Weight w;
    w.factors_.push_back(LogTailFactor{decay, log_decay, delta});
    w.finalize();
    return w;
}

Weight Weight::product(const std::vector<Weight>& parts) {
    Weight w;
    for (const auto& p : parts)
        w.factors_.insert(w.factors_.end(), p.factors_.begin(), p.factors_.end());
    w.finalize();
    return w;
}

Weight Weight::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw BadSpec("weight spec needs 'kind:params': " + spec);
    std::string kind = spec.substr(0, colon);
    std::string body = spec.substr(colon + 1);

    if (kind == "prod") {
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw BadSpec("prod expects prod:[item;item;...]");
        std::string inner = body.substr(1, body.size() - 2);
        std::vector<Weight> parts;
        std::string item;
        int bracket = 0;
        for (char ch : inner + ";") {
            if (ch == '[') ++bracket;
            if (ch == ']') --bracket;
            if (ch == ';' && bracket == 0) {
                if (!item.empty()) parts.push_back(parse(item));
                item.clear();
            } else {
                item.push_back(ch);
            }
        }
        if (parts.empty()) throw BadSpec("empty prod");
        return product(parts);
    }

    auto kv = parse_kv(body, spec);
    Weight w;
    if (kind == "const") {
        double c = take(kv, "c", 1.0, true);
        w = constant(c);
    } else if (kind == "bump") {
        double d = take(kv, "delta", 0.0, true);
        double a = take(kv, "a", -1.0);
        double b = take(kv, "b", 1.0);
        w = bump(d, a, b);
    } else if (kind == "power") {
        double beta = take(kv, "beta", 0.0, true);
        double c = take(kv, "center", 0.0);
        double s = take(kv, "scale", 1.0);
        w = power(beta, c, s);
    } else if (kind == "gauss") {
        double d = take(kv, "delta", 0.0, true);
        double c = take(kv, "center", 0.0);
        double s = take(kv, "width", 1.0);
        w = gauss(d, c, s);
    } else if (kind == "logtail") {
        double a = take(kv, "a", 0.0, true);
        double b = take(kv, "b", 0.0, true);
        double d = take(kv, "delta", 0.0, true);
        w = logtail(a, b, d);
    } else {
        throw BadSpec("unknown weight kind '" + kind + "'");
    }
    if (!kv.empty()) throw BadSpec("unknown parameter '" + kv.begin()->first + "' in " + spec);
    return w;
}

void Weight::finalize() {
    sing_.clear();
    breaks_.clear();
    compact_ = true;
    unbounded_ = false;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    auto grow = [&](double a, double b) {
        lo = std::min(lo, a);
        hi = std::max(hi, b);
    };

    for (const auto& f : factors_) {
        if (const auto* c = std::get_if<ConstantFactor>(&f)) {
            if (!(c->value > 0)) throw BadSpec("constant weight must be positive");
            if (c->value != 1.0) {
                unbounded_ = true;
                compact_ = false;
            }
        } else if (const auto* b = std::get_if<BumpFactor>(&f)) {
            if (!(b->left < b->right)) throw BadSpec("bump needs a < b");
            if (!(b->delta > -1.0)) throw BadSpec("bump needs delta > -1");
            breaks_.push_back(b->left);
            breaks_.push_back(b->right);
            grow(b->left, b->right);
        } else if (const auto* p = std::get_if<PowerFactor>(&f)) {
            if (!(std::abs(p->beta) < 1.0)) throw BadSpec("power exponent must satisfy |beta| < 1");
            if (!(p->scale > 0)) throw BadSpec("power scale must be positive");
            if (p->beta != 0.0) sing_.push_back({p->center, p->beta, p->scale});
            breaks_.push_back(p->center - p->scale);
            breaks_.push_back(p->center);
            breaks_.push_back(p->center + p->scale);
            grow(p->center - p->scale, p->center + p->scale);
        } else if (const auto* g = std::get_if<GaussFactor>(&f)) {
            if (!(g->delta > -1.0)) throw BadSpec("gauss needs delta > -1");
            if (!(g->width > 0)) throw BadSpec("gauss width must be positive");
            compact_ = false;
            grow(g->center - 9.0 * g->width, g->center + 9.0 * g->width);
        } else if (const auto* t = std::get_if<LogTailFactor>(&f)) {
            if (!(t->delta > -1.0)) throw BadSpec("logtail needs delta > -1");
            if (!(t->decay > 0) || t->log_decay < 0) throw BadSpec("logtail needs a > 0, b >= 0");
            compact_ = false;
            unbounded_ = true;
            breaks_.push_back(0.0);
            grow(-1e4, 1e4);
        }
    }

    for (std::size_t i = 0; i < sing_.size(); ++i)
        for (std::size_t j = i + 1; j < sing_.size(); ++j)
            if (sing_[i].center == sing_[j].center)
                throw BadSpec("coincident singular centers");
    for (const auto& s : sing_) breaks_.push_back(s.center);
    std::sort(breaks_.begin(), breaks_.end());
    breaks_.erase(std::unique(breaks_.begin(), breaks_.end()), breaks_.end());

    support_ = (lo <= hi) ? std::make_pair(lo, hi) : std::make_pair(1.0, -1.0);

    std::vector<std::string> ids;
    ids.reserve(factors_.size());
    for (const auto& f : factors_) ids.push_back(factor_id(f));
    std::sort(ids.begin(), ids.end());
    if (ids.size() == 1) {
        id_ = ids[0];
    } else {
        id_ = "prod:[";
        for (std::size_t i = 0; i < ids.size(); ++i) id_ += ids[i] + (i + 1 < ids.size() ? ";" : "");
        id_ += "]";
    }
}

double Weight::operator()(double lam) const {
    double v = 1.0;
    for (const auto& f : factors_) v *= factor_value(f, lam);
    return v;
}

double Weight::log_value(double lam) const {
    double s = 0.0;
    for (const auto& f : factors_) s += std::log(factor_value(f, lam));
    return s;
}

double Weight::cofactor(std::size_t sing_index, double lam) const {
    const auto& s = sing_.at(sing_index);
    double v = 1.0;
    for (const auto& f : factors_) {
        if (const auto* p = std::get_if<PowerFactor>(&f)) {
            if (p->center == s.center && p->beta == s.beta && p->scale == s.scale) continue;
        }
        v *= factor_value(f, lam);
    }
    return v;
}

int Weight::moment_certified() const {
    int k = 999;
    for (const auto& f : factors_) {
        if (const auto* c = std::get_if<ConstantFactor>(&f)) {
            if (c->value != 1.0) return -1;
        } else if (const auto* t = std::get_if<LogTailFactor>(&f)) {
            // <l>^k * <l>^-a log^-b integrable iff a-k > 1, or a-k == 1 with b > 1
            double a = t->decay, b = t->log_decay;
            int kt;
            double edge = a - 1.0;
            if (std::floor(edge) == edge)
                kt = static_cast<int>(edge) - (b > 1.0 ? 0 : 1);
            else
                kt = static_cast<int>(std::floor(edge));
            k = std::min(k, kt);
        }
    }
    return k;
}

double Weight::tail_deviation_l1(double half_width) const {
    if (compact_) {
        auto [lo, hi] = support_;
        if (lo > hi || (lo >= -half_width && hi <= half_width)) return 0.0;
    }
    // one-sided tails by midpoint panels on a geometric mesh out to where the
    // deviation is negligible; metadata only, ~1e-8 relative is plenty
    auto side = [&](double sgn) {
        double total = 0.0;
        double a = half_width;
        for (int i = 0; i < 200; ++i) {
            double b = a * 1.5;
            const int m = 32;
            double h = (b - a) / m, acc = 0.0;
            for (int j = 0; j < m; ++j) acc += std::abs(deviation(sgn * (a + (j + 0.5) * h)));
            acc *= h;
            total += acc;
            if (acc < 1e-14 * std::max(total, 1e-30)) break;
            a = b;
        }
        return total;
    };
    return side(1.0) + side(-1.0);
}

double Weight::ess_inf(double window_half_width) const {
    double v = 1.0;
    for (const auto& f : factors_) {
        double m = 1.0;
        if (const auto* c = std::get_if<ConstantFactor>(&f)) {
            m = c->value;
        } else if (const auto* b = std::get_if<BumpFactor>(&f)) {
            bool hits = b->left <= window_half_width && b->right >= -window_half_width;
            m = hits ? std::min(1.0, 1.0 + b->delta) : 1.0;
        } else if (const auto* p = std::get_if<PowerFactor>(&f)) {
            bool hits = p->center - p->scale <= window_half_width && p->center + p->scale >= -window_half_width;
            m = hits && p->beta > 0 ? 0.0 : 1.0;
        } else if (const auto* g = std::get_if<GaussFactor>(&f)) {
            m = std::min(1.0, 1.0 + g->delta);
        } else if (const auto* t = std::get_if<LogTailFactor>(&f)) {
            m = std::min(1.0, 1.0 + t->delta);
        }
        v *= m;
    }
    return v;
}

void Weight::set_deviation_exponents(double p1, double p2) {
    if (!(1.0 <= p1 && p1 <= p2 && p2 <= 2.0))
        throw BadSpec("deviation exponents must satisfy 1 <= p1 <= p2 <= 2");
    p1_ = p1;
    p2_ = p2;
}

std::uint64_t Weight::id_hash() const {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char c : id_) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace krein
