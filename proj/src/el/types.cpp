#include "niouc/el/types.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace niouc::el {

int SourceSizes::total() const {
    int t = 0;
    for (int n : counts) t += n;
    return t;
}

double SourceSizes::average() const {
    return counts.empty() ? 0.0 : static_cast<double>(total()) / counts.size();
}

void SourceSizes::validate() const {
    if (counts.empty()) throw std::invalid_argument("SourceSizes: need at least one source");
    for (int n : counts)
        if (n < 2) throw std::invalid_argument("SourceSizes: every source needs n_p >= 2");
}

WeightVector WeightVector::uniform(const SourceSizes& sizes) {
    WeightVector w;
    w.blocks.reserve(sizes.counts.size());
    for (int n : sizes.counts) w.blocks.emplace_back(n, 1.0 / n);
    return w;
}

double WeightVector::el_distance() const {
    double d = 0.0;
    for (const auto& block : blocks) {
        const double n = static_cast<double>(block.size());
        for (double w : block) {
            if (!(w > 0.0)) return std::numeric_limits<double>::infinity();
            d -= 2.0 * std::log(n * w);
        }
    }
    return d;
}

bool WeightVector::feasible_for(const AmbiguitySpec& spec, double tol) const {
    if (static_cast<int>(blocks.size()) != spec.sizes.num_sources()) return false;
    for (std::size_t p = 0; p < blocks.size(); ++p) {
        if (static_cast<int>(blocks[p].size()) != spec.sizes.counts[p]) return false;
        double sum = 0.0;
        for (double w : blocks[p]) {
            if (w < -1e-12) return false;
            sum += w;
        }
        if (std::fabs(sum - 1.0) > 1e-9) return false;
    }
    return el_distance() <= spec.radius + tol;
}

std::pair<double, double> weight_bounds(const AmbiguitySpec& spec) {
    const double radius = spec.radius;
    if (radius < 0.0) throw std::invalid_argument("weight_bounds: radius must be nonnegative");
    if (radius == 0.0) return {1.0, 1.0};

    const double half = 0.5 * radius;
    // f(x) = log x + 1 + radius/2 - x; increasing on (0,1), decreasing after,
    // with f(1) = radius/2 >= 0, so one root on each side of 1.
    auto f = [half](double x) { return std::log(x) + 1.0 + half - x; };

    // Bisection on [neg, pos]: f(neg) < 0 <= f(pos).
    auto bisect = [&f](double neg, double pos) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (neg + pos);
            if (f(mid) < 0.0)
                neg = mid;
            else
                pos = mid;
            if (std::fabs(pos - neg) < 1e-16 * (1.0 + std::fabs(pos))) break;
        }
        return 0.5 * (neg + pos);
    };

    // Lower root: f < 0 near 0 (l is about exp(-(1 + radius/2)) for large radius).
    double lo = std::exp(-(1.0 + half));
    while (f(lo) > 0.0) lo *= 0.5;
    const double l = bisect(lo, 1.0);

    // Upper root: expand until f < 0.
    double hi = 2.0 + half;
    while (f(hi) > 0.0) hi *= 2.0;
    const double u = bisect(hi, 1.0);
    return {l, u};
}

} // namespace niouc::el
