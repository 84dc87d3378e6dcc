#include "rebalance/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rebalance {

ExtremeType parse_extreme_type(std::string_view name) {
    if (name == "high") return ExtremeType::High;
    if (name == "low") return ExtremeType::Low;
    if (name == "both") return ExtremeType::Both;
    throw DataError("extreme type must be high, low or both, not '" + std::string(name) + "'");
}

BoxplotStats boxplot_stats(std::span<const double> values, double coef) {
    if (values.empty()) {
        throw DataError("boxplot statistics need at least one value");
    }
    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();

    // fivenum: hinges sit at depth floor((n + 3) / 2) / 2, averaging two order statistics when fractional
    auto at_depth = [&](double depth) {
        auto lo = static_cast<std::size_t>(std::floor(depth)) - 1;
        auto hi = static_cast<std::size_t>(std::ceil(depth)) - 1;
        return 0.5 * (x[lo] + x[hi]);
    };
    const double n4 = std::floor((static_cast<double>(n) + 3.0) / 2.0) / 2.0;

    BoxplotStats s;
    s.min = x.front();
    s.max = x.back();
    s.lower_hinge = at_depth(n4);
    s.median = at_depth((static_cast<double>(n) + 1.0) / 2.0);
    s.upper_hinge = at_depth(static_cast<double>(n) + 1.0 - n4);

    const double spread = coef * (s.upper_hinge - s.lower_hinge);
    const double low_fence = s.lower_hinge - spread;
    const double high_fence = s.upper_hinge + spread;
    s.lower_whisker = *std::lower_bound(x.begin(), x.end(), low_fence);
    s.upper_whisker = *(std::upper_bound(x.begin(), x.end(), high_fence) - 1);
    s.low_outliers = s.min < low_fence;
    s.high_outliers = s.max > high_fence;
    return s;
}

RelevanceFunction RelevanceFunction::from_points(std::vector<ControlPoint> points) {
    if (points.size() < 2) {
        throw DataError("a relevance function needs at least 2 control points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!std::isfinite(p.y) || !std::isfinite(p.dphi)) {
            throw DataError("control point values must be finite");
        }
        if (!(p.phi >= 0.0 && p.phi <= 1.0)) {
            throw DataError("control point phi must lie in [0, 1]");
        }
        if (i > 0 && !(points[i - 1].y < p.y)) {
            throw DataError(points[i - 1].y == p.y ? "duplicate control point y = " + format_number(p.y)
                                                   : "control points must be given in increasing y");
        }
    }

    RelevanceFunction fn;
    fn.points_ = std::move(points);
    const auto& pts = fn.points_;
    fn.segments_.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double h = pts[i + 1].y - pts[i].y;
        const double secant = (pts[i + 1].phi - pts[i].phi) / h;
        double m0 = pts[i].dphi;
        double m1 = pts[i + 1].dphi;
        if (secant == 0.0) {
            m0 = m1 = 0.0;
        } else {
            if (m0 * secant < 0.0) m0 = 0.0;
            if (m1 * secant < 0.0) m1 = 0.0;
            const double a = m0 / secant;
            const double b = m1 / secant;
            const double r2 = a * a + b * b;
            if (r2 > 9.0) {
                const double tau = 3.0 / std::sqrt(r2);
                m0 = tau * a * secant;
                m1 = tau * b * secant;
            }
        }
        fn.segments_.push_back({m0, m1});
    }
    return fn;
}

RelevanceFunction RelevanceFunction::from_extremes(std::span<const double> values, ExtremeType type, double coef) {
    if (values.empty()) {
        throw DataError("cannot derive a relevance function from an empty target");
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    if (*lo_it == *hi_it) {
        throw DataError("target values are all identical; the boxplot has no spread");
    }
    const BoxplotStats s = boxplot_stats(values, coef);

    std::vector<ControlPoint> pts;
    if (type != ExtremeType::High && s.low_outliers) {
        pts.push_back({s.lower_whisker, 1.0, 0.0});
    } else {
        pts.push_back({s.min, 0.0, 0.0});
    }
    pts.push_back({s.median, 0.0, 0.0});
    if (type != ExtremeType::Low && s.high_outliers) {
        pts.push_back({s.upper_whisker, 1.0, 0.0});
    } else {
        pts.push_back({s.max, 0.0, 0.0});
    }
    pts.erase(std::unique(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.y == b.y; }), pts.end());
    return from_points(std::move(pts));
}

double RelevanceFunction::operator()(double y) const {
    const auto& pts = points_;
    if (y <= pts.front().y) {
        return pts.front().phi;
    }
    if (y >= pts.back().y) {
        return pts.back().phi;
    }
    auto it = std::upper_bound(pts.begin(), pts.end(), y, [](double v, const ControlPoint& p) { return v < p.y; });
    const std::size_t i = static_cast<std::size_t>(it - pts.begin()) - 1;
    const auto& p0 = pts[i];
    const auto& p1 = pts[i + 1];
    const double h = p1.y - p0.y;
    const double t = (y - p0.y) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    const double v = h00 * p0.phi + h10 * h * segments_[i].left_slope + h01 * p1.phi + h11 * h * segments_[i].right_slope;
    return std::clamp(v, 0.0, 1.0);
}

std::vector<Bump> find_bumps(std::span<const double> targets, const RelevanceFunction& fn, double thr_rel) {
    if (!(thr_rel >= 0.0 && thr_rel <= 1.0)) {
        throw DataError("relevance threshold must lie in [0, 1]");
    }
    std::vector<std::size_t> order(targets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return targets[a] < targets[b]; });

    std::vector<Bump> bumps;
    for (auto row : order) {
        const double y = targets[row];
        const BumpKind kind = fn(y) >= thr_rel ? BumpKind::Rare : BumpKind::Normal;
        if (bumps.empty() || bumps.back().kind != kind) {
            bumps.push_back({kind, y, y, {}});
        }
        bumps.back().hi = y;
        bumps.back().rows.push_back(row);
    }
    return bumps;
}

std::vector<Bump> find_bumps(const Dataset& ds, const RelevanceFunction& fn, double thr_rel) {
    if (ds.has_nominal_target()) {
        throw DataError("relevance bumps need a numeric target; '" + ds.target_name() + "' is nominal");
    }
    return find_bumps(ds.target_values(), fn, thr_rel);
}

} // namespace rebalance
