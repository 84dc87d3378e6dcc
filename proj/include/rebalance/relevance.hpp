#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "rebalance/tabular.hpp"

/**
 * @file relevance.hpp
 *
 * @brief Relevance functions over a numeric target and their split into bumps.
 *
 * A relevance function maps target values to [0, 1] through a piecewise
 * cubic Hermite interpolant over control points. Rows whose relevance reaches
 * a threshold are Rare; the rest are Normal. Sorting rows by target and
 * grouping maximal runs of equal kind yields the bumps that the regression
 * strategies resample.
 */

namespace rebalance {

struct ControlPoint {
    double y = 0.0;
    double phi = 0.0;
    double dphi = 0.0;

    friend bool operator==(const ControlPoint&, const ControlPoint&) = default;
};

enum class ExtremeType { High, Low, Both };

ExtremeType parse_extreme_type(std::string_view name);

/// Tukey five-number summary plus whisker ends (coef * hinge spread).
struct BoxplotStats {
    double min = 0.0;
    double lower_hinge = 0.0;
    double median = 0.0;
    double upper_hinge = 0.0;
    double max = 0.0;
    /// Most extreme data points within the fences.
    double lower_whisker = 0.0;
    double upper_whisker = 0.0;
    bool low_outliers = false;
    bool high_outliers = false;
};

BoxplotStats boxplot_stats(std::span<const double> values, double coef = 1.5);

class RelevanceFunction {
public:
    /**
     * Interpolates the given points. Slopes are honored where they keep the
     * interval monotone; otherwise they are limited (Fritsch-Carlson) so the
     * curve never overshoots the neighboring phis.
     */
    static RelevanceFunction from_points(std::vector<ControlPoint> points);

    /**
     * Control points from the boxplot of `values`: the median gets 0, a whisker
     * end gets 1 when the requested side has outliers beyond it, and otherwise
     * that side's data extreme anchors a 0.
     */
    static RelevanceFunction from_extremes(std::span<const double> values, ExtremeType type, double coef = 1.5);

    const std::vector<ControlPoint>& points() const { return points_; }

    double operator()(double y) const;

private:
    struct Segment {
        double left_slope;
        double right_slope;
    };

    std::vector<ControlPoint> points_;
    std::vector<Segment> segments_;
};

enum class BumpKind { Normal, Rare };

/// Maximal run of target-sorted rows on one side of the threshold.
struct Bump {
    BumpKind kind = BumpKind::Normal;
    /// Smallest and largest target value in the bump.
    double lo = 0.0;
    double hi = 0.0;
    /// Row indices in ascending target order.
    std::vector<std::size_t> rows;
};

std::vector<Bump> find_bumps(std::span<const double> targets, const RelevanceFunction& fn, double thr_rel);
std::vector<Bump> find_bumps(const Dataset& ds, const RelevanceFunction& fn, double thr_rel);

} // namespace rebalance
