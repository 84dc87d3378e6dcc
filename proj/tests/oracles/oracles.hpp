#pragma once

// Reference implementations used only by the tests. They recompute everything
// from the raw columns with the textbook formulas and full sorts, sharing no
// code with the library's distance or neighbor search.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rebalance/tabular.hpp"

namespace oracle {

using rebalance::ColumnKind;
using rebalance::Dataset;

inline bool missing(const Dataset& ds, std::size_t col, std::size_t row) {
    return ds.column(col).is_missing(row);
}

inline std::vector<std::size_t> features(const Dataset& ds) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < ds.n_cols(); ++c) {
        if (c != ds.target_index()) out.push_back(c);
    }
    return out;
}

inline std::string label(const Dataset& ds, std::size_t col, std::size_t row) {
    return ds.column(col).label(row);
}

inline double value(const Dataset& ds, std::size_t col, std::size_t row) {
    return ds.column(col).numbers[row];
}

inline double euclidean(const Dataset& ds, std::size_t a, std::size_t b) {
    double s = 0;
    for (auto c : features(ds)) s += std::pow(value(ds, c, a) - value(ds, c, b), 2);
    return std::sqrt(s);
}

inline double manhattan(const Dataset& ds, std::size_t a, std::size_t b) {
    double s = 0;
    for (auto c : features(ds)) s += std::fabs(value(ds, c, a) - value(ds, c, b));
    return s;
}

inline double minkowsky(const Dataset& ds, std::size_t a, std::size_t b, double r) {
    double s = 0;
    for (auto c : features(ds)) s += std::pow(std::fabs(value(ds, c, a) - value(ds, c, b)), r);
    return std::pow(s, 1.0 / r);
}

inline double chebyshev(const Dataset& ds, std::size_t a, std::size_t b) {
    double s = 0;
    for (auto c : features(ds)) s = std::max(s, std::fabs(value(ds, c, a) - value(ds, c, b)));
    return s;
}

inline double canberra(const Dataset& ds, std::size_t a, std::size_t b) {
    double s = 0;
    for (auto c : features(ds)) {
        const double x = value(ds, c, a);
        const double y = value(ds, c, b);
        if (x == 0 && y == 0) continue;
        s += std::fabs(x - y) / (std::fabs(x) + std::fabs(y));
    }
    return s;
}

inline double overlap(const Dataset& ds, std::size_t a, std::size_t b) {
    double s = 0;
    for (auto c : features(ds)) s += label(ds, c, a) == label(ds, c, b) ? 0.0 : 1.0;
    return s;
}

inline double column_range(const Dataset& ds, std::size_t c) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        if (missing(ds, c, r)) continue;
        lo = std::min(lo, value(ds, c, r));
        hi = std::max(hi, value(ds, c, r));
    }
    return hi >= lo ? hi - lo : 0.0;
}

inline double column_sd(const Dataset& ds, std::size_t c) {
    std::vector<double> v;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        if (!missing(ds, c, r)) v.push_back(value(ds, c, r));
    }
    if (v.size() < 2) return 0.0;
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (v.size() - 1));
}

inline double heom(const Dataset& ds, std::size_t a, std::size_t b) {
    double s = 0;
    for (auto c : features(ds)) {
        double d;
        if (missing(ds, c, a) || missing(ds, c, b)) {
            d = 1;
        } else if (ds.column(c).kind == ColumnKind::Nominal) {
            d = label(ds, c, a) == label(ds, c, b) ? 0 : 1;
        } else {
            const double range = column_range(ds, c);
            d = range == 0 ? 0 : std::fabs(value(ds, c, a) - value(ds, c, b)) / range;
        }
        s += d * d;
    }
    return std::sqrt(s);
}

/// sqrt(sum_c |N_axc/N_ax - N_ayc/N_ay|^2), counting straight from the columns.
inline double norm_vdm(const Dataset& ds, std::size_t c, const std::string& x, const std::string& y) {
    const auto& target = ds.target();
    std::set<std::string> classes;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) classes.insert(target.label(r));
    double s = 0;
    for (const auto& cls : classes) {
        double nx = 0, nxc = 0, ny = 0, nyc = 0;
        for (std::size_t r = 0; r < ds.n_rows(); ++r) {
            if (missing(ds, c, r)) continue;
            const auto& v = label(ds, c, r);
            const bool in_class = target.label(r) == cls;
            if (v == x) {
                nx += 1;
                nxc += in_class;
            }
            if (v == y) {
                ny += 1;
                nyc += in_class;
            }
        }
        const double px = nx > 0 ? nxc / nx : 0.0;
        const double py = ny > 0 ? nyc / ny : 0.0;
        s += (px - py) * (px - py);
    }
    return std::sqrt(s);
}

inline double hvdm(const Dataset& ds, std::size_t a, std::size_t b) {
    double s = 0;
    for (auto c : features(ds)) {
        double d;
        if (missing(ds, c, a) || missing(ds, c, b)) {
            d = 1;
        } else if (ds.column(c).kind == ColumnKind::Nominal) {
            d = norm_vdm(ds, c, label(ds, c, a), label(ds, c, b));
        } else {
            const double sd = column_sd(ds, c);
            d = sd == 0 ? 0 : std::fabs(value(ds, c, a) - value(ds, c, b)) / (4 * sd);
        }
        s += d * d;
    }
    return std::sqrt(s);
}

/// k nearest candidates by full sort on (distance, index).
template <typename Dist>
std::vector<std::size_t> knn(std::size_t query, std::size_t k, const std::vector<std::size_t>& candidates, Dist dist) {
    std::vector<std::pair<double, std::size_t>> all;
    for (auto c : candidates) all.emplace_back(dist(query, c), c);
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < std::min(k, all.size()); ++i) out.push_back(all[i].second);
    return out;
}

template <typename Dist>
std::vector<std::size_t> knn_all_others(std::size_t query, std::size_t k, std::size_t n, Dist dist) {
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != query) cand.push_back(i);
    }
    return knn(query, k, cand, dist);
}

/// Rows that sit in at least one cross-class pair of mutual nearest neighbors.
template <typename Dist>
std::set<std::size_t> tomek_members(const Dataset& ds, Dist dist) {
    const std::size_t n = ds.n_rows();
    std::vector<std::size_t> nn(n);
    for (std::size_t i = 0; i < n; ++i) nn[i] = knn_all_others(i, 1, n, dist).front();
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = nn[i];
        if (nn[j] == i && ds.target().label(i) != ds.target().label(j)) {
            out.insert(i);
            out.insert(j);
        }
    }
    return out;
}

/// Number of original rows whose 1-NN within `kept` (themselves, if kept) has another label.
template <typename Dist>
std::size_t one_nn_errors(const Dataset& ds, const std::vector<std::size_t>& kept, Dist dist) {
    std::set<std::size_t> kept_set(kept.begin(), kept.end());
    std::size_t errors = 0;
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
        if (kept_set.contains(i)) continue;
        const auto nn = knn(i, 1, kept, dist).front();
        errors += ds.target().label(nn) != ds.target().label(i);
    }
    return errors;
}

/// Neighbors of row i among all others that carry a different label.
template <typename Dist>
std::size_t disagreeing_neighbors(const Dataset& ds, std::size_t i, std::size_t k, Dist dist) {
    std::size_t d = 0;
    for (auto j : knn_all_others(i, k, ds.n_rows(), dist)) d += ds.target().label(j) != ds.target().label(i);
    return d;
}

/// Original rows that survived a removal-only strategy, matched by index.
inline std::vector<std::size_t> kept_rows(std::size_t n, const std::vector<std::size_t>& removed) {
    std::set<std::size_t> gone(removed.begin(), removed.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!gone.contains(i)) out.push_back(i);
    }
    return out;
}

/// Label frequencies recounted cell by cell.
inline std::map<std::string, std::size_t> recount(const Dataset& ds) {
    std::map<std::string, std::size_t> out;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) ++out[ds.target().label(r)];
    return out;
}

} // namespace oracle
