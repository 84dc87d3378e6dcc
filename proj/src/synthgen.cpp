#include "rebalance/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rebalance/rng.hpp"

namespace rebalance {

namespace {

void check(const GenParams& params) {
    if (params.n_rows < 10) {
        throw DataError("generators need at least 10 rows");
    }
}

std::size_t share(double fraction, std::size_t n) {
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
}

/// Relabels a random round(fraction * |set|) members of `set`.
void assign(std::vector<std::string>& labels, const std::vector<std::size_t>& set, double fraction, const char* label,
            Rng& rng) {
    for (auto i : rng.sample_without_replacement(set.size(), share(fraction, set.size()))) {
        labels[set[i]] = label;
    }
}

} // namespace

Dataset gen_imbc(const GenParams& params) {
    check(params);
    const std::size_t n = params.n_rows;
    Rng rng(params.seed);

    std::vector<double> x1(n);
    for (auto& v : x1) v = rng.normal(0.0, 4.0);

    const std::size_t n_cat = share(0.3, n);
    const std::size_t n_fish = share(0.3, n);
    std::vector<std::string> x2;
    x2.reserve(n);
    x2.insert(x2.end(), n_cat, "cat");
    x2.insert(x2.end(), n_fish, "fish");
    x2.insert(x2.end(), n - n_cat - n_fish, "dog");
    rng.shuffle(x2);

    std::vector<std::size_t> s1, s2, s3, s4;
    for (std::size_t i = 0; i < n; ++i) {
        const bool fish = x2[i] == "fish";
        if (x1[i] > 9.0 && !fish) s1.push_back(i);
        if (x1[i] > 7.0 && fish) s2.push_back(i);
        if (x1[i] > -1.0 && x1[i] < 0.5) s3.push_back(i);
        if (x1[i] < -7.0 && fish) s4.push_back(i);
    }

    std::vector<std::string> cls(n, "normal");
    assign(cls, s1, 0.9, "rare1", rng);
    assign(cls, s2, 0.4, "rare1", rng);
    assign(cls, s3, 0.8, "rare2", rng);
    assign(cls, s4, 0.7, "rare2", rng);

    std::vector<Column> cols;
    cols.push_back(Column::numeric("X1", std::move(x1)));
    cols.push_back(Column::nominal("X2", x2));
    cols.push_back(Column::nominal("Class", cls));
    return Dataset(std::move(cols), "Class");
}

Dataset gen_imbr(const GenParams& params) {
    check(params);
    const std::size_t n = params.n_rows;
    const std::size_t n_circle = share(0.05, n);
    Rng rng(params.seed);

    std::vector<double> x1, x2, tgt;
    x1.reserve(n);
    x2.reserve(n);
    tgt.reserve(n);
    for (std::size_t i = 0; i < n - n_circle; ++i) {
        x1.push_back(rng.normal(10.0, 2.5));
        x2.push_back(rng.normal(10.0, 2.5));
        tgt.push_back(rng.gamma(0.5, 1.0) + 10.0);
    }
    for (std::size_t i = 0; i < n_circle; ++i) {
        const double rho = 9.0 + rng.normal();
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        x1.push_back(rho * std::cos(theta) + 10.0);
        x2.push_back(rho * std::sin(theta) + 10.0);
        tgt.push_back(rng.gamma(1.0, 1.0) + 20.0);
    }

    std::vector<Column> cols;
    cols.push_back(Column::numeric("X1", std::move(x1)));
    cols.push_back(Column::numeric("X2", std::move(x2)));
    cols.push_back(Column::numeric("Tgt", std::move(tgt)));
    return Dataset(std::move(cols), "Tgt");
}

} // namespace rebalance
