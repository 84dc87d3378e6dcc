// Randomized properties. Every case draws its inputs from a fixed-seed stream so
// failures replay exactly.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rebalance/classification.hpp"
#include "rebalance/regression.hpp"
#include "rebalance/synthgen.hpp"

using namespace rebalance;

namespace {

/// Mixed table: two numeric features, two nominal ones (one with Missing cells), nominal target.
Dataset random_mixed(std::mt19937_64& gen, std::size_t n, bool with_missing) {
    std::normal_distribution<double> norm(0.0, 3.0);
    std::uniform_int_distribution<int> pick(0, 3);
    std::bernoulli_distribution gap(with_missing ? 0.05 : 0.0);
    const char* words[] = {"red", "green", "blue", "grey"};
    std::vector<double> a(n), b(n);
    std::vector<std::optional<std::string>> c(n), d(n);
    std::vector<std::string> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = gap(gen) ? missing_number : norm(gen);
        b[i] = norm(gen) * 10 + 2;
        c[i] = gap(gen) ? std::nullopt : std::optional<std::string>(words[pick(gen)]);
        d[i] = words[pick(gen) % 2];
        y[i] = pick(gen) == 0 ? "min" : "maj";
    }
    y[0] = "min";
    y[1] = "maj";
    return Dataset({Column::numeric("A", a), Column::numeric("B", b), Column::nominal("C", c), Column::nominal("D", d),
                    Column::nominal("Y", y)},
                   "Y");
}

Dataset random_numeric(std::mt19937_64& gen, std::size_t n) {
    std::normal_distribution<double> norm(0.0, 1.0);
    std::vector<double> a(n), b(n), c(n);
    std::vector<std::string> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = norm(gen);
        b[i] = std::fabs(norm(gen)) * 5;
        c[i] = norm(gen) - 4;
        y[i] = i % 4 == 0 ? "p" : "q";
    }
    return Dataset({Column::numeric("A", a), Column::numeric("B", b), Column::numeric("C", c), Column::nominal("Y", y)}, "Y");
}

} // namespace

TEST_CASE("CSV round trip preserves every cell") {
    std::mt19937_64 gen(101);
    for (int rep = 0; rep < 20; ++rep) {
        auto ds = random_mixed(gen, 40, true);
        CHECK(parse_dataset(format_dataset(ds), "Y") == ds);
    }
    std::uniform_real_distribution<double> wide(-1e300, 1e300);
    for (int i = 0; i < 2000; ++i) {
        const double v = wide(gen) * std::pow(10.0, -static_cast<int>(gen() % 600));
        CHECK(parse_number(format_number(v)) == v);
    }
}

TEST_CASE("metric axioms on random rows") {
    std::mt19937_64 gen(7);
    auto numeric = random_numeric(gen, 60);
    auto mixed = random_mixed(gen, 60, true);
    std::vector<std::pair<Metric, const Dataset*>> cases{
        {Metric::euclidean(), &numeric}, {Metric::manhattan(), &numeric}, {Metric::minkowsky(3.5), &numeric},
        {Metric::chebyshev(), &numeric}, {Metric::canberra(), &numeric},  {Metric::heom(), &mixed},
        {Metric::hvdm(), &mixed}};
    for (const auto& [metric, ds] : cases) {
        NeighborIndex idx(*ds, metric);
        const bool missing_cells = ds == &mixed;
        for (int t = 0; t < 300; ++t) {
            const std::size_t i = gen() % ds->n_rows(), j = gen() % ds->n_rows(), k = gen() % ds->n_rows();
            const double dij = idx.distance(i, j);
            CHECK(dij >= 0.0);
            CHECK(dij == idx.distance(j, i));
            if (!missing_cells) CHECK(idx.distance(i, i) == 0.0);
            // Canberra is not a metric in general; the rest satisfy the triangle inequality
            if (metric.kind != MetricKind::Canberra && !missing_cells) {
                CHECK(idx.distance(i, k) <= dij + idx.distance(j, k) + 1e-9);
            }
        }
    }
}

TEST_CASE("p-norm with p = 1 and p = 2") {
    std::mt19937_64 gen(99);
    auto ds = random_numeric(gen, 80);
    NeighborIndex m1(ds, Metric::minkowsky(1)), m2(ds, Metric::minkowsky(2));
    NeighborIndex man(ds, Metric::manhattan()), euc(ds, Metric::euclidean());
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
        for (std::size_t j = 0; j < ds.n_rows(); j += 7) {
            CHECK(std::fabs(m1.distance(i, j) - man.distance(i, j)) <= 1e-12);
            CHECK(std::fabs(m2.distance(i, j) - euc.distance(i, j)) <= 1e-12);
        }
    }
}

TEST_CASE("knn agrees with a full sort") {
    std::mt19937_64 gen(5);
    auto ds = random_mixed(gen, 150, true);
    NeighborIndex idx(ds, Metric::heom());
    auto dist = [&](std::size_t a, std::size_t b) { return idx.distance(a, b); };
    for (std::size_t q = 0; q < ds.n_rows(); q += 3) {
        for (std::size_t k : {1u, 4u, 9u}) CHECK(idx.knn(q, k) == oracle::knn_all_others(q, k, ds.n_rows(), dist));
    }
}

TEST_CASE("relevance stays in [0, 1] and is monotone between control points") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<ControlPoint> pts;
        double y = -5;
        const int m = 2 + static_cast<int>(gen() % 5);
        for (int i = 0; i < m; ++i) {
            y += 0.1 + 3 * unit(gen);
            pts.push_back({y, unit(gen) < 0.3 ? std::round(unit(gen)) : unit(gen), (unit(gen) - 0.5) * 8});
        }
        auto fn = RelevanceFunction::from_points(pts);
        for (const auto& p : pts) CHECK(std::fabs(fn(p.y) - p.phi) <= 1e-9);
        for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
            const double lo = std::min(pts[s].phi, pts[s + 1].phi), hi = std::max(pts[s].phi, pts[s + 1].phi);
            const bool rising = pts[s + 1].phi >= pts[s].phi;
            double prev = fn(pts[s].y);
            for (int t = 1; t <= 50; ++t) {
                const double v = fn(pts[s].y + (pts[s + 1].y - pts[s].y) * t / 50.0);
                CHECK(v >= lo - 1e-12);
                CHECK(v <= hi + 1e-12);
                CHECK((rising ? v >= prev - 1e-12 : v <= prev + 1e-12));
                prev = v;
            }
        }
    }
}

TEST_CASE("bumps partition the rows and alternate kinds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto ds = gen_imbr({400, seed});
        auto fn = RelevanceFunction::from_extremes(ds.target_values(), ExtremeType::Both);
        for (double thr : {0.2, 0.5, 0.8}) {
            auto bumps = find_bumps(ds, fn, thr);
            std::vector<std::size_t> seen;
            for (std::size_t b = 0; b < bumps.size(); ++b) {
                if (b > 0) CHECK(bumps[b].kind != bumps[b - 1].kind);
                if (b > 0) CHECK(bumps[b].lo >= bumps[b - 1].hi);
                for (auto r : bumps[b].rows) {
                    seen.push_back(r);
                    const double y = ds.target_values()[r];
                    CHECK(y >= bumps[b].lo);
                    CHECK(y <= bumps[b].hi);
                    CHECK((fn(y) >= thr) == (bumps[b].kind == BumpKind::Rare));
                }
            }
            std::sort(seen.begin(), seen.end());
            CHECK(seen.size() == ds.n_rows());
            CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
        }
    }
}

TEST_CASE("outcome bookkeeping matches the output table") {
    auto ds = gen_imbc({300, 17});
    auto check = [&](const StrategyOutcome& o) {
        REQUIRE(o.data.n_rows() == ds.n_rows() - o.removed.size() + o.added.size());
        auto kept = oracle::kept_rows(ds.n_rows(), o.removed);
        for (std::size_t i = 0; i < kept.size(); ++i) CHECK(o.data.record(i)[0].number == ds.record(kept[i])[0].number);
        for (std::size_t i = 0; i < o.added.size(); ++i) {
            CHECK(o.added[i].seed < ds.n_rows());
            CHECK(o.data.target().label(kept.size() + i) == ds.target().label(o.added[i].seed));
        }
    };
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        check(rand_under(ds, ClassPercSpec::parse("normal=0.3"), seed % 2 == 0, seed));
        check(rand_over(ds, ClassPercSpec::balance(), seed % 2 == 0, seed));
        check(imp_samp(ds, ClassPercSpec::extreme(), seed));
        check(gauss_noise(ds, ClassPercSpec::balance(), 0.1, false, seed));
        check(smote(ds, ClassPercSpec::balance(), 5, Metric::hvdm(), seed % 2 == 0, seed));
        check(enn(ds, Metric::heom(), 3, ClassSelector::all(), seed));
        check(ncl(ds, Metric::heom(), 3, ClassSelector::smaller(), seed));
        check(oss(ds, Metric::heom(), ClassSelector::smaller(), OssStart::CNN, seed));
        CHECK(smote(ds, ClassPercSpec::balance(), 5, Metric::heom(), false, seed).data ==
              smote(ds, ClassPercSpec::balance(), 5, Metric::heom(), false, seed).data);
    }
}

TEST_CASE("regression strategies keep Rare rows under under-sampling and Normal rows under over-sampling") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto ds = gen_imbr({500, seed});
        auto fn = RelevanceFunction::from_extremes(ds.target_values(), ExtremeType::High);
        auto under = rand_under_r(ds, fn, 0.8, BumpPercSpec::balance(), false, seed);
        for (auto r : under.outcome.removed) CHECK(fn(ds.target_values()[r]) < 0.8);
        auto over = rand_over_r(ds, fn, 0.8, BumpPercSpec::balance(), seed);
        CHECK(over.outcome.removed.empty());
        for (const auto& a : over.outcome.added) CHECK(fn(ds.target_values()[a.seed]) >= 0.8);

        auto b = imp_samp_r(ds, fn, ImpSampParams::intensities(0.7, 0.5), seed);
        for (auto r : b.outcome.removed) CHECK(fn(ds.target_values()[r]) < 1.0);
        for (const auto& a : b.outcome.added) CHECK(fn(ds.target_values()[a.seed]) > 0.0);
    }
}
