#include <doctest.h>

#include <algorithm>

#include "rebalance/relevance.hpp"

using namespace rebalance;

namespace {

RelevanceFunction example_fn() {
    return RelevanceFunction::from_points({{0, 1, 0}, {3, 0, 0}, {6, 1, 0}, {7, 0.5, 1}, {10, 0, 0}});
}

} // namespace

TEST_CASE("range method passes through the control points") {
    auto fn = example_fn();
    CHECK(fn(0) == 1.0);
    CHECK(fn(3) == 0.0);
    CHECK(fn(6) == 1.0);
    CHECK(fn(7) == 0.5);
    CHECK(fn(10) == 0.0);
}

TEST_CASE("example function has bumps [0, 1.5] and [4.5, 7] at threshold 0.5") {
    auto fn = example_fn();
    CHECK(fn(1.5) == doctest::Approx(0.5));
    CHECK(fn(4.5) == doctest::Approx(0.5));
    CHECK(fn(5) > 0.5);
    CHECK(fn(1) > 0.5);
    CHECK(fn(2) < 0.5);
    CHECK(fn(8) < 0.5);
    // a zero-slope Hermite segment is smoothstep: 3t^2 - 2t^3 at t = 2/3
    CHECK(fn(5) == doctest::Approx(3.0 * 4.0 / 9.0 - 2.0 * 8.0 / 27.0));
}

TEST_CASE("two-point function and extrapolation") {
    auto fn = RelevanceFunction::from_points({{0, 0, 0}, {1, 1, 0}});
    CHECK(fn(0) == 0.0);
    CHECK(fn(1) == 1.0);
    CHECK(fn(0.5) > 0.0);
    CHECK(fn(0.5) < 1.0);

    auto down = RelevanceFunction::from_points({{0, 1, 0}, {2, 0, 0}});
    CHECK(down(-5) == 1.0);
    CHECK(down(50) == 0.0);

    auto flat = RelevanceFunction::from_points({{0, 0, 0}, {2, 0, 0}});
    CHECK(flat(1) == 0.0);
}

TEST_CASE("admissible slopes are kept, opposing slopes are limited") {
    // slope 1 on a rising secant of 1 is admissible
    auto fn = RelevanceFunction::from_points({{0, 0, 1}, {1, 1, 1}});
    const double h = 1e-6;
    CHECK((fn(h) - fn(0)) / h == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(fn(0.5) == doctest::Approx(0.5));

    // huge slopes would overshoot; the curve stays monotone and inside [0, 1]
    auto steep = RelevanceFunction::from_points({{0, 0, 50}, {1, 1, 50}});
    double prev = steep(0);
    for (int i = 1; i <= 1000; ++i) {
        double v = steep(i / 1000.0);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("range method rejects bad points") {
    CHECK_THROWS_AS(RelevanceFunction::from_points({{0, 0, 0}}), DataError);
    CHECK_THROWS_AS(RelevanceFunction::from_points({{0, 0, 0}, {0, 1, 0}}), DataError);
    CHECK_THROWS_AS(RelevanceFunction::from_points({{0, 0, 0}, {1, 1.5, 0}}), DataError);
    CHECK_THROWS_AS(RelevanceFunction::from_points({{1, 0, 0}, {0, 1, 0}}), DataError);
}

TEST_CASE("Tukey five-number summary") {
    std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
    auto s = boxplot_stats(v);
    CHECK(s.min == 1);
    CHECK(s.lower_hinge == 3);
    CHECK(s.median == 5.5);
    CHECK(s.upper_hinge == 8);
    CHECK(s.max == 100);
    CHECK(s.upper_whisker == 9);
    CHECK(s.high_outliers);
    CHECK_FALSE(s.low_outliers);
    CHECK(s.lower_whisker == 1);

    std::vector<double> odd{4, 1, 3, 2, 5};
    auto t = boxplot_stats(odd);
    CHECK(t.lower_hinge == 2);
    CHECK(t.median == 3);
    CHECK(t.upper_hinge == 4);
}

TEST_CASE("extremes method") {
    std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
    auto high = RelevanceFunction::from_extremes(v, ExtremeType::High);
    CHECK(high(5.5) == 0.0);
    CHECK(high(9) == 1.0);
    CHECK(high(100) == 1.0);
    CHECK(high(1) == 0.0);

    // no low outliers: the low side stays irrelevant even when asked for
    auto both = RelevanceFunction::from_extremes(v, ExtremeType::Both);
    CHECK(both(1) == 0.0);
    CHECK(both(100) == 1.0);

    auto low = RelevanceFunction::from_extremes(v, ExtremeType::Low);
    CHECK(low(100) == 0.0);

    std::vector<double> sym{-2, -1, 0, 1, 2};
    auto s = RelevanceFunction::from_extremes(sym, ExtremeType::Both);
    CHECK(s(0) == 0.0);
    for (double y : {0.3, 0.9, 1.7}) CHECK(s(y) == doctest::Approx(s(-y)));

    std::vector<double> mirrored{-100, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    auto m = RelevanceFunction::from_extremes(mirrored, ExtremeType::Both);
    CHECK(m(-100) == 1.0);
    CHECK(m(1) == 1.0);
    CHECK(m(9) == 0.0);

    std::vector<double> same{3, 3, 3, 3};
    CHECK_THROWS_AS(RelevanceFunction::from_extremes(same, ExtremeType::Both), DataError);
    CHECK_THROWS_AS(parse_extreme_type("middle"), DataError);
}

TEST_CASE("bumps partition rows in target order") {
    auto fn = example_fn();
    std::vector<double> y{5, 0.5, 9, 2, 6.5, 1.5, 3};
    auto bumps = find_bumps(y, fn, 0.5);
    REQUIRE(bumps.size() == 4);
    CHECK(bumps[0].kind == BumpKind::Rare);
    CHECK(bumps[0].rows == std::vector<std::size_t>{1, 5});
    CHECK(bumps[0].lo == 0.5);
    CHECK(bumps[0].hi == 1.5);
    CHECK(bumps[1].kind == BumpKind::Normal);
    CHECK(bumps[1].rows == std::vector<std::size_t>{3, 6});
    CHECK(bumps[2].kind == BumpKind::Rare);
    CHECK(bumps[2].rows == std::vector<std::size_t>{0, 4});
    CHECK(bumps[3].kind == BumpKind::Normal);
    CHECK(bumps[3].rows == std::vector<std::size_t>{2});

    auto all_rare = find_bumps(y, RelevanceFunction::from_points({{0, 1, 0}, {1, 1, 0}}), 0.5);
    REQUIRE(all_rare.size() == 1);
    CHECK(all_rare[0].kind == BumpKind::Rare);
    CHECK(all_rare[0].rows.size() == y.size());

    CHECK_THROWS_AS(find_bumps(y, fn, 1.5), DataError);
}
