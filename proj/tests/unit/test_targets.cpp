#include <doctest.h>

#include "rebalance/targets.hpp"

using namespace rebalance;

namespace {

const ClassCounts imbc{{"normal", 859}, {"rare1", 10}, {"rare2", 131}};

ClassCounts c(std::size_t normal, std::size_t rare1, std::size_t rare2) {
    return {{"normal", normal}, {"rare1", rare1}, {"rare2", rare2}};
}

} // namespace

TEST_CASE("under-sampling resolution") {
    CHECK(resolve_under(imbc, ClassPercSpec::parse("normal=0.1,rare2=0.9")) == c(85, 10, 117));
    CHECK(resolve_under(imbc, ClassPercSpec::balance()) == c(10, 10, 10));
    CHECK(resolve_under(imbc, ClassPercSpec::extreme()) == c(0, 10, 0));
    CHECK(resolve_under(imbc, ClassPercSpec::parse("normal=1,rare1=1,rare2=1")) == imbc);
    CHECK_THROWS_AS(resolve_under(imbc, ClassPercSpec::parse("normal=1.5")), DataError);
    CHECK_THROWS_AS(resolve_under(imbc, ClassPercSpec::parse("other=0.5")), DataError);
}

TEST_CASE("over-sampling resolution") {
    CHECK(resolve_over(imbc, ClassPercSpec::parse("rare1=5")) == c(859, 50, 131));
    CHECK(resolve_over(imbc, ClassPercSpec::parse("rare1=4,rare2=2.5")) == c(859, 40, 327));
    CHECK(resolve_over(imbc, ClassPercSpec::balance()) == c(859, 859, 859));
    CHECK(resolve_over(imbc, ClassPercSpec::extreme()) == c(859, 73788, 5633));
    CHECK_THROWS_AS(resolve_over(imbc, ClassPercSpec::parse("rare1=0.5")), DataError);
}

TEST_CASE("importance and synthetic resolution") {
    CHECK(resolve_importance(imbc, ClassPercSpec::parse("normal=0.4,rare1=6")) == c(343, 60, 131));
    CHECK(resolve_importance(imbc, ClassPercSpec::balance()) == c(333, 333, 333));
    CHECK(resolve_importance(imbc, ClassPercSpec::extreme()) == c(11, 919, 70));

    CHECK(resolve_synthetic(imbc, ClassPercSpec::parse("normal=0.5,rare1=10,rare2=3")) == c(429, 100, 393));
    CHECK(resolve_synthetic(imbc, ClassPercSpec::parse("normal=0.3,rare1=5,rare2=2")) == c(257, 50, 262));
    CHECK(resolve_synthetic(imbc, ClassPercSpec::parse("normal=0.4,rare1=8,rare2=6")) == c(343, 80, 786));
    CHECK(resolve_synthetic(imbc, ClassPercSpec::parse("normal=0.2,rare1=10")) == c(171, 100, 131));
    CHECK(resolve_synthetic(imbc, ClassPercSpec::balance()) == c(333, 332, 332));
    CHECK(resolve_synthetic(imbc, ClassPercSpec::extreme()) == c(11, 919, 70));

    ClassCounts even{{"a", 5}, {"b", 7}};
    CHECK(resolve_synthetic(even, ClassPercSpec::balance()) == ClassCounts{{"a", 6}, {"b", 6}});
}

TEST_CASE("percentage parsing") {
    auto spec = ClassPercSpec::parse(" a = 0.5 , b=2 ");
    CHECK(spec.mode == PercMode::Explicit);
    CHECK(spec.perc.at("a") == 0.5);
    CHECK(spec.perc.at("b") == 2.0);
    CHECK(ClassPercSpec::parse("balance").mode == PercMode::Balance);
    CHECK(ClassPercSpec::parse("extreme").mode == PercMode::Extreme);
    CHECK_THROWS_AS(ClassPercSpec::parse("a"), DataError);
    CHECK_THROWS_AS(ClassPercSpec::parse("a=x"), DataError);
    CHECK_THROWS_AS(ClassPercSpec::parse("a=1,a=2"), DataError);
    CHECK_THROWS_AS(ClassPercSpec::parse("a=-1"), DataError);

    auto bumps = BumpPercSpec::parse("0.5, 3");
    CHECK(bumps.perc == std::vector<double>{0.5, 3.0});
    CHECK(BumpPercSpec::parse("extreme").mode == PercMode::Extreme);
    CHECK_THROWS_AS(BumpPercSpec::parse("0.5,,3"), DataError);
}

TEST_CASE("percentages that are decimal fractions truncate as written") {
    ClassCounts counts{{"a", 100}};
    CHECK(resolve_importance(counts, ClassPercSpec::parse("a=0.29")).at("a") == 29);
    CHECK(resolve_importance(counts, ClassPercSpec::parse("a=0.57")).at("a") == 57);
}

TEST_CASE("bump resolution with sizes 805 / 195") {
    const BumpSizes b{{BumpKind::Normal, BumpKind::Rare}, {805, 195}};
    auto total = [](const std::vector<std::size_t>& v) { return v[0] + v[1]; };

    CHECK(total(resolve_bumps_under(b, BumpPercSpec::list({0.5}))) == 597);
    CHECK(total(resolve_bumps_under(b, BumpPercSpec::balance())) == 390);
    CHECK(total(resolve_bumps_under(b, BumpPercSpec::extreme())) == 242);

    CHECK(total(resolve_bumps_over(b, BumpPercSpec::list({2.5}))) == 1487);
    CHECK(total(resolve_bumps_over(b, BumpPercSpec::balance())) == 1805);
    CHECK(total(resolve_bumps_over(b, BumpPercSpec::extreme())) == 4323);

    CHECK_THROWS_AS(resolve_bumps_under(b, BumpPercSpec::list({0.5, 0.5})), DataError);
    CHECK_THROWS_AS(resolve_bumps_under(b, BumpPercSpec::list({1.5})), DataError);
    const BumpSizes no_rare{{BumpKind::Normal}, {1000}};
    CHECK_THROWS_AS(resolve_bumps_under(no_rare, BumpPercSpec::balance()), DataError);
    CHECK_THROWS_AS(resolve_bumps_over(no_rare, BumpPercSpec::balance()), DataError);
}

TEST_CASE("bump resolution with sizes 849 / 151") {
    const BumpSizes b{{BumpKind::Normal, BumpKind::Rare}, {849, 151}};
    CHECK(resolve_bumps_scaled(b, BumpPercSpec::list({0.1, 8})) == std::vector<std::size_t>{84, 1208});
    CHECK(resolve_bumps_scaled(b, BumpPercSpec::balance()) == std::vector<std::size_t>{500, 500});
    CHECK(resolve_bumps_scaled(b, BumpPercSpec::extreme()) == std::vector<std::size_t>{151, 849});

    CHECK(resolve_bumps_mixed(b, BumpPercSpec::list({0.5, 3})) == std::vector<std::size_t>{424, 604});
    CHECK(resolve_bumps_mixed(b, BumpPercSpec::balance()) == std::vector<std::size_t>{500, 500});
    CHECK_THROWS_AS(resolve_bumps_mixed(b, BumpPercSpec::list({1.5, 3})), DataError);
    CHECK_THROWS_AS(resolve_bumps_mixed(b, BumpPercSpec::list({0.5})), DataError);
}

TEST_CASE("inverse frequency keeps the total") {
    auto inv = inverse_frequency({859, 10, 131});
    CHECK(inv == std::vector<std::size_t>{11, 919, 70});
    CHECK_THROWS_AS(inverse_frequency({3, 0}), DataError);
}
