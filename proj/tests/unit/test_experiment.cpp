#include <doctest.h>

#include <algorithm>

#include "majorize/errors.hpp"
#include "majorize/experiment.hpp"
#include "testing.hpp"

using namespace majorize;
namespace ts = testing_support;

namespace {

std::vector<std::vector<double>> sorted_rows(const Experiment& P) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < P.rows(); ++i) rows.emplace_back(P.row(i).begin(), P.row(i).end());
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace

TEST_CASE("canonical form drops zero rows and sorts descending") {
    auto P = Experiment::from_rows(2, {{0.25, 0.5}, {0, 0}, {0.75, 0.5}});
    CHECK(P.rows() == 2);
    CHECK(P(0, 0) == 0.75);
    CHECK(P(1, 0) == 0.25);
    auto Q = Experiment::from_rows(2, {{0.75, 0.5}, {0.25, 0.5}, {0, 0}, {0, 0}});
    CHECK(P == Q);
    CHECK(Experiment::from_flat(2, P.data()) == P);
}

TEST_CASE("canonicalization is invariant under permutation and padding") {
    ts::Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        auto cols = ts::random_minimal_columns(rng, 3, 5, 0.3, false);
        auto P = Experiment::from_columns(cols);
        for (auto& c : cols) {
            std::reverse(c.begin(), c.end());
            c.push_back(0.0);
        }
        CHECK(Experiment::from_columns(cols) == P);
    }
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(Experiment::from_columns({{1, 0}, {1}}), DimensionError);
    CHECK_THROWS_AS(Experiment::from_columns({{1, -0.1}}), DomainError);
    CHECK_THROWS_AS(Experiment::from_columns({}), DimensionError);
}

TEST_CASE("labels default and survive canonicalization") {
    auto P = Experiment::from_columns({{0.1, 0.9}, {0.5, 0.5}});
    CHECK(P.labels() == std::vector<std::string>{"p1", "p2"});
    auto Q = Experiment::from_columns({{0.1, 0.9}, {0.5, 0.5}}, {"x", "y"});
    CHECK(Q.labels()[1] == "y");
    CHECK(P == Q);
}

TEST_CASE("box_plus identity, stacking and multiset union") {
    auto P = Experiment::from_columns({{0.5, 0.5}, {0.2, 0.8}});
    auto Z = Experiment::from_columns({{0.0}, {0.0}});
    CHECK(box_plus(P, Z) == P);
    auto one = unit_experiment(2);
    auto two = box_plus(one, one);
    CHECK(two.rows() == 2);
    CHECK(two(0, 0) == 1.0);
    CHECK(two(1, 1) == 1.0);

    ts::Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        auto A = ts::random_minimal(rng, 3, ts::pick(rng, 1, 4), 0.3, false);
        auto B = ts::random_minimal(rng, 3, ts::pick(rng, 1, 4), 0.3, false);
        auto rows = sorted_rows(A);
        auto rb = sorted_rows(B);
        rows.insert(rows.end(), rb.begin(), rb.end());
        std::sort(rows.begin(), rows.end());
        CHECK(sorted_rows(box_plus(A, B)) == rows);
        CHECK(box_plus(A, B) == box_plus(B, A));
    }
    CHECK_THROWS_AS(box_plus(P, unit_experiment(3)), DimensionError);
}

TEST_CASE("box_times identity, single row and norms") {
    auto P = Experiment::from_columns({{0.5, 0.5}, {0.2, 0.8}});
    CHECK(box_times(P, unit_experiment(2)) == P);
    auto a = Experiment::from_columns({{2.0}, {3.0}});
    auto b = Experiment::from_columns({{5.0}, {7.0}});
    auto ab = box_times(a, b);
    CHECK(ab.rows() == 1);
    CHECK(ab(0, 0) == 10.0);
    CHECK(ab(0, 1) == 21.0);

    ts::Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        auto A = ts::random_minimal(rng, 3, ts::pick(rng, 1, 4), 0.3, false);
        auto B = ts::random_minimal(rng, 3, ts::pick(rng, 1, 4), 0.3, false);
        auto AB = box_times(A, B);
        auto na = column_norms(A), nb = column_norms(B), nab = column_norms(AB);
        for (std::size_t k = 0; k < 3; ++k) CHECK(ts::rel_close(nab[k], na[k] * nb[k], 1e-12));
        auto ns = column_norms(box_plus(A, B));
        for (std::size_t k = 0; k < 3; ++k) CHECK(ts::rel_close(ns[k], na[k] + nb[k], 1e-12));
    }
    CHECK_THROWS_AS(box_times(P, unit_experiment(3)), DimensionError);
}

TEST_CASE("semiring laws up to canonical form") {
    ts::Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        auto A = ts::random_minimal(rng, 2, ts::pick(rng, 1, 3), 0.3, false);
        auto B = ts::random_minimal(rng, 2, ts::pick(rng, 1, 3), 0.3, false);
        auto C = ts::random_minimal(rng, 2, ts::pick(rng, 1, 3), 0.3, false);
        CHECK(box_times(A, B).approx_equal(box_times(B, A), 1e-15));
        CHECK(box_times(box_times(A, B), C).approx_equal(box_times(A, box_times(B, C)), 1e-15));
        CHECK(box_plus(box_plus(A, B), C) == box_plus(A, box_plus(B, C)));
        CHECK(box_times(A, box_plus(B, C)).approx_equal(box_plus(box_times(A, B), box_times(A, C)), 1e-15));
    }
}

TEST_CASE("tensor_power and row cap") {
    auto P = Experiment::from_columns({{1.0, 0.0}, {0.5, 0.5}});
    auto P3 = tensor_power(P, 3);
    CHECK(P3 == box_times(box_times(P, P), P));
    CHECK(P3.rows() == 8);
    CHECK(tensor_power(P, 1) == P);
    CHECK(tensor_power(P, 0) == unit_experiment(2));
    CHECK_THROWS_AS(tensor_power(P, 15), ResourceError);
    CHECK_NOTHROW(tensor_power(P, 15, 40000));
}

TEST_CASE("classify_regime examples") {
    CHECK(classify_regime(Experiment::from_columns({{0.3, 0.7}, {0.3, 0.7}})) == Regime::EqualSupports);
    CHECK(classify_regime(Experiment::from_columns({{1, 0}, {0.5, 0.5}})) == Regime::Dichotomy);
    CHECK(classify_regime(Experiment::from_columns({{1, 0, 0}, {0, 1, 0}, {0.3, 0.3, 0.4}})) == Regime::Invalid);
    CHECK(classify_regime(Experiment::from_columns({{0.5, 0.5, 0}, {0.5, 0, 0.5}, {1, 0, 0}})) ==
          Regime::MinimalRestrictions);
    CHECK(classify_regime(Experiment::from_columns({{0.5, 0.5, 0}, {0.5, 0, 0.5}, {0.2, 0.4, 0.4}})) ==
          Regime::DominatingColumn);
    // Non-unit dichotomy shape is only dominating.
    CHECK(classify_regime(Experiment::from_columns({{2, 0}, {1, 1}})) == Regime::DominatingColumn);
    CHECK(is_semiring_member(Experiment::from_columns({{0.0}, {0.0}})));
}

TEST_CASE("regime of random supports matches enumeration") {
    ts::Rng rng(19);
    for (int t = 0; t < 300; ++t) {
        const std::size_t d = ts::pick(rng, 2, 4), n = ts::pick(rng, 1, 4);
        ts::Matrix cols(d, std::vector<double>(n));
        for (auto& c : cols)
            for (auto& x : c) x = ts::coin(rng, 0.4) ? 0.0 : ts::uniform(rng, 0.1, 1);
        bool any = false;
        for (auto& c : cols)
            for (double x : c) any = any || x > 0;
        if (!any) continue;
        auto P = Experiment::from_columns(cols);
        bool common = false;
        for (std::size_t i = 0; i < n; ++i) {
            bool all = true;
            for (auto& c : cols) all = all && c[i] > 0;
            common = common || all;
        }
        const Regime r = classify_regime(P);
        CHECK((r == Regime::Invalid) == !common);
        if (r != Regime::Invalid) {
            bool dom = true;
            for (std::size_t i = 0; i < n; ++i)
                if (cols[d - 1][i] == 0)
                    for (auto& c : cols) dom = dom && c[i] == 0;
            CHECK(is_dominating(r) == dom);
        }
    }
}

TEST_CASE("box_times keeps dominating column") {
    ts::Rng rng(23);
    for (int t = 0; t < 100; ++t) {
        auto A = ts::random_dominating(rng, 3, 4);
        auto B = ts::random_dominating(rng, 3, 4);
        CHECK(is_dominating(classify_regime(box_times(A, B))));
    }
}

TEST_CASE("restrict, supports and norms") {
    std::vector<double> v{0.2, 0.3, 0.5};
    CHECK(restrict(v, {0, 2}) == std::vector<double>{0.2, 0.0, 0.5});
    auto P = Experiment::from_columns({{0.5, 0.5, 0}, {0.25, 0.25, 0.5}});
    CHECK(column_support(P, 0).size() == 2);
    CHECK(common_support(P, {0, 1}).size() == 2);
    CHECK(column_norms(scaled(P, 3.0))[1] == doctest::Approx(3.0));
    CHECK(unit_norm(normalized(scaled(P, 3.0))));
    CHECK(set_union({0, 2}, {1}) == IndexSet{0, 1, 2});
    CHECK(set_intersection({0, 2}, {2, 3}) == IndexSet{2});
    CHECK(is_subset({2}, {1, 2}));
    CHECK(make_index_set({3, 1, 3}) == IndexSet{1, 3});
    CHECK(regime_from_string(to_string(Regime::Dichotomy)) == Regime::Dichotomy);
}
