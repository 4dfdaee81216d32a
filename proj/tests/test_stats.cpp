#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "qloops/common.hpp"
#include "qloops/partition.hpp"
#include "qloops/rng.hpp"
#include "qloops/stats.hpp"

using namespace qloops;
using namespace qloops::stats;

TEST_CASE("means and standard errors") {
    const std::vector<double> xs{1, 2, 3, 4};
    auto m = iid_mean(xs);
    CHECK(m.mean == doctest::Approx(2.5));
    CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(m.samples == 4);

    // alternating series: batches of even length see no variance
    std::vector<double> alt;
    for (int i = 0; i < 640; ++i) alt.push_back(i % 2 ? 1.0 : -1.0);
    auto b = batch_means(alt, 32);
    CHECK(b.mean == doctest::Approx(0.0));
    CHECK(b.std_error == doctest::Approx(0.0));

    const std::vector<MeanEstimate> parts{{1.0, 0.3, 10}, {3.0, 0.4, 10}};
    auto p = pool(parts);
    CHECK(p.mean == doctest::Approx(2.0));
    CHECK(p.std_error == doctest::Approx(0.25));
    CHECK(p.samples == 20);
}

TEST_CASE("Kolmogorov distribution tail") {
    const double lam[] = {0.3, 0.5, 1.0, 1.18, 1.5, 2.0};
    const double want[] = {0.9999906941986655,  0.9639452436648751,  0.26999967167735456,
                           0.1234538094297657, 0.022217962616525127, 0.0006709252557796953};
    for (int i = 0; i < 6; ++i) CHECK(kolmogorov_q(lam[i]) == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("two-sample KS statistic") {
    auto r = ks_two_sample({0.1, 0.4, 0.45, 0.8, 0.9, 1.3}, {0.2, 0.25, 0.3, 0.35, 0.5, 0.6, 0.7});
    CHECK(r.statistic == doctest::Approx(0.5));
    Rng rng(3);
    std::vector<double> a, b, c;
    for (int i = 0; i < 4000; ++i) {
        a.push_back(rng.uniform());
        b.push_back(rng.uniform());
        c.push_back(std::pow(rng.uniform(), 0.8));
    }
    CHECK(ks_two_sample(a, b).p_value > 0.01);
    CHECK(ks_two_sample(a, c).p_value < 0.01);
}

TEST_CASE("log-sum-exp") {
    const std::vector<double> v{1000.0, 1000.0};
    CHECK(log_sum_exp(v) == doctest::Approx(1000.0 + std::log(2.0)));
    const std::vector<double> none{-std::numeric_limits<double>::infinity()};
    CHECK(std::isinf(log_sum_exp(none)));
}

TEST_CASE("rng streams are reproducible and distinct") {
    auto a = Rng::for_stream(42, 0), b = Rng::for_stream(42, 0), c = Rng::for_stream(42, 1);
    for (int i = 0; i < 5; ++i) {
        const auto x = a.next();
        CHECK(x == b.next());
        CHECK(x != c.next());
    }
    Rng r(1);
    std::vector<int> hits(5);
    for (int i = 0; i < 50000; ++i) ++hits[r.index(5)];
    for (int h : hits) CHECK(std::abs(h - 10000) < 400);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform_pos();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("spin parsing") {
    CHECK(parse_spin("1/2").two_s == 1);
    CHECK(parse_spin("3/2").two_s == 3);
    CHECK(parse_spin("1").two_s == 2);
    CHECK(parse_spin("2").two_s == 4);
    CHECK_THROWS_AS(parse_spin("1/3"), DomainError);
    CHECK_THROWS_AS(parse_spin("0"), DomainError);
    CHECK_THROWS_AS(parse_spin("abc"), DomainError);
    CHECK(format_spin(Spin{3}) == "3/2");
    CHECK(format_spin(Spin{2}) == "1");
}

TEST_CASE("big integer logs") {
    BigInt big = 1;
    for (int i = 0; i < 2000; ++i) big *= 3;
    CHECK(log_bigint(big) == doctest::Approx(2000 * std::log(3.0)).epsilon(1e-14));
    CHECK(log_bigint(BigInt(7)) == doctest::Approx(std::log(7.0)));
    CHECK(std::isinf(log_bigint(BigInt(0))));
}

TEST_CASE("partitions") {
    Partition p{4, 2, 1};
    CHECK(p.size() == 7);
    CHECK(p.length() == 3);
    CHECK(p.conjugate() == Partition{3, 2, 1, 1});
    CHECK(Partition::from_unsorted({1, 0, 3, 2}) == Partition{3, 2, 1});
    CHECK(p[5] == 0);
    CHECK(p.to_string() == "(4,2,1)");
}
