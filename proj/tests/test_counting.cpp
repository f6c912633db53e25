#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "sxc/counting.hpp"

using namespace sxc;
using sxc_test::oracle_count;

// The independent nested-loop oracle lives in oracles.hpp.

static Weights preset_sqrt2() { return Weights::preset("sqrt2"); }

TEST_CASE("open/closed counts: pinned examples") {
    Counter c11(Weights::parse("1,1"));
    CHECK(c11.count_open(Surd(2)) == 0);
    CHECK(c11.count_closed(Surd(2)) == 6);
    CHECK(c11.count_closed(Surd(0)) == 1);

    Counter cs(preset_sqrt2());
    CHECK(cs.count_open(Surd(3)) == 1);
    CHECK(cs.count_open(Surd(5)) == 5);
    CHECK(cs.count_closed(Surd(3)) == oracle_count(cs.weights(), Surd(3), false, 0));
}

TEST_CASE("recursive count equals the nested-loop oracle") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> rad(1, 10);
    for (int rep = 0; rep < 18; ++rep) {
        unsigned d = 2 + rep % 3;
        std::vector<Surd> ws;
        for (unsigned j = 0; j < d; ++j) {
            mpq_class q(1 + (long)(rng() % 6), 1 + (long)(rng() % 3));
            q.canonicalize();
            Surd s = Surd::radical(q, rad(rng));
            if (s.to_double() < 0.6) s += Surd(1);
            ws.push_back(s);
        }
        Weights w = Weights::from_surds(ws);
        Counter c(w);
        for (double tq : {7.0, 19.5, 33.25}) {
            Surd t = Surd(mpq_class(tq));
            CHECK(c.count_open(t, false) == oracle_count(w, t, true, 1));
            CHECK(c.count_open(t, true) == oracle_count(w, t, false, 1));
            CHECK(c.count_closed(t, true) == oracle_count(w, t, false, 0));
            CHECK(c.count_closed(t, false) == oracle_count(w, t, true, 0));
        }
    }
}

TEST_CASE("counts at exact jump thresholds (t = w.m)") {
    Counter c(preset_sqrt2());
    const Weights& w = c.weights();
    // t exactly on the hyperplane through m = (3, 2)
    Surd t = w.dot_surd({3, 2});
    std::int64_t nl = c.count_open(t, false), nr = c.count_open(t, true);
    CHECK(nr - nl == c.tau(t));
    CHECK(c.tau(t) == 1);
    CHECK(nl == oracle_count(w, t, true, 1));
    CHECK(nr == oracle_count(w, t, false, 1));
}

TEST_CASE("monotonicity and sandwich") {
    Counter c(Weights::preset("sqrt23"));
    std::int64_t prev_open = -1, prev_closed = -1;
    for (int k = 1; k <= 30; ++k) {
        Surd t = Surd(mpq_class(k, 2));
        std::int64_t no = c.count_open(t), nc = c.count_closed(t);
        CHECK(no >= prev_open);
        CHECK(nc >= prev_closed);
        CHECK(no <= nc);
        prev_open = no;
        prev_closed = nc;
    }
}

TEST_CASE("degree-d growth of the closed count") {
    for (const char* name : {"sqrt2", "golden", "sqrt23", "sqrt1235"}) {
        Weights w = Weights::preset(name);
        Counter c(w);
        double maxw = 0;
        for (unsigned j = 0; j < w.dim(); ++j) maxw = std::max(maxw, w.real(j).to_double());
        double t = 200.0 * maxw;
        std::int64_t n = c.count_closed(Surd(mpq_class(t)));
        double lead = std::pow(t, (double)w.dim());
        double ratio = (double)n * factorial(w.dim()).get_d() * w.prod_real().to_double() / lead;
        CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("Ehrhart sanity: rational weights, integer thresholds") {
    Counter c(Weights::parse("1,1"));
    for (long t = 0; t <= 25; ++t)
        CHECK(c.count_closed(Surd(t)) == (t + 1) * (t + 2) / 2);

    Counter c2(Weights::parse("1/2,3/2"));
    for (long t = 1; t <= 12; ++t) {
        std::int64_t direct = 0;  // defining sum
        for (long x1 = 0; 1 * x1 <= 2 * t; ++x1)
            for (long x2 = 0; x1 + 3 * x2 <= 2 * t; ++x2) ++direct;
        CHECK(c2.count_closed(Surd(t)) == direct);
    }
}

TEST_CASE("shifted counts") {
    Counter c(preset_sqrt2());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ud(0.05, 0.95);

    Surd t(10);
    // u = 0 reduces to the open count
    ShiftVector zero = ShiftVector::from_doubles({0.0, 0.0});
    CHECK(c.count_shifted(t, zero) == c.count_open(t));

    // period 1: u and u + z give identical counts (different enumerations)
    for (int rep = 0; rep < 12; ++rep) {
        ShiftVector u = ShiftVector::from_doubles({ud(rng), ud(rng)});
        ShiftVector uz = u;
        uz.u[0] += (long)(rng() % 7) - 3;
        uz.u[1] += (long)(rng() % 7) - 3;
        CHECK(c.count_shifted(t, u) == c.count_shifted(t, uz));
        CHECK(c.count_shifted(t, u, true) == c.count_shifted(t, uz, true));
    }

    // u = e_half: count of {x >= 1, w.x < t + w.e_half}
    ShiftVector half;
    half.u = {mpq_class(1, 2), mpq_class(1, 2)};
    Surd budget = t + c.weights().sum_surd() * Surd(mpq_class(1, 2));
    CHECK(c.count_shifted(t, half) == c.count_open(budget));

    // and the half-shift reduction: N(t - w.e_half; w, e_half) = N^-(t; w)
    for (double tv : {9.0, 23.45, 61.2}) {
        Surd tt = Surd(mpq_class(tv));
        Surd tshift = tt - c.weights().sum_surd() * Surd(mpq_class(1, 2));
        CHECK(c.count_shifted(tshift, half) == c.count_open(tt));
    }
}

TEST_CASE("tau") {
    Counter c(preset_sqrt2());
    const Weights& w = c.weights();
    CHECK(c.tau(w.dot_surd({1, 1})) == 1);
    CHECK(c.tau(Surd(mpq_class(1, 2))) == 0);

    Counter c11(Weights::parse("1,1"));
    CHECK(c11.tau(Surd(mpq_class(1, 2))) == 0);
    CHECK(c11.tau(Surd(4)) == 3);  // (1,3),(2,2),(3,1): rational weights degenerate

    // irrational inclines: tau in {0,1} over every jump w.m with m <= 50
    long hits = 0;
    for (long m1 = 1; m1 <= 50; ++m1)
        for (long m2 = 1; m2 <= 50; ++m2) {
            long tv = c.tau(w.dot_surd({m1, m2}));
            CHECK(tv == 1);
            hits += tv;
        }
    CHECK(hits == 2500);
}

TEST_CASE("leading terms: explicit low-dimension forms") {
    BernoulliEngine eng;
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> ud(0.3, 3.0);

    // d=2 explicit polynomial
    for (int rep = 0; rep < 25; ++rep) {
        double w1 = ud(rng), w2 = ud(rng), t = ud(rng) * 20;
        Counter c(Weights::from_reals({Real(w1), Real(w2)}));
        double expect = t * t / (2 * w1 * w2) - t / (2 * w1) - t / (2 * w2) +
                        (w1 * w1 + w2 * w2 + 3 * w1 * w2) / (12 * w1 * w2);
        CHECK(c.leading_open(Real(t)).to_double() == doctest::Approx(expect).epsilon(1e-12));
        double expect_closed = t * t / (2 * w1 * w2) + t / (2 * w1) + t / (2 * w2) +
                               (w1 * w1 + w2 * w2 + 3 * w1 * w2) / (12 * w1 * w2);
        CHECK(c.leading_closed(Real(t)).to_double() ==
              doctest::Approx(expect_closed).epsilon(1e-12));
    }

    // pinned value: d=2, t=10, w=(1,1): ((10-1)^2 - 2/12)/2
    Counter c11(Weights::parse("1,1"));
    CHECK(c11.leading_open(Real(10)).to_double() ==
          doctest::Approx((81.0 - 2.0 / 12.0) / 2).epsilon(1e-15));

    // d=3 explicit form
    for (int rep = 0; rep < 10; ++rep) {
        double w1 = ud(rng), w2 = ud(rng), w3 = ud(rng), t = ud(rng) * 15;
        Counter c(Weights::from_reals({Real(w1), Real(w2), Real(w3)}));
        double s = (w1 + w2 + w3) / 2, q = (w1 * w1 + w2 * w2 + w3 * w3) / 4;
        double tm = t - s;
        double expect = (tm * tm * tm - q * tm) / (6 * w1 * w2 * w3);
        CHECK(c.leading_open(Real(t)).to_double() == doctest::Approx(expect).epsilon(1e-12));
    }

    // d=4 explicit form
    for (int rep = 0; rep < 10; ++rep) {
        double wv[4], t = ud(rng) * 12;
        for (auto& x : wv) x = ud(rng);
        Counter c(Weights::from_reals({Real(wv[0]), Real(wv[1]), Real(wv[2]), Real(wv[3])}));
        double s = (wv[0] + wv[1] + wv[2] + wv[3]) / 2;
        double q2 = 0, q4 = 0, pairs = 0, prod = 1;
        for (int i = 0; i < 4; ++i) {
            q2 += wv[i] * wv[i];
            q4 += std::pow(wv[i], 4);
            prod *= wv[i];
            for (int j = i + 1; j < 4; ++j) pairs += wv[i] * wv[i] * wv[j] * wv[j];
        }
        double c2 = -q2 / 2, c0 = 7.0 / 240 * q4 + pairs / 24;
        double tm = t - s;
        double expect = (std::pow(tm, 4) + c2 * tm * tm + c0) / (24 * prod);
        CHECK(c.leading_open(Real(t)).to_double() == doctest::Approx(expect).epsilon(1e-12));
    }

    // symmetry: L^-(−t) = (−1)^d L^+(t)
    for (int rep = 0; rep < 15; ++rep) {
        unsigned d = 2 + rep % 3;
        std::vector<Real> wr;
        for (unsigned j = 0; j < d; ++j) wr.emplace_back(ud(rng));
        Counter c(Weights::from_reals(wr));
        Real t(ud(rng) * 10);
        Real lhs = c.leading_open(-t);
        Real rhs = c.leading_closed(t);
        if (d % 2 == 1) rhs = -rhs;
        CHECK(abs(lhs - rhs).to_double() <= 1e-25 * (1 + std::abs(rhs.to_double())));
    }
}

TEST_CASE("leading_shifted specializations") {
    Counter c(preset_sqrt2());
    Real t(7.25);
    ShiftVector half;
    half.u = {mpq_class(1, 2), mpq_class(1, 2)};
    // ((1/2)) = 0: plain star polynomial over the normalizer
    Real direct = c.engine().star_poly(2, t, c.weights().reals()) /
                  (Real(2) * c.weights().prod_real());
    CHECK(abs(c.leading_shifted(t, half) - direct).to_double() < 1e-30);

    ShiftVector zero;
    zero.u = {mpq_class(0), mpq_class(0)};
    CHECK(abs(c.leading_shifted(t, zero) - c.leading_open(t)).to_double() < 1e-30);

    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ud(0.1, 0.9);
    for (int rep = 0; rep < 10; ++rep) {
        ShiftVector u = ShiftVector::from_doubles({ud(rng), ud(rng)});
        ShiftVector uz = u;
        uz.u[0] += 3;
        uz.u[1] -= 2;
        CHECK(abs(c.leading_shifted(t, u) - c.leading_shifted(t, uz)).to_double() < 1e-30);
    }
}

TEST_CASE("error reports and one-sided limits") {
    Counter c(preset_sqrt2());
    const Weights& w = c.weights();

    // at a jump: N^-(t+0) - N^-(t-0) = tau <= 2*RRR^-
    for (long m1 = 1; m1 <= 5; ++m1)
        for (long m2 = 1; m2 <= 5; ++m2) {
            Surd t = w.dot_surd({m1, m2});
            CountReport r = c.report_open(t);
            long tv = c.tau(t);
            CHECK(r.tau == tv);
            CHECK((double)tv <= 2.0 * r.rrr.to_double() + 1e-12);
        }

    // between jumps the two limits coincide
    CountReport r = c.report_open(Surd(mpq_class(77, 10)));
    CHECK(r.tau == 0);
    CHECK(abs(r.error_left - r.error_right).to_double() < 1e-28);
    CHECK(r.rrr.to_double() == doctest::Approx(std::abs(r.error_left.to_double())));
}

TEST_CASE("invariance principle identities") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ud(0.1, 0.9);
    for (const char* name : {"sqrt2", "sqrt23"}) {
        Counter c(Weights::preset(name));
        unsigned d = c.weights().dim();
        for (double t : {10.0, 17.77, 42.4242}) {
            std::vector<ShiftVector> us;
            for (int i = 0; i < 20; ++i) {
                std::vector<double> uv;
                for (unsigned j = 0; j < d; ++j)
                    uv.push_back(ud(rng) + double((long)(rng() % 9) - 4));
                us.push_back(ShiftVector::from_doubles(uv));
            }
            InvarianceReport rep = c.invariance_check(Surd(mpq_class(t)), us);
            INFO(rep.violation);
            CHECK(rep.ok);
        }
    }
}

TEST_CASE("invariance at a jump threshold") {
    Counter c(preset_sqrt2());
    Surd t = c.weights().dot_surd({4, 3});  // tau(t) = 1 here
    std::vector<ShiftVector> us = {ShiftVector::from_doubles({0.5, 0.5}),
                                   ShiftVector::from_doubles({0.3, 0.8})};
    InvarianceReport rep = c.invariance_check(t, us);
    INFO(rep.violation);
    CHECK(rep.ok);
}

TEST_CASE("weight normalization and incline reciprocity") {
    for (const char* name : {"sqrt2", "golden", "sqrt23", "sqrt235", "sqrt1235"}) {
        Weights w = Weights::preset(name);
        std::vector<Real> unit = w.unit();
        Real norm = Real::with_prec(w.prec());
        for (const Real& x : unit) norm += x * x;
        CHECK(std::fabs(norm.to_double() - 1.0) < 1e-35);
        for (unsigned j = 0; j < w.dim(); ++j)
            for (unsigned l = 0; l < w.dim(); ++l) {
                Real prod = w.incline_real(j, l) * w.incline_real(l, j);
                CHECK(std::fabs(prod.to_double() - 1.0) < 1e-35);
            }
    }
}

TEST_CASE("numeric (non-surd) weights: exact dyadics, ambiguous boundaries") {
    Counter c(Weights::from_reals({Real(1.0), Real(1.0)}));
    CHECK(c.count_open_numeric(Real(2.5)) == 1);
    CHECK(c.count_closed_numeric(Real(2.5)) == 6);
    // t = 2.0 puts lattice points exactly on the boundary
    CHECK_THROWS_AS(c.count_closed_numeric(Real(2.0)), BoundaryAmbiguity);
    CHECK_THROWS_AS(c.tau(Surd(2)), UnsupportedRepresentation);

    // irrational-ish numeric weights behave normally
    Counter c2(Weights::from_reals({Real(1.0), sqrt(Real(2))}));
    Counter c2s(preset_sqrt2());
    for (double t : {3.0, 5.0, 9.75})
        CHECK(c2.count_open_numeric(Real(t)) == c2s.count_open(Surd(mpq_class(t))));
}

TEST_CASE("weight parsing variants") {
    Weights a = Weights::parse("3/2,2*sqrt5");
    CHECK((a.surd(0) - Surd(mpq_class(3, 2))).is_zero());
    CHECK((a.surd(1) - Surd::radical(2, 5)).is_zero());

    Weights b = Weights::parse("1+sqrt2,2");
    CHECK((b.surd(0) - (Surd(1) + Surd::sqrt_of(2))).is_zero());

    Weights c = Weights::parse("1.25,2");
    CHECK((c.surd(0) - Surd(mpq_class(5, 4))).is_zero());
    CHECK(c.rational());

    Weights d = Weights::parse("1,phi");
    CHECK((d.surd(1) - (Surd(mpq_class(1, 2)) + Surd::radical(mpq_class(1, 2), 5))).is_zero());

    CHECK_THROWS_AS(Weights::parse(""), ConfigError);
    CHECK_THROWS_AS(Weights::parse("sqrt0"), ConfigError);
    CHECK_THROWS_AS(Weights::parse("0,1"), Error);  // weights must be positive
}

TEST_CASE("invariance principle holds in dimension 4") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> fd(0.15, 0.85);
    Counter c(Weights::preset("sqrt1235"));
    for (double tv : {25.0, 41.7}) {
        std::vector<ShiftVector> us;
        for (int k = 0; k < 6; ++k) {
            std::vector<double> uv;
            for (unsigned j = 0; j < 4; ++j) uv.push_back(fd(rng) + double((long)(rng() % 5) - 2));
            us.push_back(ShiftVector::from_doubles(uv));
        }
        InvarianceReport rep = c.invariance_check(Surd(mpq_class(tv)), us);
        INFO(rep.violation);
        CHECK(rep.ok);
    }
}
