#include <omp.h>

#include "doctest.h"
#include "qnev/error.hpp"
#include "support.hpp"

using namespace qnev;
using qtest::Gen;

namespace {

const Quaternion a{0.5, 0.7, 0, 0};

IntegratorConfig small(std::size_t n = 20000, std::uint64_t seed = 5) {
    IntegratorConfig c;
    c.samples = n;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("config validation") {
    IntegratorConfig c;
    c.samples = 999;
    CHECK_THROWS_AS(c.validate(), Error);
    c.samples = 1000;
    c.reject_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c.reject_tol = 1e-12;
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("constant integrands") {
    SemiregularRational id(LeftPoly::monomial(1));
    auto m = mean_log_abs(id, 2.0, small());
    CHECK(std::abs(m.value - std::log(2.0)) <= 1e-15);
    CHECK(m.std_error <= 1e-15);
    CHECK(m.rejected == 0);
    // rotation invariance: |u q| = r
    Quaternion u = Gen(1).on_sphere(1.0);
    auto mr = mean_log_abs([&](const Quaternion& w) { return norm(u * w); }, 1, 3.0, small());
    CHECK(std::abs(mr.value - std::log(3.0)) <= 1e-15);
}

TEST_CASE("mean of log|q - a| against the exact sphere mean") {
    // for |a| < R the 3-sphere mean of log|q - a| is log R + |a|^2 / (4 R^2)
    SemiregularRational f(LeftPoly::linear(a));
    IntegratorConfig cfg;
    auto m = mean_log_abs(f, 2.0, cfg);
    double exact = std::log(2.0) + 0.74 / 16.0;
    CHECK(std::abs(m.value - exact) <= 3 * m.std_error);
    Gen g(7);
    for (int t = 0; t < 5; ++t) {
        Quaternion b = g.quat(0.4);
        double R = g.uniform(1.5, 3.0);
        auto mb = mean_log_abs(SemiregularRational(LeftPoly::linear(b)), R, small(100000, 11 + t));
        CHECK(std::abs(mb.value - (std::log(R) + norm2(b) / (4 * R * R))) <= 4 * mb.std_error);
    }
}

TEST_CASE("determinism across runs and thread counts") {
    SemiregularRational f(LeftPoly{a, kJ, kOne});
    IntegratorConfig cfg = small(50000, 99);
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    auto m1 = mean_log_abs(f, 1.3, cfg);
    omp_set_num_threads(4);
    auto m4 = mean_log_abs(f, 1.3, cfg);
    omp_set_num_threads(saved);
    auto again = mean_log_abs(f, 1.3, cfg);
    CHECK(m1.value == m4.value);
    CHECK(m1.std_error == m4.std_error);
    CHECK(again.value == m1.value);
}

TEST_CASE("parallel and serial kernels agree") {
    SemiregularRational f(LeftPoly{a, kJ, kOne}, LeftPoly{2.0, kI});
    for (Scheme s : {Scheme::MonteCarlo, Scheme::AntitheticPair}) {
        IntegratorConfig cfg = small(30001, 3);
        cfg.scheme = s;
        Integrand g = [&](const Quaternion& w, double* out) {
            out[0] = std::log(f.abs_at(w));
            out[1] = out[0] * out[0];
            return true;
        };
        auto p = integrate(g, 2, 1.7, cfg);
        auto q = integrate_serial(g, 2, 1.7, cfg);
        for (int k = 0; k < 2; ++k) {
            CHECK(std::abs(p[k].value - q[k].value) <= 1e-12 * (1 + std::abs(q[k].value)));
            CHECK(std::abs(p[k].std_error - q[k].std_error) <= 1e-12);
            CHECK(p[k].effective_samples == q[k].effective_samples);
        }
        CHECK(p[0].effective_samples == (s == Scheme::AntitheticPair ? 15000u : 30001u));
    }
}

TEST_CASE("standard error scales as n^-1/2") {
    SemiregularRational f(LeftPoly::linear(a));
    auto m1 = mean_log_abs(f, 2.0, small(40000, 17));
    auto m2 = mean_log_abs(f, 2.0, small(80000, 17));
    CHECK(m2.std_error / m1.std_error == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("rejection policy") {
    // integrand errors count as rejections and are resampled
    Integrand flaky = [&](const Quaternion& w, double* out) {
        if (w.w > 0.999 * 2.0) throw Error(ErrorKind::EvalAtPole, "x");
        out[0] = 1.0;
        return true;
    };
    auto m = integrate_serial(flaky, 1, 2.0, small());
    CHECK(m[0].value == 1.0);
    Integrand half = [](const Quaternion& w, double* out) {
        out[0] = 0.0;
        return w.w > 0.0;
    };
    try {
        integrate(half, 1, 1.0, small());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooManyRejections);
    }
    // non-finite values are rejected, not averaged
    Integrand nan = [](const Quaternion& w, double* out) {
        out[0] = w.x > 0.9999 ? NAN : 2.0;
        return true;
    };
    auto mn = integrate(nan, 1, 1.0, small());
    CHECK(mn[0].value == 2.0);
    // zeros on the sphere are measure zero: q^2+1 on |q| = 1
    auto mz = mean_log_abs(SemiregularRational(LeftPoly{1.0, 0.0, 1.0}), 1.0, small());
    CHECK(mz.rejected <= 20);
}

TEST_CASE("Weil functions and proximity") {
    SemiregularRational c(LeftPoly::constant(Quaternion{3, 0, 0, 0}));
    CHECK(mean_weil(c, WeilFunction::analytic(Quaternion(0.5)), 2.0, small()).value == 0.0);
    SemiregularRational id(LeftPoly::monomial(1));
    CHECK(mean_weil(id, WeilFunction::analytic(std::nullopt), std::exp(1.0), small()).value ==
          doctest::Approx(1.0).epsilon(1e-14));
    SemiregularRational f(LeftPoly::linear(a));
    CHECK(mean_weil(f, WeilFunction::analytic(Quaternion{}), 50.0, small()).value == 0.0);

    WeilFunction lam = WeilFunction::analytic(a);
    CHECK(lam(Quaternion{}) == doctest::Approx(std::log(1 / norm(a))));
    CHECK(WeilFunction::analytic(std::nullopt)(Quaternion{0, 3, 0, 0}) == doctest::Approx(std::log(3.0)));
    CHECK(lam.at_infinity() == 0.0);

    // bounded offset changes the mean by at most its sup
    auto offset = [](const Quaternion& q) { return 0.3 * std::sin(q.w) * std::cos(q.y); };
    WeilFunction custom = WeilFunction::custom(a, offset);
    SemiregularRational h(LeftPoly{a, kJ, kOne});
    double m1 = mean_weil(h, lam, 1.2, small()).value;
    double m2 = mean_weil(h, custom, 1.2, small()).value;
    CHECK(std::abs(m1 - m2) <= 0.3);

    Gen g(19);
    for (int t = 0; t < 100; ++t) {
        SemiregularRational p(g.poly(g.integer(1, 3)));
        Quaternion b = g.quat();
        CHECK(proximity(p, WeilFunction::analytic(b), g.uniform(0.2, 3.0), small(2000, t)).value >= 0.0);
    }
}

TEST_CASE("paired reflection means") {
    SemiregularRational sp(LeftPoly{1.0, 0.0, 1.0});
    auto [x, y] = paired_reflection_mean(sp, 1.7, small());
    CHECK(x.value == y.value);
    SemiregularRational ns(LeftPoly::linear(kI));
    auto [u, v] = paired_reflection_mean(ns, 1.7, small());
    CHECK(u.value != v.value);
    SemiregularRational c(LeftPoly::constant(2.5));
    auto [c1, c2] = paired_reflection_mean(c, 1.0, small());
    CHECK(c1.value == doctest::Approx(std::log(2.5)).epsilon(1e-15));
    CHECK(c1.value == c2.value);
}
