#include <doctest.h>

#include <cmath>
#include <numbers>

#include <hecke/context.hpp>
#include <hecke/errors.hpp>
#include <hecke/moebius.hpp>

using namespace hecke;

TEST_SUITE("core") {

TEST_CASE("make_context constants") {
    const auto c3 = make_context(3);
    CHECK(c3.lambda == 1.0);
    CHECK(c3.kappa == 1);
    CHECK(c3.h == 0);
    CHECK(c3.R == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-14));
    CHECK(c3.r == doctest::Approx(-0.3819660).epsilon(1e-7));

    const auto c4 = make_context(4);
    CHECK(c4.lambda == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(c4.R == 1.0);
    CHECK(c4.r == doctest::Approx(1 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(c4.kappa == 1);

    const auto c5 = make_context(5);
    CHECK(c5.lambda == doctest::Approx(1.6180340).epsilon(1e-7));
    CHECK(c5.R == doctest::Approx(0.8270909152852018).epsilon(1e-14));
    CHECK(std::abs(c5.R * c5.R + (2 - c5.lambda) * c5.R - 1) < 1e-12);
    CHECK(c5.kappa == 3);
}

TEST_CASE("h and kappa table") {
    const int h[] = {0, 1, 1, 2, 2, 3, 3, 4, 4, 5};
    const int kappa[] = {1, 1, 3, 2, 5, 3, 7, 4, 9, 5};
    for (int q = 3; q <= 12; ++q) {
        const auto c = make_context(q);
        CHECK(c.h == h[q - 3]);
        CHECK(c.kappa == kappa[q - 3]);
        CHECK(c.lambda == doctest::Approx(2 * std::cos(std::numbers::pi / q)).epsilon(1e-15));
    }
}

TEST_CASE("R relations") {
    for (int q = 3; q <= 12; ++q) {
        const auto c = make_context(q);
        if (c.even()) {
            CHECK(c.R == 1.0);
        } else {
            // R^2 + (2 - lambda) R = 1
            CHECK(std::abs(c.R * c.R + (2 - c.lambda) * c.R - 1) < 1e-12);
        }
        CHECK(c.lambda / 2 < c.R);
        CHECK(c.R <= 1.0);
        CHECK(c.r == doctest::Approx(c.R - c.lambda).epsilon(1e-15));
    }
}

TEST_CASE("q below 3 is rejected") {
    CHECK_THROWS_AS(make_context(2), DomainError);
    CHECK_THROWS_AS(make_context(-7), DomainError);
}

TEST_CASE("group relations") {
    for (int q = 3; q <= 12; ++q) {
        const auto c = make_context(q);
        const Moebius S = Moebius::S(), T = Moebius::T(c);
        const Moebius s2 = S * S;
        CHECK(s2.a == doctest::Approx(-1.0));
        CHECK(s2.d == doctest::Approx(-1.0));
        // (ST)^q = +-1 in PSL(2, R)
        const Moebius st = power(S * T, q);
        CHECK(std::abs(std::abs(st.a) - 1) < 1e-9);
        CHECK(std::abs(st.b) < 1e-9);
        CHECK(std::abs(st.c) < 1e-9);
        CHECK(std::abs(st.a - st.d) < 1e-9);
    }
    CHECK(Moebius::S_tilde().det() == -1.0);
}

TEST_CASE("moebius word") {
    const auto c = make_context(3);
    const MoebiusWord w(c, 0, {2});
    CHECK(w.apply(0.0) == doctest::Approx(-0.5));
    const Moebius t3 = Moebius::T(c, 3);
    CHECK(t3.apply(0.25) == doctest::Approx(3.25));
    CHECK(power(Moebius::T(c), -2).apply(0.0) == doctest::Approx(-2.0));
    CHECK(Moebius::S().derivative(2.0) == doctest::Approx(0.25));
}

}
