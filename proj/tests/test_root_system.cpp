#include "helpers.hpp"
#include "kacmod/root_system.hpp"

#include <doctest.h>

#include <map>

using namespace kacmod;

namespace {

// Brute-force count of (m_0..m_l) >= 0 with sum colabel_i m_i = k.
int count_dominant(int l, int k) {
    int count = 0;
    std::vector<int> m(static_cast<std::size_t>(l) + 1, 0);
    while (true) {
        int lev = m[static_cast<std::size_t>(l)];
        for (int i = 0; i < l; ++i) lev += 2 * m[static_cast<std::size_t>(i)];
        if (lev == k) ++count;
        std::size_t i = 0;
        while (i <= static_cast<std::size_t>(l) && ++m[i] > k) m[i] = 0, ++i;
        if (i > static_cast<std::size_t>(l)) break;
    }
    return count;
}

double ydist(const YPoint& a, const YPoint& b) {
    double d = std::abs(a.tau - b.tau) + std::abs(a.t - b.t);
    for (std::size_t i = 0; i < a.z.size(); ++i) d += std::abs(a.z[i] - b.z[i]);
    return d;
}

YPoint rnd_point(std::mt19937_64& g, int l) {
    std::uniform_real_distribution<double> u(-1, 1), p(0.2, 2);
    YPoint y;
    y.tau = {u(g), p(g)};
    for (int i = 0; i < l; ++i) y.z.push_back({u(g), u(g)});
    y.t = {u(g), u(g)};
    return y;
}

}  // namespace

TEST_SUITE("root_system") {
    TEST_CASE("generalized Cartan matrix") {
        CHECK(RootSystemCtx(1).cartan_matrix(Sharp::I) == std::vector<std::vector<int>>{{2, -1}, {-4, 2}});
        CHECK(RootSystemCtx(2).cartan_matrix(Sharp::I) ==
              std::vector<std::vector<int>>{{2, -1, 0}, {-2, 2, -1}, {0, -2, 2}});
        CHECK(RootSystemCtx(3).cartan_matrix(Sharp::I) ==
              std::vector<std::vector<int>>{{2, -1, 0, 0}, {-2, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -2, 2}});
    }

    TEST_CASE("Cartan entries from the form, both numerations") {
        for (int l = 1; l <= 5; ++l) {
            RootSystemCtx ctx(l);
            for (Sharp s : {Sharp::I, Sharp::II}) {
                const auto& a = ctx.simple_roots(s);
                const auto A = ctx.cartan_matrix(s);
                for (int i = 0; i <= l; ++i)
                    for (int j = 0; j <= l; ++j) {
                        const Rational e = 2 * inner(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]) /
                                           inner(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i)]);
                        CHECK(e == A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                    }
            }
        }
    }

    TEST_CASE("labels sum to delta") {
        for (int l = 1; l <= 5; ++l) {
            RootSystemCtx ctx(l);
            Weight s(l);
            for (int i = 0; i <= l; ++i)
                s = s + Rational(ctx.labels()[static_cast<std::size_t>(i)]) * ctx.simple_roots(Sharp::I)[static_cast<std::size_t>(i)];
            CHECK(s == Weight::delta_w(l));
        }
    }

    TEST_CASE("fundamental weights are dual to coroots") {
        for (int l = 1; l <= 4; ++l) {
            RootSystemCtx ctx(l);
            const auto& L = ctx.fund_weights(Sharp::I);
            for (int i = 0; i <= l; ++i)
                for (int j = 0; j <= l; ++j) CHECK(ctx.coroot_pairing(i, L[static_cast<std::size_t>(j)]) == (i == j ? 1 : 0));
            // Lambda_j^(II) = Lambda_{l-j}^(I) mod delta
            for (int j = 0; j <= l; ++j)
                CHECK(canonical_class(ctx.fund_weights(Sharp::II)[static_cast<std::size_t>(j)]) ==
                      canonical_class(L[static_cast<std::size_t>(l - j)]));
            for (int i = 0; i <= l; ++i) CHECK(ctx.coroot_pairing(i, ctx.rho()) == 1);
        }
    }

    TEST_CASE("special indices agree with brute force") {
        for (int l = 1; l <= 4; ++l) {
            RootSystemCtx ctx(l);
            std::vector<int> brute;
            for (int i = 0; i <= l; ++i)
                if (ctx.check_special(i, 2 * l + 1)) brute.push_back(i);
            std::vector<int> fast;
            for (const auto& s : ctx.special_indices()) fast.push_back(s.index);
            CHECK(fast == brute);
            CHECK(fast == std::vector<int>{0, l});
        }
    }

    TEST_CASE("dominant weight enumeration") {
        for (int l = 1; l <= 4; ++l) {
            RootSystemCtx ctx(l);
            for (int k = 0; k <= 6; k += 2) {
                const auto d = ctx.enumerate_dominant(k);
                CHECK(static_cast<int>(d.size()) == count_dominant(l, k));
                for (const auto& w : d) {
                    CHECK(ctx.is_dominant(w.weight));
                    CHECK(level(w.weight) == k);
                    CHECK(w.weight.delta == 0);
                }
            }
        }
        CHECK(RootSystemCtx(1).enumerate_dominant(2).size() == 2);
        CHECK(RootSystemCtx(2).enumerate_dominant(2).size() == 3);
        CHECK(RootSystemCtx(3).enumerate_dominant(0).size() == 1);
        CHECK_THROWS(RootSystemCtx(2).enumerate_dominant(3));
        CHECK_THROWS(RootSystemCtx(2).enumerate_dominant(-2));
    }

    TEST_CASE("root classification and multiplicities") {
        for (int l = 1; l <= 3; ++l) {
            RootSystemCtx ctx(l);
            const Weight d = Weight::delta_w(l);
            const auto im = ctx.classify(d);
            REQUIRE(im);
            CHECK(im->multiplicity == l);
            CHECK(im->length_class == RootLength::Imaginary);
            const auto a0 = ctx.classify(ctx.simple_roots(Sharp::I)[0]);
            REQUIRE(a0);
            CHECK(a0->length_class == RootLength::Long);
            const auto al = ctx.classify(ctx.simple_roots(Sharp::I)[static_cast<std::size_t>(l)]);
            REQUIRE(al);
            CHECK(al->length_class == RootLength::Short);
            CHECK(!ctx.classify(Rational(2) * d + Rational(2) * Weight::epsilon(l, 1)));  // 2(eps+delta) is not a root
            CHECK(ctx.classify(Rational(2) * Weight::epsilon(l, 1) + d));
        }
    }

    TEST_CASE("real roots are Weyl stable at small height") {
        for (int l = 1; l <= 3; ++l) {
            RootSystemCtx ctx(l);
            for (const auto& r : ctx.positive_roots(3)) {
                CHECK(ctx.is_positive_root(r.weight));
                for (int i = 0; i <= l; ++i) {
                    const auto img = ctx.classify(ctx.reflect(i, r.weight));
                    REQUIRE(img);
                    CHECK(img->multiplicity == r.multiplicity);
                    CHECK(img->length_class == r.length_class);
                }
            }
        }
    }

    TEST_CASE("positive roots at height one are the simple roots") {
        for (int l = 1; l <= 4; ++l) {
            RootSystemCtx ctx(l);
            int h1 = 0;
            for (const auto& r : ctx.positive_roots(1)) {
                ++h1;
                CHECK(ctx.height(r.weight) == 1);
            }
            CHECK(h1 == l + 1);
        }
    }

    TEST_CASE("point maps") {
        std::mt19937_64 g(7);
        for (int l = 1; l <= 3; ++l)
            for (int n = 0; n < 30; ++n) {
                const YPoint y = rnd_point(g, l);
                for (Sharp s : {Sharp::I, Sharp::II}) CHECK(ydist(weight_to_point(s, point_to_weight(s, y)), y) < 1e-12);
                CHECK(ydist(transition(transition(y)), y) < 1e-12);
                CHECK(transition(y).tau == y.tau);
                CHECK(ydist(weight_to_point(Sharp::I, point_to_weight(Sharp::II, y)), transition(y)) < 1e-12);
                // type II inverse map: 2 pi i (-tau Lambda_0^(II) + sum z_i eps_i^(II) + t delta)
                const cplx tpi{0, 2 * 3.14159265358979323846};
                CWeight e = complexify(Weight(l));
                auto axpy = [&](cplx c, const Weight& w) {
                    const CWeight cw = complexify(w);
                    for (std::size_t i = 0; i < e.eps.size(); ++i) e.eps[i] += c * cw.eps[i];
                    e.delta += c * cw.delta;
                    e.lambda0 += c * cw.lambda0;
                };
                axpy(-tpi * y.tau, lambda0_II(l));
                for (int i = 1; i <= l; ++i) axpy(tpi * y.z[static_cast<std::size_t>(i - 1)], epsilon_II(l, i));
                axpy(tpi * y.t, Weight::delta_w(l));
                const CWeight p = point_to_weight(Sharp::II, y);
                double dd = std::abs(p.delta - e.delta) + std::abs(p.lambda0 - e.lambda0);
                for (std::size_t i = 0; i < e.eps.size(); ++i) dd += std::abs(p.eps[i] - e.eps[i]);
                CHECK(dd < 1e-12);
                // phi relates the two coordinate systems
                CHECK(ydist(weight_to_point(Sharp::II, phi_involution(point_to_weight(Sharp::I, y))), y) < 1e-12);
                const auto pc = pr_coords(Sharp::I, y);
                for (int i = 0; i < l; ++i)
                    CHECK(std::abs(pc[static_cast<std::size_t>(i)] - tpi * y.z[static_cast<std::size_t>(i)]) < 1e-12);
            }
    }

    TEST_CASE("transition example") {
        YPoint y{{0, 1}, {{0.5, 0}}, {0, 0}};
        const YPoint t = transition(y);
        CHECK(std::abs(t.tau - cplx(0, 1)) < 1e-15);
        CHECK(std::abs(t.z[0] - cplx(-0.5, -0.5)) < 1e-15);
        CHECK(std::abs(t.t - cplx(0.25, 0.125)) < 1e-15);
    }

    TEST_CASE("domain check") {
        CWeight v = complexify(Weight::epsilon(1, 1));
        CHECK_THROWS_AS(weight_to_point(Sharp::I, v), std::domain_error);
    }
}
