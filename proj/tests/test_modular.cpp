#include "kacmod/modular.hpp"

#include <doctest.h>

#include <array>
#include <numbers>

using namespace kacmod;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0, 1};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const std::vector<LawCase> kCases{LawCase::PlainI, LawCase::TwistedI, LawCase::PlainII, LawCase::TwistedII};

YPoint point(cplx tau, std::vector<cplx> z, cplx t) { return {tau, std::move(z), t}; }

}  // namespace

TEST_SUITE("modular") {
    TEST_CASE("SL2 action") {
        const YPoint y = default_point(2);
        const YPoint t = sl2_act(kT, y);
        CHECK(std::abs(t.tau - (y.tau + 1.0)) < 1e-15);
        CHECK(t.z == y.z);
        CHECK(t.t == y.t);
        const YPoint id = sl2_act(SL2{{{1, 0}, {0, 1}}}, y);
        CHECK(std::abs(id.tau - y.tau) < 1e-15);
        const YPoint f = sl2_act(kS, point(kI, {0.0}, 0.0));
        CHECK(std::abs(f.tau - kI) < 1e-15);
        CHECK(std::abs(f.z[0]) < 1e-15);
        CHECK(std::abs(f.t) < 1e-15);
        // S^2 = -1 acts as (tau, -z, t)
        const YPoint s2 = sl2_act(kS, sl2_act(kS, y));
        CHECK(std::abs(s2.tau - y.tau) < 1e-14);
        CHECK(std::abs(s2.z[1] + y.z[1]) < 1e-14);
        CHECK(std::abs(s2.t - y.t) < 1e-14);
        CHECK_THROWS(sl2_act(SL2{{{2, 0}, {0, 1}}}, y));
    }

    TEST_CASE("theta against a scalar sum") {
        const YPoint y = point({0.1, 0.9}, {0.0}, 0.0);
        for (int K : {2, 4, 6})
            for (double a : {0.0, 1.0, 1.5})
                for (bool tw : {false, true}) {
                    cplx s{0.0};
                    for (int m = -60; m <= 60; ++m) {
                        const double x = m + a / K;
                        s += (tw && (m % 2 != 0) ? -1.0 : 1.0) * std::exp(kI * kPi * double(K) * y.tau * x * x);
                    }
                    CHECK(rel(eval_theta_coords({a}, K, tw, y, 1e-13), s) < 1e-12);
                }
    }

    TEST_CASE("theta truncation is self-consistent") {
        const YPoint y = default_point(2);
        for (double tol : {1e-6, 1e-10}) {
            const cplx a = eval_theta_coords({0.5, 1.25}, 7, true, y, tol);
            const cplx b = eval_theta_coords({0.5, 1.25}, 7, true, y, tol * 1e-6);
            CHECK(std::abs(a - b) < tol * std::abs(b) + tol);
        }
    }

    TEST_CASE("formal and analytic theta agree") {
        for (int l = 1; l <= 2; ++l) {
            RootSystemCtx ctx(l);
            YPoint y = default_point(l);
            y.tau = {0.2, 1.1};
            for (const auto& d : ctx.enumerate_dominant(2))
                for (bool tw : {false, true})
                    for (Sharp s : {Sharp::I, Sharp::II}) {
                        const Weight lam = d.weight + ctx.rho();
                        const cplx f = evaluate(restrict_depth(theta_formal(ctx, lam, s, tw, 255), 30), y, s);
                        const cplx a = eval_theta(isotropic_rep(dominant_conjugate(ctx, lam)), s, tw, y, 1e-12);
                        CHECK(rel(f, a) < 1e-10);
                    }
        }
    }

    TEST_CASE("analytic anti-invariants") {
        for (int l = 1; l <= 2; ++l) {
            RootSystemCtx ctx(l);
            YPoint y = default_point(l);
            y.tau = {0.37, 1.1};
            // the product side evaluated numerically
            const cplx prod = evaluate(denominator_product(ctx, false, default_height(l, 20)), y, Sharp::I);
            CHECK(rel(eval_anti_invariant(ctx, Weight(l), Sharp::I, false, y, 1e-13), prod) < 1e-9);
            YPoint z0 = y;
            for (auto& z : z0.z) z = 0;
            CHECK(std::abs(eval_anti_invariant(ctx, Weight(l), Sharp::I, false, z0, 1e-13)) < 1e-10);
            CHECK_THROWS_AS(eval_character(ctx, Weight(l), Sharp::I, false, z0, 1e-13), DegeneratePoint);
            CHECK(rel(eval_character(ctx, Weight(l), Sharp::II, true, y, 1e-12), 1.0) < 1e-12);
            for (const auto& d : ctx.enumerate_dominant(2))
                for (bool tw : {false, true}) {
                    const cplx f = evaluate(character(ctx, {d.weight, Sharp::I, tw, 12, -1}), y, Sharp::I);
                    CHECK(rel(eval_character(ctx, d.weight, Sharp::I, tw, y, 1e-12), f) < 1e-6);
                }
        }
    }

    TEST_CASE("transition relates the two frames") {
        for (int l = 1; l <= 3; ++l) {
            RootSystemCtx ctx(l);
            const YPoint y = default_point(l);
            for (const auto& d : ctx.enumerate_dominant(2))
                for (bool tw : {false, true})
                    CHECK(rel(eval_anti_invariant(ctx, d.weight, Sharp::I, tw, transition(y), 1e-13),
                              eval_anti_invariant(ctx, d.weight, Sharp::II, tw, y, 1e-13)) < 1e-8);
        }
    }

    TEST_CASE("S-matrix entries") {
        RootSystemCtx ctx(1);
        const auto m = smatrix(ctx, SKind::aII, 2);
        // row and column with pi(lambda) + rho_f = eps
        std::size_t r = 0;
        for (; r < m.index.size(); ++r)
            if (finite_coords(m.index[r].weight, Sharp::II)[0] == 0) break;
        REQUIRE(r < m.index.size());
        CHECK(std::abs(m.entries[r][r] - cplx(0, -2 * std::sin(2 * kPi / 5))) < 1e-14);
    }

    TEST_CASE("S-matrices are unitary up to scale") {
        for (int l = 1; l <= 2; ++l) {
            RootSystemCtx ctx(l);
            for (auto kind : {SKind::aI, SKind::aI_II, SKind::aII_I, SKind::aII})
                for (int k : {2, 4}) {
                    const auto m = smatrix(ctx, kind, k);
                    const double K = k + 2 * l + 1;
                    const std::size_t n = m.index.size();
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) {
                            cplx s{0.0};
                            for (std::size_t q = 0; q < n; ++q) s += m.entries[i][q] * std::conj(m.entries[j][q]);
                            CHECK(std::abs(s / std::pow(K, l) - (i == j ? 1.0 : 0.0)) < 1e-12);
                        }
                }
        }
    }

    TEST_CASE("S-matrix symmetries") {
        for (int l = 1; l <= 2; ++l) {
            RootSystemCtx ctx(l);
            for (int k : {2, 4}) {
                const auto dom = ctx.enumerate_dominant(k);
                for (const auto& a : dom)
                    for (const auto& b : dom) {
                        const cplx x = s_entry(ctx, SKind::aI_II, k, phi_involution(a.weight), b.weight);
                        const cplx y = s_entry(ctx, SKind::aII_I, k, phi_involution(b.weight), a.weight);
                        CHECK(std::abs(x - y) < 1e-12);
                        CHECK(std::abs(s_entry_aI_ker_psi(ctx, k, a.weight, b.weight) -
                                       s_entry(ctx, SKind::aI, k, a.weight, b.weight)) < 1e-12);
                    }
            }
        }
        CHECK(parse_skind("aI_II") == SKind::aI_II);
        CHECK_THROWS(parse_skind("bogus"));
    }

    TEST_CASE("S-law constants at lambda = 0") {
        RootSystemCtx ctx(1);
        const YPoint y = point({0, 1.1}, {0.23}, 0.05);
        for (auto lc : kCases) CHECK(verify_S_corollary(ctx, lc, y, 1e-8).pass);
        const auto r = verify_S_corollary(ctx, LawCase::PlainI, y, 1e-8);
        CHECK(std::abs(r.lhs / r.rhs - 1.0) < 1e-6);
    }

    TEST_CASE("S-laws") {
        for (int l = 1; l <= 2; ++l) {
            RootSystemCtx ctx(l);
            const YPoint y = default_point(l);
            for (auto lc : kCases)
                for (const auto& d : ctx.enumerate_dominant(2)) {
                    const auto r = verify_S(ctx, lc, d.labels, 2, y, 1e-6);
                    CHECK_MESSAGE(r.pass, to_string(lc), " rel ", r.rel_err);
                    CHECK(r.metadata["series_rel_err"].get<double>() < 1e-6);
                }
        }
        // a wrong matrix must not pass: swap the type-II matrix into the type-I law
        RootSystemCtx ctx(1);
        const YPoint y = default_point(1);
        const auto dom = ctx.enumerate_dominant(2);
        const cplx lhs = eval_anti_invariant(ctx, dom[0].weight, Sharp::I, true, sl2_act(kS, y), 1e-12);
        cplx rhs{0.0};
        for (const auto& mu : dom)
            rhs += s_entry(ctx, SKind::aII, 2, dom[0].weight, mu.weight) *
                   eval_anti_invariant(ctx, mu.weight, Sharp::I, true, y, 1e-12);
        rhs *= std::pow(5.0, -0.5) * std::sqrt(y.tau / kI);
        CHECK(rel(lhs, rhs) > 1e-3);
    }

    TEST_CASE("T-laws and phases") {
        RootSystemCtx ctx(1);
        const YPoint y = default_point(1);
        const auto r = verify_T(ctx, LawCase::TwistedI, {0, 0}, 0, y, 1e-10);
        const auto ph = r.metadata["phase"];
        // |pi(rho)|^2 = 1/4 at rank one: phase exp(pi i / 12)
        CHECK(std::abs(cplx(ph[0].get<double>(), ph[1].get<double>()) - std::exp(kI * kPi / 12.0)) < 1e-15);
        for (int l = 1; l <= 2; ++l) {
            RootSystemCtx c(l);
            const YPoint p = default_point(l);
            for (auto lc : kCases)
                for (const auto& d : c.enumerate_dominant(2))
                    for (int pw : {1, 2}) CHECK(verify_T(c, lc, d.labels, 2, p, 1e-10, {}, pw).pass);
        }
        // without the swap the type-II law fails
        const cplx a = eval_anti_invariant(ctx, Weight(1), Sharp::II, false, sl2_act(kT, y), 1e-12);
        const cplx b = eval_anti_invariant(ctx, Weight(1), Sharp::II, false, y, 1e-12);
        CHECK(std::abs(std::abs(a) - std::abs(b)) > 1e-3 * std::abs(b));
    }

    TEST_CASE("character laws") {
        for (int l = 1; l <= 2; ++l) {
            RootSystemCtx ctx(l);
            const YPoint y = default_point(l);
            for (auto lc : kCases)
                for (const auto& d : ctx.enumerate_dominant(2)) {
                    CHECK(verify_prop_S(ctx, lc, d.labels, 2, y, 1e-6).pass);
                    CHECK(verify_prop_T(ctx, lc, d.labels, 2, y, 1e-6).pass);
                }
        }
    }

    TEST_CASE("closure") {
        RootSystemCtx ctx(1);
        const auto r = verify_closure_sampled(ctx, 2, false, 12, 5, 1e-8);
        CHECK(r.pass);
        CHECK(r.arrows.size() == 6);
        CHECK(r.gram_rank == 6);
        const auto t = verify_closure_sampled(ctx, 2, true, 8, 6, 1e-8);
        CHECK(t.pass);
        const auto z = verify_closure_sampled(ctx, 0, false, 6, 7, 1e-8);
        CHECK(z.degenerate);
        CHECK(z.pass);
        RootSystemCtx c2(2);
        CHECK(verify_closure_sampled(c2, 2, false, 18, 3, 1e-8).pass);
    }

    TEST_CASE("closure fails for a wrong target") {
        // S-images of type-I characters fitted inside the type-I span (the true target is psi-II)
        RootSystemCtx ctx(1);
        const auto dom = ctx.enumerate_dominant(2);
        const auto pts = sample_points(1, 12, 9);
        for (const auto& src : dom) {
            // normal equations for two unknowns
            cplx g00{0.0}, g01{0.0}, g11{0.0}, b0{0.0}, b1{0.0};
            std::vector<std::array<cplx, 3>> rows;
            for (const auto& y : pts) {
                const cplx u = eval_character(ctx, dom[0].weight, Sharp::I, false, y, 1e-12);
                const cplx v = eval_character(ctx, dom[1].weight, Sharp::I, false, y, 1e-12);
                const cplx b = eval_character(ctx, src.weight, Sharp::I, false, sl2_act(kS, y), 1e-12);
                rows.push_back({u, v, b});
                g00 += std::conj(u) * u, g01 += std::conj(u) * v, g11 += std::conj(v) * v;
                b0 += std::conj(u) * b, b1 += std::conj(v) * b;
            }
            const cplx det = g00 * g11 - g01 * std::conj(g01);
            const cplx x0 = (g11 * b0 - g01 * b1) / det, x1 = (g00 * b1 - std::conj(g01) * b0) / det;
            double res = 0, nb = 0;
            for (const auto& r : rows) res += std::norm(x0 * r[0] + x1 * r[1] - r[2]), nb += std::norm(r[2]);
            CHECK(std::sqrt(res / nb) > 1e-4);
        }
    }

    TEST_CASE("Poisson resummation and sines") {
        CHECK(poisson_check(1, {0.0}, kI, 1e-12).pass);
        const auto r = poisson_check(2, {0.3, cplx(0.1, 0.2)}, cplx(0.4, 1.3), 1e-8);
        CHECK(r.pass);
        CHECK(poisson_check(3, {0.1, -0.2, cplx(0.3, -0.1)}, cplx(-0.3, 0.7), 1e-8).pass);
        CHECK(std::abs(sin_product(4).product - 0.5) < 1e-15);
        for (int N = 2; N <= 50; ++N) CHECK(sin_product(N).rel_err < 1e-10);
        CHECK_THROWS(sin_product(1));
        CHECK_THROWS(poisson_check(1, {0.0}, cplx(0, -1), 1e-8));
    }
}
