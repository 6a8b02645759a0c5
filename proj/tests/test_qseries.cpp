#include "helpers.hpp"
#include "kacmod/characters.hpp"
#include "kacmod/qseries.hpp"

#include <doctest.h>

#include <map>

using namespace kacmod;

namespace {

QSeries random_series(std::mt19937_64& g, int l, const Weight& apex, int H, int terms) {
    std::uniform_int_distribution<int> c(-3, 3), n(0, 2);
    QSeries s(apex, H);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> v(static_cast<std::size_t>(l) + 1);
        for (auto& x : v) x = n(g);
        if (make_key(v) != 0) s.add_term(make_key(v), c(g));
    }
    s.add_term(0, 1);
    s.finish();
    return s;
}

bool same(const QSeries& a, const QSeries& b) { return compare(a, b).equal; }

std::vector<int> ints(const std::vector<Rational>& r) {
    std::vector<int> o;
    for (const auto& x : r) o.push_back(static_cast<int>(to_int64(x)));
    return o;
}

// Kostant partition function with multiplicities, by knapsack over the positive roots.
std::map<std::vector<int>, std::int64_t> partitions(const RootSystemCtx& ctx, int H) {
    const int l = ctx.rank();
    std::map<std::vector<int>, std::int64_t> P;
    P[std::vector<int>(static_cast<std::size_t>(l) + 1, 0)] = 1;
    for (const auto& r : ctx.positive_roots(H)) {
        const auto b = ints(root_height_vector(r.weight));
        int hb = 0;
        for (int x : b) hb += x;
        for (int copy = 0; copy < r.multiplicity; ++copy) {
            // unbounded knapsack: process states in increasing height
            std::vector<std::pair<std::vector<int>, std::int64_t>> states(P.begin(), P.end());
            std::map<std::vector<int>, std::int64_t> next = P;
            std::sort(states.begin(), states.end(), [](const auto& x, const auto& y) {
                int hx = 0, hy = 0;
                for (int v : x.first) hx += v;
                for (int v : y.first) hy += v;
                return hx < hy || (hx == hy && x.first < y.first);
            });
            for (const auto& [v0, c0] : states) {
                (void)c0;
                int h = 0;
                for (int x : v0) h += x;
                std::vector<int> v = v0;
                for (int m = 1; h + m * hb <= H; ++m) {
                    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b[i];
                    next[v] += P[v0];
                }
            }
            P = next;
        }
    }
    return P;
}

}  // namespace

TEST_SUITE("qseries") {
    TEST_CASE("key packing") {
        std::mt19937_64 g(21);
        std::uniform_int_distribution<int> d(0, 20);
        for (int n = 0; n < 200; ++n) {
            std::vector<int> a(4), b(4);
            for (auto& x : a) x = d(g);
            for (auto& x : b) x = d(g);
            const HKey ka = make_key(a), kb = make_key(b);
            CHECK(unpack_key(ka, 3) == a);
            std::vector<int> s(4);
            for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
            CHECK(ka + kb == make_key(s));
            bool le = true;
            for (int i = 0; i < 4; ++i) le = le && a[static_cast<std::size_t>(i)] <= b[static_cast<std::size_t>(i)];
            if (le) CHECK(ka <= kb);
        }
        CHECK(default_height(1, 10) == 32);
        CHECK_THROWS(default_height(3, 40));
    }

    TEST_CASE("ring axioms") {
        std::mt19937_64 g(22);
        for (int l = 1; l <= 3; ++l)
            for (int n = 0; n < 10; ++n) {
                const Weight A = project_finite(testutil::rnd_weight(g, l), Sharp::I);
                const Weight B = project_finite(testutil::rnd_weight(g, l), Sharp::I);
                const int H = 12;
                const QSeries a = random_series(g, l, A, H, 6), b = random_series(g, l, B, H, 6),
                              c = random_series(g, l, B, H, 6), e = random_series(g, l, A, H, 4);
                CHECK(same(mul(a, b), mul(b, a)));
                CHECK(same(mul(mul(a, b), e), mul(a, mul(b, e))));
                CHECK(same(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
                CHECK(same(add(b, c), add(c, b)));
                CHECK(sub(b, b).size() == 0);
                CHECK(same(add(b, c.negated()), sub(b, c)));
                const QSeries one = QSeries::monomial(Weight(l), H);
                CHECK(same(mul(a, one), a));
            }
    }

    TEST_CASE("binomials and division invert each other") {
        std::mt19937_64 g(23);
        for (int l = 1; l <= 3; ++l) {
            RootSystemCtx ctx(l);
            const int H = 14;
            for (const auto& r : ctx.positive_roots(3)) {
                const QSeries a = random_series(g, l, Weight(l), H, 5);
                CHECK(same(div_binomial(mul_binomial(a, r.weight, -1), r.weight), a));
                CHECK(same(mul_binomial(div_binomial(a, r.weight, 2), r.weight, -1, 2), a));
                const QSeries u = random_series(g, l, Weight(l), H, 5);
                CHECK(same(divide(mul(a, u), u), a));
                CHECK(same(mul(invert_unit(u), u), QSeries::monomial(Weight(l), H)));
            }
        }
    }

    TEST_CASE("Verma characters count partitions") {
        for (int l = 1; l <= 2; ++l) {
            RootSystemCtx ctx(l);
            const int H = l == 1 ? 9 : 7;
            const QSeries v = verma_character(ctx, Weight(l), H);
            const auto P = partitions(ctx, H);
            for (const auto& [n, c] : P) CHECK(v.coeff(make_key(n)) == c);
            std::size_t nz = 0;
            for (const auto& [n, c] : P) nz += c != 0;
            CHECK(v.size() == nz);
        }
        // rank one: e^{Lambda - 2 alpha_1} has coefficient 1
        RootSystemCtx c1(1);
        const QSeries v = verma_character(c1, c1.fund_weights(Sharp::I)[0], 4);
        CHECK(v.coeff(make_key({0, 2})) == 1);
        CHECK(v.coeff(make_key({1, 1})) == 2);
    }

    TEST_CASE("delta expansion and depth restriction") {
        RootSystemCtx ctx(1);
        QSeries s(Weight(1), 20);
        s.add_term(make_key({0, 0}), 1);
        s.add_term(make_key({1, 2}), 3);   // exactly one delta
        s.add_term(make_key({2, 3}), -2);  // delta + alpha_0, q-degree 2
        s.finish();
        const auto sl = delta_expansion(s);
        REQUIRE(sl.size() == 3);
        CHECK(sl[0].q_degree == 0);
        CHECK(sl[1].q_degree == 1);
        CHECK(sl[2].q_degree == 2);
        CHECK(restrict_depth(s, 1).size() == 2);
        CHECK(s.term_weight(make_key({1, 2})) == -Weight::delta_w(1));
        CHECK(s.coeff_of(-Weight::delta_w(1)) == 3);
    }

    TEST_CASE("comparison reports the first difference") {
        QSeries a(Weight(1), 10), b(Weight(1), 10);
        a.add_term(make_key({0, 0}), 1);
        a.add_term(make_key({1, 2}), 2);
        b.add_term(make_key({0, 0}), 1);
        b.add_term(make_key({1, 2}), 5);
        a.finish();
        b.finish();
        const auto d = compare(a, b);
        CHECK(!d.equal);
        CHECK(d.lhs == 2);
        CHECK(d.rhs == 5);
        REQUIRE(d.first_q_degree);
        CHECK(*d.first_q_degree == 1);
    }

    TEST_CASE("overflow is detected") {
        QSeries a(Weight(1), 10);
        a.add_term(0, std::int64_t(1) << 62);
        a.finish();
        CHECK_THROWS(mul(a, a));
    }
}
