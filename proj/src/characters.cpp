#include "kacmod/characters.hpp"

#include <cmath>
#include <stdexcept>

namespace kacmod {

Weight isotropic_rep(const Weight& w) {
    const Rational k = level(w);
    if (k == 0) throw std::domain_error("isotropic representative needs nonzero level");
    Weight out = w;
    Rational s = 0;
    for (const auto& e : w.eps) s += e * e;
    out.delta = -s / (2 * k);
    return out;
}

Weight dominant_conjugate(const RootSystemCtx& ctx, const Weight& w) {
    if (level(w) <= 0) throw std::domain_error("dominant conjugate needs positive level");
    Weight v = w;
    for (int iter = 0; iter < 1000000; ++iter) {
        int bad = -1;
        for (int i = 0; i <= ctx.rank(); ++i)
            if (ctx.coroot_pairing(i, v) < 0) {
                bad = i;
                break;
            }
        if (bad < 0) return v;
        v = ctx.reflect(bad, v);
    }
    throw std::runtime_error("dominant conjugate did not converge");
}

namespace {

Rational total_height(const Weight& beta) {
    Rational h = 0;
    for (const auto& x : root_height_vector(beta)) h += x;
    return h;
}

std::vector<int> cone_coords(const Weight& beta) {
    std::vector<int> n;
    for (const auto& x : root_height_vector(beta)) {
        if (!is_integer(x) || x < 0) throw std::logic_error("term outside the cone below the apex");
        n.push_back(static_cast<int>(to_int64(x)));
    }
    return n;
}

}  // namespace

QSeries theta_formal(const RootSystemCtx& ctx, const Weight& lambda, Sharp s, bool twisted, int H) {
    const int l = ctx.rank();
    const Rational k = level(lambda);
    if (k <= 0) throw std::domain_error("theta series needs positive level");
    const Weight apex = isotropic_rep(dominant_conjugate(ctx, lambda));
    QSeries out(apex, H);
    out.mark_clipped();

    auto term = [&](const std::vector<std::int64_t>& g) {
        std::vector<Rational> gr(g.begin(), g.end());
        return isotropic_rep(lambda + k * finite_weight(gr, s));
    };
    auto height_of = [&](const std::vector<std::int64_t>& g) { return total_height(apex - term(g)); };

    // Height is A|g|^2 + <b, g> + c0 with A = (2l+1)k/2 in either frame.
    const Rational A = Rational(2 * l + 1) * k / 2;
    std::vector<std::int64_t> g(static_cast<std::size_t>(l), 0);
    const Rational c0 = height_of(g);
    std::vector<double> centre(static_cast<std::size_t>(l));
    Rational bnorm = 0;
    for (int i = 0; i < l; ++i) {
        g.assign(static_cast<std::size_t>(l), 0);
        g[static_cast<std::size_t>(i)] = 1;
        const Rational hp = height_of(g);
        g[static_cast<std::size_t>(i)] = -1;
        const Rational hm = height_of(g);
        if (hp + hm - 2 * c0 != 2 * A) throw std::logic_error("theta height is not the expected quadratic");
        const Rational b = (hp - hm) / 2;
        bnorm += b * b;
        centre[static_cast<std::size_t>(i)] = -to_double(b / (2 * A));
    }
    const double r2 = to_double((Rational(H) - c0) / A + bnorm / (4 * A * A));
    if (r2 < 0) return out;
    const double r = std::sqrt(r2) + 1.0;

    auto rec = [&](auto&& self, int pos, double partial) -> void {
        if (pos == l) {
            const Weight w = term(g);
            const auto n = cone_coords(apex - w);
            int h = 0;
            for (int x : n) h += x;
            if (h > H) return;
            std::int64_t c = 1;
            if (twisted) {
                std::int64_t sum = 0;
                for (auto x : g) sum += x;
                if (sum % 2 != 0) c = -1;
            }
            out.add_term(make_key(n), c);
            return;
        }
        const double cpos = centre[static_cast<std::size_t>(pos)];
        const auto lo = static_cast<std::int64_t>(std::floor(cpos - r));
        const auto hi = static_cast<std::int64_t>(std::ceil(cpos + r));
        for (std::int64_t x = lo; x <= hi; ++x) {
            const double d = static_cast<double>(x) - cpos;
            if (partial + d * d > r * r) continue;
            g[static_cast<std::size_t>(pos)] = x;
            self(self, pos + 1, partial + d * d);
        }
    };
    g.assign(static_cast<std::size_t>(l), 0);
    rec(rec, 0, 0.0);
    out.finish();
    return out;
}

QSeries anti_invariant(const RootSystemCtx& ctx, const Weight& lambda, Sharp s, bool twisted, int H,
                       PsiRewriting rewriting) {
    const int l = ctx.rank();
    if (!ctx.is_dominant(lambda)) throw std::invalid_argument("anti_invariant needs a dominant weight");
    const Weight v = canonical_class(lambda) + ctx.rho();
    QSeries out(isotropic_rep(v), H);
    out.mark_clipped();
    auto accumulate = [&](const Weight& x, std::int64_t c) {
        const QSeries th = theta_formal(ctx, x, s, twisted, H);
        if (th.apex() != out.apex()) throw std::logic_error("theta apex differs from the orbit apex");
        for (const auto& [k, a] : th.terms()) out.add_term(k, c * a);
    };
    if (rewriting == PsiRewriting::KerPsi) {
        if (s != Sharp::I || !twisted) throw std::invalid_argument("the kernel rewriting applies to twisted type I only");
        const auto sl = FiniteWeylElement::sign_flip(l, l);
        for (const auto& u : enumerate_ker_psi_finite(l)) {
            accumulate(act(u, v), epsilon(u));
            accumulate(act(u * sl, v), epsilon(u));
        }
    } else {
        for (const auto& u : enumerate_finite(l)) {
            std::int64_t c = epsilon(u);
            if (twisted) c *= psi(to_type_I(u, s));
            accumulate(act(u, v, s), c);
        }
    }
    out.finish();
    return out;
}

QSeries denominator_product(const RootSystemCtx& ctx, bool twisted, int H, int skip_factor) {
    const int l = ctx.rank();
    struct Factor {
        Weight beta;
        std::int64_t c;
        int power;
    };
    std::vector<Factor> factors;
    const std::int64_t short_sign = twisted ? 1 : -1;
    auto fits = [&](const Weight& b) { return total_height(b) <= H; };
    auto push = [&](const Weight& b, std::int64_t c, int p) {
        if (fits(b)) factors.push_back({b, c, p});
    };
    const Weight d = Weight::delta_w(l);
    for (int n = 1; n * (2 * l + 1) <= H; ++n) push(Rational(n) * d, -1, l);
    std::vector<Weight> shorts, middles;
    for (int i = 1; i <= l; ++i) {
        shorts.push_back(Weight::epsilon(l, i));
        for (int j = i + 1; j <= l; ++j) {
            middles.push_back(Weight::epsilon(l, i) - Weight::epsilon(l, j));
            middles.push_back(Weight::epsilon(l, i) + Weight::epsilon(l, j));
        }
    }
    for (const auto& a : shorts) push(a, short_sign, 1);
    for (const auto& a : middles) push(a, -1, 1);
    const int nmax = H / (2 * l + 1) + 2;
    for (int n = 1; n <= nmax; ++n) {
        for (const auto& a0 : shorts)
            for (int sg : {1, -1}) {
                const Weight a = Rational(sg) * a0;
                push(a + Rational(n) * d, short_sign, 1);
                push(Rational(2) * a + Rational(2 * n - 1) * d, -1, 1);
            }
        for (const auto& a0 : middles)
            for (int sg : {1, -1}) push(Rational(sg) * a0 + Rational(n) * d, -1, 1);
    }
    Weight apex = ctx.rho();
    apex.delta = -norm_sq(ctx.rho()) / (2 * (2 * l + 1));
    QSeries out = QSeries::monomial(apex, H);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (static_cast<int>(i) == skip_factor) continue;
        out = mul_binomial(out, factors[i].beta, factors[i].c, factors[i].power);
    }
    out.mark_clipped();
    return out;
}

QSeries verma_character(const RootSystemCtx& ctx, const Weight& Lambda, int H) {
    QSeries out = QSeries::monomial(Lambda, H);
    for (const auto& r : ctx.positive_roots(H)) out = div_binomial(out, r.weight, r.multiplicity);
    return out;
}

Rational conformal_anomaly(const RootSystemCtx& ctx, const Weight& Lambda) {
    const Weight v = canonical_class(Lambda) + ctx.rho();
    const Weight& r = ctx.rho();
    const Weight d = Weight::delta_w(ctx.rank());
    return norm_sq(v) / (2 * inner(v, d)) - norm_sq(r) / (2 * inner(r, d));
}

int character_height(const RootSystemCtx& ctx, const Weight& Lambda, int depth) {
    const int l = ctx.rank();
    const Weight v = canonical_class(Lambda) + ctx.rho();
    const Rational K = level(v);
    Rational cv = 0, c2 = 0, v2 = 0;
    for (int j = 1; j <= l; ++j) {
        const Rational c = l - j + 1;
        const Rational& e = v.eps[static_cast<std::size_t>(j - 1)];
        cv += c * e;
        c2 += c * c;
        v2 += e * e;
    }
    const double bound = (2 * l + 1) * depth + to_double(cv) +
                         std::sqrt(to_double(c2)) * std::sqrt(to_double(v2 + 2 * K * depth));
    const int H = static_cast<int>(std::ceil(bound)) + 1;
    if (H > kMaxHeight) throw std::out_of_range("character depth exceeds the height budget");
    return H;
}

QSeries character(const RootSystemCtx& ctx, const CharacterRequest& req) {
    const Rational k = level(req.lambda);
    if (!is_integer(k) || to_int64(k) % 2 != 0) throw std::invalid_argument("characters need even level");
    if (!ctx.is_dominant(req.lambda)) throw std::invalid_argument("characters need a dominant weight");
    const Weight lam = canonical_class(req.lambda);
    const int H = req.height >= 0 ? req.height : character_height(ctx, lam, req.depth);
    const QSeries num = anti_invariant(ctx, lam, req.sharp, req.twisted, H);
    const QSeries den = anti_invariant(ctx, Weight(ctx.rank()), req.sharp, req.twisted, H);
    return restrict_depth(divide(num, den), req.depth);
}

DenominatorReport check_denominator_identity(int l, int depth, bool twisted, int skip_factor) {
    RootSystemCtx ctx(l);
    DenominatorReport r;
    r.rank = l;
    r.depth = depth;
    r.twisted = twisted;
    r.height = default_height(l, depth);
    const QSeries lhs = anti_invariant(ctx, Weight(l), Sharp::I, twisted, r.height);
    const QSeries rhs = denominator_product(ctx, twisted, r.height, skip_factor);
    r.terms = lhs.size();
    r.diff = compare(lhs, rhs);
    r.pass = r.diff.equal;
    return r;
}

nlohmann::json to_json(const DenominatorReport& r) {
    nlohmann::json j = {{"check", "denominator"}, {"rank", r.rank},     {"depth", r.depth},
                        {"height", r.height},     {"twisted", r.twisted}, {"terms", r.terms},
                        {"pass", r.pass}};
    if (!r.diff.equal) {
        j["reason"] = r.diff.reason;
        if (r.diff.first_q_degree) j["first_mismatch_q_degree"] = to_string(*r.diff.first_q_degree);
        if (r.diff.first_weight) j["first_mismatch_weight"] = to_json(*r.diff.first_weight);
        j["lhs_coeff"] = r.diff.lhs;
        j["rhs_coeff"] = r.diff.rhs;
    }
    return j;
}

}  // namespace kacmod
