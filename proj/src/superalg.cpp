#include "kacmod/superalg.hpp"

#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace kacmod {

OspGen parse_osp_gen(const std::string& s) {
    if (s == "E") return OspGen::E;
    if (s == "H") return OspGen::H;
    if (s == "F") return OspGen::F;
    if (s == "e") return OspGen::e;
    if (s == "f") return OspGen::f;
    throw std::invalid_argument("unknown osp(1|2) generator " + s);
}

std::string to_string(OspGen g) {
    switch (g) {
        case OspGen::E: return "E";
        case OspGen::H: return "H";
        case OspGen::F: return "F";
        case OspGen::e: return "e";
        case OspGen::f: return "f";
    }
    return "?";
}

namespace {

using Sparse = std::map<int, Rational>;

Sparse to_sparse(const OspVector& v) {
    Sparse s;
    for (const auto& [i, c] : v) s[i] += c;
    return s;
}

OspVector from_sparse(const Sparse& s) {
    OspVector v;
    for (const auto& [i, c] : s)
        if (c != 0) v.push_back({i, c});
    return v;
}

// e f^i v = a_i f^{i-1} v with a_i = (lambda - 2i + 2) - a_{i-1}, from ef + fe = H.
Rational e_coeff(int i, const Rational& lam) {
    if (i % 2 == 0) return Rational(-1);
    return (lam - i + 1) / i;
}

}  // namespace

OspVector osp_action(OspGen g, int i, const Rational& lam) {
    if (i < 0) throw std::invalid_argument("negative basis index");
    switch (g) {
        case OspGen::H: return {{i, lam - 2 * i}};
        case OspGen::f: return {{i + 1, Rational(i + 1)}};
        case OspGen::e:
            if (i == 0) return {};
            {
                Rational c = e_coeff(i, lam);
                if (c == 0) return {};
                return {{i - 1, c}};
            }
        case OspGen::E: return osp_apply(OspGen::e, osp_action(OspGen::e, i, lam), lam);
        case OspGen::F: {
            OspVector v = osp_apply(OspGen::f, osp_action(OspGen::f, i, lam), lam);
            for (auto& t : v) t.second = -t.second;
            return v;
        }
    }
    return {};
}

OspVector osp_apply(OspGen g, const OspVector& v, const Rational& lam) {
    Sparse s;
    for (const auto& [i, c] : v)
        for (const auto& [j, d] : osp_action(g, i, lam)) s[j] += c * d;
    return from_sparse(s);
}

std::vector<std::vector<Rational>> osp_matrix(OspGen g, int n, const Rational& lam) {
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n + 1), std::vector<Rational>(static_cast<std::size_t>(n + 1)));
    for (int i = 0; i <= n; ++i)
        for (const auto& [j, c] : osp_action(g, i, lam))
            if (j <= n) m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = c;
    return m;
}

BracketReport osp_bracket_check(const Rational& lam, int imax) {
    BracketReport rep;
    auto ap = [&](OspGen g, const Sparse& v) { return to_sparse(osp_apply(g, from_sparse(v), lam)); };
    auto lin = [](const Sparse& a, const Rational& ca, const Sparse& b, const Rational& cb) {
        Sparse s;
        for (const auto& [i, c] : a) s[i] += ca * c;
        for (const auto& [i, c] : b) s[i] += cb * c;
        std::erase_if(s, [](const auto& kv) { return kv.second == 0; });
        return s;
    };
    struct Rel {
        const char* name;
        OspGen x, y;
        int sign;  // [x,y] = xy - sign * yx
        Rational c;
        OspGen rhs;
    };
    const std::vector<Rel> rels = {
        {"[H,E]=4E", OspGen::H, OspGen::E, 1, 4, OspGen::E},   {"[H,F]=-4F", OspGen::H, OspGen::F, 1, -4, OspGen::F},
        {"[E,F]=2H", OspGen::E, OspGen::F, 1, 2, OspGen::H},   {"[H,e]=2e", OspGen::H, OspGen::e, 1, 2, OspGen::e},
        {"[H,f]=-2f", OspGen::H, OspGen::f, 1, -2, OspGen::f}, {"[e,f]=H", OspGen::e, OspGen::f, -1, 1, OspGen::H},
        {"[e,e]=2E", OspGen::e, OspGen::e, -1, 2, OspGen::E},  {"[f,f]=-2F", OspGen::f, OspGen::f, -1, -2, OspGen::F},
    };
    for (int i = 0; i <= imax; ++i) {
        const Sparse w{{i, Rational(1)}};
        for (const auto& r : rels) {
            const Sparse xy = ap(r.x, ap(r.y, w));
            const Sparse yx = ap(r.y, ap(r.x, w));
            const Sparse lhs = lin(xy, 1, yx, -r.sign);
            const Sparse rhs = lin(ap(r.rhs, w), r.c, {}, 0);
            if (lhs != rhs) {
                rep.pass = false;
                rep.failures.push_back(std::string(r.name) + " at w_" + std::to_string(i));
            }
        }
    }
    return rep;
}

std::optional<int> osp_singular_index(const Rational& lam, int imax) {
    for (int i = 1; i <= imax; ++i)
        if (osp_action(OspGen::e, i, lam).empty()) return i;
    return std::nullopt;
}

bool osp_verma_reducible(const Rational& lam, int imax) { return osp_singular_index(lam, imax).has_value(); }

int osp_irreducible_dim(int N) {
    if (N < 0) throw std::invalid_argument("N must be nonnegative");
    const Rational lam = 2 * N;
    const int imax = 4 * N + 8;
    auto s = osp_singular_index(lam, imax);
    if (!s) throw std::logic_error("no singular vector found");
    // span{w_i : i >= s} is stable under e, f and H, so the quotient has basis w_0..w_{s-1}
    for (int i = *s; i <= imax; ++i)
        for (auto g : {OspGen::e, OspGen::f, OspGen::H})
            for (const auto& [j, c] : osp_action(g, i, lam))
                if (j < *s && c != 0) throw std::logic_error("submodule is not stable");
    return *s;
}

bool integrable(const RootSystemCtx& ctx, const Weight& Lambda) {
    const int l = ctx.rank();
    for (int i = 0; i <= l; ++i) {
        const Rational c = ctx.coroot_pairing(i, Lambda);
        if (!is_integer(c) || c < 0) return false;
        if (i == l && to_int64(c) % 2 != 0) return false;
    }
    return true;
}

Parity super_parity(const Weight& root) {
    const auto n = root_height_vector(root);
    const Rational& nl = n.back();
    if (!is_integer(nl)) throw std::invalid_argument("not in the root lattice");
    return to_int64(nl) % 2 != 0 ? Parity::Odd : Parity::Even;
}

std::vector<SuperRoot> super_positive_roots(const RootSystemCtx& ctx, int H) {
    std::vector<SuperRoot> out;
    for (const auto& r : ctx.positive_roots(H)) {
        const Parity p = super_parity(r.weight);
        out.push_back({r.weight, p, r.multiplicity});
        if (p == Parity::Odd) {
            const Weight twice = Rational(2) * r.weight;
            if (ctx.height(twice) <= H) out.push_back({twice, Parity::Even, 1});
        }
    }
    return out;
}

QSeries super_denominator(const RootSystemCtx& ctx, int H) {
    QSeries out = QSeries::monomial(ctx.rho(), H);
    const auto roots = super_positive_roots(ctx, H);
    for (const auto& r : roots)
        if (r.parity == Parity::Even) out = mul_binomial(out, r.weight, -1, r.multiplicity);
    for (const auto& r : roots)
        if (r.parity == Parity::Odd) out = div_binomial(out, r.weight, r.multiplicity);
    return out;
}

QSeries super_numerator(const RootSystemCtx& ctx, const Weight& Lambda, int H) {
    const int l = ctx.rank();
    const Weight top = canonical_class(Lambda) + ctx.rho();
    if (level(top) <= 0) throw std::domain_error("orbit walk needs positive level");
    QSeries out(top, H);
    out.mark_clipped();
    std::map<Weight, int> sign;
    std::deque<Weight> queue;
    sign[top] = 1;
    queue.push_back(top);
    while (!queue.empty()) {
        const Weight v = queue.front();
        queue.pop_front();
        const int sv = sign[v];
        for (int i = 0; i <= l; ++i) {
            const Rational c = ctx.coroot_pairing(i, v);
            if (c <= 0) continue;
            const Weight next = v - c * ctx.simple_roots(Sharp::I)[static_cast<std::size_t>(i)];
            if (ctx.height(top - next) > H) continue;
            // eps(s_i) psi(s_i) is -1 for even simple roots and +1 for the odd one
            const int sn = sv * (i == l ? 1 : -1);
            auto it = sign.find(next);
            if (it != sign.end()) {
                if (it->second != sn) throw std::logic_error("inconsistent orbit sign");
                continue;
            }
            sign[next] = sn;
            queue.push_back(next);
        }
    }
    for (const auto& [w, s] : sign) out.add_term(*out.key_of(w), s);
    out.finish();
    return out;
}

QSeries super_character(const RootSystemCtx& ctx, const Weight& Lambda, int depth, int H) {
    if (!integrable(ctx, Lambda)) throw std::invalid_argument("super-character needs an integrable weight");
    const Weight lam = canonical_class(Lambda);
    if (H < 0) H = character_height(ctx, lam, depth);
    return restrict_depth(divide(super_numerator(ctx, lam, H), super_denominator(ctx, H)), depth);
}

SuperReport check_super_denominator(int l, int depth) {
    RootSystemCtx ctx(l);
    SuperReport r;
    r.check = "super-denominator";
    r.rank = l;
    r.depth = depth;
    r.height = default_height(l, depth);
    const QSeries sd = super_denominator(ctx, r.height);
    QSeries tw = anti_invariant(ctx, Weight(l), Sharp::I, true, r.height);
    Weight shift(l);
    shift.delta = norm_sq(ctx.rho()) / (2 * (2 * l + 1));
    tw = tw.shifted_apex(shift);
    const SeriesDiff d = compare(sd, tw);
    r.pass = d.equal;
    r.detail = d.equal ? "equal" : d.reason;
    return r;
}

SuperReport check_super_character(int l, const std::vector<int>& labels, int depth) {
    RootSystemCtx ctx(l);
    SuperReport r;
    r.check = "super-character";
    r.rank = l;
    r.depth = depth;
    r.labels = labels;
    const Weight lam = ctx.weight_from_labels(labels);
    r.level = static_cast<int>(to_int64(level(lam)));
    r.height = character_height(ctx, lam, depth);
    const QSeries sch = super_character(ctx, lam, depth, r.height);
    CharacterRequest req{lam, Sharp::I, true, depth, r.height};
    QSeries chi = character(ctx, req);
    Weight shift(l);
    shift.delta = conformal_anomaly(ctx, lam);
    chi = chi.shifted_apex(shift);
    const SeriesDiff d = compare(sch, chi);
    r.pass = d.equal && !sch.terms().empty();
    r.detail = d.equal ? "equal, " + std::to_string(sch.size()) + " terms" : d.reason;
    return r;
}

nlohmann::json to_json(const SuperReport& r) {
    return {{"check", r.check}, {"rank", r.rank}, {"level", r.level}, {"labels", r.labels},
            {"depth", r.depth}, {"height", r.height}, {"pass", r.pass}, {"detail", r.detail}};
}

}  // namespace kacmod
