#include "kacmod/modular.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <tuple>

namespace kacmod {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

cplx pairwise_sum(const std::vector<cplx>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        cplx s{0.0};
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}
cplx pairwise_sum(const std::vector<cplx>& v) { return v.empty() ? cplx{0.0} : pairwise_sum(v, 0, v.size()); }

// exp(2 pi i r) for rational r, reduced mod 1 first.
cplx unit_phase(const Rational& r) { return std::exp(2.0 * kPi * kI * to_double(frac(r))); }

// Calls f(gamma) for every gamma in Z^l inside the ball |gamma - c| <= R.
template <class F>
void for_ball(const std::vector<double>& c, double R, F&& f) {
    const std::size_t l = c.size();
    std::vector<long> lo(l), hi(l), g(l);
    for (std::size_t i = 0; i < l; ++i) {
        lo[i] = static_cast<long>(std::ceil(c[i] - R));
        hi[i] = static_cast<long>(std::floor(c[i] + R));
        if (lo[i] > hi[i]) return;
    }
    g = lo;
    while (true) {
        double d2 = 0;
        for (std::size_t i = 0; i < l; ++i) d2 += (g[i] - c[i]) * (g[i] - c[i]);
        if (d2 <= R * R) f(g);
        std::size_t i = 0;
        while (i < l && ++g[i] > hi[i]) g[i] = lo[i], ++i;
        if (i == l) break;
    }
}

struct LawRow {
    Sharp src;
    bool src_tw;
    SKind kind;
    Sharp tgt;
    bool tgt_tw;
};

LawRow law_row(LawCase c) {
    switch (c) {
        case LawCase::PlainI: return {Sharp::I, false, SKind::aI_II, Sharp::II, true};
        case LawCase::TwistedI: return {Sharp::I, true, SKind::aI, Sharp::I, true};
        case LawCase::PlainII: return {Sharp::II, false, SKind::aII, Sharp::II, false};
        case LawCase::TwistedII: return {Sharp::II, true, SKind::aII_I, Sharp::I, false};
    }
    throw std::invalid_argument("unknown law case");
}

// Target of the T-law: type II swaps plain and twisted.
bool t_target_twist(Sharp s, bool tw) { return s == Sharp::II ? !tw : tw; }

cplx i_pow(long n) {
    static const cplx p[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return p[((n % 4) + 4) % 4];
}

int rank_sign(int l) { return (l * (l - 1) / 2) % 2 == 0 ? 1 : -1; }

std::size_t row_of(const std::vector<DominantWeight>& idx, const std::vector<int>& labels) {
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (idx[i].labels == labels) return i;
    throw std::invalid_argument("labels are not a dominant weight of the requested level");
}

// Formal A evaluated at y, cut at the given depth.
cplx series_anti_invariant(const RootSystemCtx& ctx, const Weight& lambda, Sharp s, bool tw, const YPoint& y,
                           int depth) {
    const int H = character_height(ctx, lambda, depth);
    return evaluate(restrict_depth(anti_invariant(ctx, lambda, s, tw, H), depth), y, s);
}

struct CrossCheck {
    double max_rel = 0;
    bool ok = true;
};

Rational finite_norm(const Weight& w, Sharp s) {
    Rational n = 0;
    for (const auto& c : finite_coords(w, s)) n += c * c;
    return n;
}

}  // namespace

YPoint sl2_act(const SL2& g, const YPoint& y, Sharp) {
    if (g[0][0] * g[1][1] - g[0][1] * g[1][0] != 1) throw std::invalid_argument("matrix is not in SL(2,Z)");
    const cplx den = double(g[1][0]) * y.tau + double(g[1][1]);
    if (std::abs(den) == 0.0) throw std::domain_error("c tau + d vanishes");
    YPoint r;
    r.tau = (double(g[0][0]) * y.tau + double(g[0][1])) / den;
    cplx zz{0.0};
    for (const auto& z : y.z) {
        r.z.push_back(z / den);
        zz += z * z;
    }
    r.t = y.t - double(g[1][0]) * zz / (2.0 * den);
    return r;
}

double theta_radius(double K, const YPoint& y, double tol, int rank) {
    const double c = kPi * K * y.tau.imag();
    if (c <= 0) throw std::domain_error("Im tau must be positive");
    // crude shell count (2r+3)^l times the Gaussian decay
    double R = std::sqrt(std::log(1.0 / tol) / c);
    for (;; R += 0.25) {
        double tail = 0;
        for (int n = 0; n < 400; ++n) {
            const double r = R + n;
            tail += std::pow(2 * r + 3, rank) * std::exp(-c * r * r);
        }
        if (tail < tol / 10) return R;
    }
}

cplx eval_theta_coords(const std::vector<double>& a, double K, bool twisted, const YPoint& y, double tol) {
    const std::size_t l = a.size();
    if (y.z.size() != l) throw std::invalid_argument("rank mismatch");
    if (K <= 0) throw std::invalid_argument("theta needs positive level");
    std::vector<double> c(l);
    const double it = y.tau.imag();
    for (std::size_t i = 0; i < l; ++i) c[i] = -y.z[i].imag() / it - a[i] / K;
    const double R = theta_radius(K, y, tol, static_cast<int>(l));
    std::vector<cplx> terms;
    for_ball(c, R, [&](const std::vector<long>& g) {
        double x2 = 0;
        cplx xz{0.0};
        long sum = 0;
        for (std::size_t i = 0; i < l; ++i) {
            const double x = double(g[i]) + a[i] / K;
            x2 += x * x;
            xz += x * y.z[i];
            sum += g[i];
        }
        cplx e = std::exp(kI * kPi * K * y.tau * x2 + 2.0 * kPi * kI * K * xz);
        if (twisted && (sum % 2 != 0)) e = -e;
        terms.push_back(e);
    });
    return std::exp(2.0 * kPi * kI * K * y.t) * pairwise_sum(terms);
}

cplx eval_theta(const Weight& lambda, Sharp s, bool twisted, const YPoint& y, double tol) {
    std::vector<double> a;
    for (const auto& v : finite_coords(lambda, s)) a.push_back(to_double(v));
    return eval_theta_coords(a, to_double(level(lambda)), twisted, y, tol);
}

cplx eval_anti_invariant(const RootSystemCtx& ctx, const Weight& lambda, Sharp s, bool twisted, const YPoint& y,
                         double tol) {
    const Weight v = lambda + ctx.rho();
    const double K = to_double(level(v));
    std::vector<double> a;
    for (const auto& c : finite_coords(v, s)) a.push_back(to_double(c));
    cplx total{0.0};
    for (const auto& u : enumerate_finite(ctx.rank())) {
        int sign = epsilon(u);
        if (twisted) sign *= psi(to_type_I(u, s));
        total += double(sign) * eval_theta_coords(u.apply(a), K, twisted, y, tol);
    }
    return total;
}

cplx eval_character(const RootSystemCtx& ctx, const Weight& Lambda, Sharp s, bool twisted, const YPoint& y, double tol,
                    double threshold) {
    const cplx den = eval_anti_invariant(ctx, Weight(ctx.rank()), s, twisted, y, tol);
    if (std::abs(den) < threshold) throw DegeneratePoint("A_rho is numerically zero at this point");
    return eval_anti_invariant(ctx, Lambda, s, twisted, y, tol) / den;
}

SKind parse_skind(const std::string& s) {
    if (s == "aI") return SKind::aI;
    if (s == "aI_II") return SKind::aI_II;
    if (s == "aII_I") return SKind::aII_I;
    if (s == "aII") return SKind::aII;
    throw std::invalid_argument("unknown matrix kind: " + s);
}

std::string to_string(SKind k) {
    switch (k) {
        case SKind::aI: return "aI";
        case SKind::aI_II: return "aI_II";
        case SKind::aII_I: return "aII_I";
        case SKind::aII: return "aII";
    }
    return "?";
}

cplx s_entry(const RootSystemCtx& ctx, SKind kind, int k, const Weight& lambda, const Weight& mu) {
    const int l = ctx.rank();
    const Rational K = k + 2 * l + 1;
    Sharp frame = Sharp::I;
    Weight x, y;
    bool use_psi = false;
    switch (kind) {
        case SKind::aI:
            x = project_finite(lambda, Sharp::I) + ctx.rho_f(Sharp::I);
            y = project_finite(mu, Sharp::I) + ctx.rho_f(Sharp::I);
            use_psi = true;
            break;
        case SKind::aI_II:
            frame = Sharp::II;
            x = project_finite(lambda, Sharp::II) + phi_involution(ctx.rho_f(Sharp::I));
            y = project_finite(mu, Sharp::II) + ctx.rho_f(Sharp::II);
            break;
        case SKind::aII_I:
            x = project_finite(lambda, Sharp::I) + phi_involution(ctx.rho_f(Sharp::II));
            y = project_finite(mu, Sharp::I) + ctx.rho_f(Sharp::I);
            break;
        case SKind::aII:
            frame = Sharp::II;
            x = project_finite(lambda, Sharp::II) + ctx.rho_f(Sharp::II);
            y = project_finite(mu, Sharp::II) + ctx.rho_f(Sharp::II);
            break;
    }
    cplx s{0.0};
    for (const auto& u : enumerate_finite(l)) {
        int sign = epsilon(u);
        if (use_psi) sign *= psi(u);
        s += double(sign) * unit_phase(-inner(act(u, x, frame), y) / K);
    }
    return s;
}

cplx s_entry_aI_ker_psi(const RootSystemCtx& ctx, int k, const Weight& lambda, const Weight& mu) {
    const int l = ctx.rank();
    const Rational K = k + 2 * l + 1;
    const Weight x = project_finite(lambda, Sharp::I) + ctx.rho_f(Sharp::I);
    const Weight y = project_finite(mu, Sharp::I) + ctx.rho_f(Sharp::I);
    const auto sl = FiniteWeylElement::sign_flip(l, l);
    cplx s{0.0};
    for (const auto& u : enumerate_ker_psi_finite(l)) {
        const double e = epsilon(u);
        s += e * (unit_phase(-inner(act(u, x), y) / K) + unit_phase(-inner(act(u * sl, x), y) / K));
    }
    return s;
}

SMatrix smatrix(const RootSystemCtx& ctx, SKind kind, int k) {
    SMatrix m{kind, k, ctx.enumerate_dominant(k), {}};
    const bool mixed = kind == SKind::aI_II || kind == SKind::aII_I;
    for (const auto& a : m.index) {
        const Weight row = mixed ? phi_involution(a.weight) : a.weight;
        std::vector<cplx> r;
        for (const auto& b : m.index) r.push_back(s_entry(ctx, kind, k, row, b.weight));
        m.entries.push_back(std::move(r));
    }
    return m;
}

nlohmann::json to_json(const SMatrix& m) {
    nlohmann::json j;
    j["kind"] = to_string(m.kind);
    j["k"] = m.k;
    for (const auto& d : m.index) j["index"].push_back(d.labels);
    for (const auto& r : m.entries) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : r) row.push_back({c.real(), c.imag()});
        j["entries"].push_back(row);
    }
    return j;
}

VerificationReport make_report(std::string id, cplx lhs, cplx rhs, double tol, nlohmann::json meta) {
    VerificationReport r;
    r.id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.tol = tol;
    r.abs_err = std::abs(lhs - rhs);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    r.rel_err = scale < 1e-8 ? r.abs_err : r.abs_err / scale;
    r.pass = r.rel_err <= tol;
    r.metadata = std::move(meta);
    return r;
}

nlohmann::json to_json(const VerificationReport& r) {
    return {{"id", r.id},
            {"lhs", {r.lhs.real(), r.lhs.imag()}},
            {"rhs", {r.rhs.real(), r.rhs.imag()}},
            {"abs_err", r.abs_err},
            {"rel_err", r.rel_err},
            {"tol", r.tol},
            {"pass", r.pass},
            {"metadata", r.metadata}};
}

namespace {

// Adds the formal-series cross-check of the target values to a report.
void attach_series_check(VerificationReport& rep, const std::vector<cplx>& analytic,
                         const std::vector<cplx>& formal, const SampleOptions& opt) {
    double worst = 0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double sc = std::max(std::abs(analytic[i]), 1e-300);
        worst = std::max(worst, std::abs(analytic[i] - formal[i]) / sc);
    }
    rep.metadata["series_depth"] = opt.series_depth;
    rep.metadata["series_rel_err"] = worst;
    rep.metadata["series_tol"] = opt.series_tol;
    if (worst > opt.series_tol) rep.pass = false;
}

nlohmann::json base_meta(const RootSystemCtx& ctx, const std::vector<int>& labels, int k, const YPoint& y,
                         const SampleOptions& opt) {
    return {{"rank", ctx.rank()}, {"k", k}, {"labels", labels}, {"point", to_json(y)}, {"theta_tol", opt.theta_tol}};
}

}  // namespace

VerificationReport verify_S(const RootSystemCtx& ctx, LawCase c, const std::vector<int>& labels, int k,
                            const YPoint& y, double tol, const SampleOptions& opt) {
    const LawRow row = law_row(c);
    const int l = ctx.rank();
    const double K = k + 2 * l + 1;
    const auto dom = ctx.enumerate_dominant(k);
    const std::size_t r = row_of(dom, labels);
    const bool mixed = row.kind == SKind::aI_II || row.kind == SKind::aII_I;
    const Weight lam = dom[r].weight;
    const cplx lhs = eval_anti_invariant(ctx, lam, row.src, row.src_tw, sl2_act(kS, y), opt.theta_tol);
    const cplx pref = std::pow(K, -0.5 * l) * std::pow(std::sqrt(y.tau / kI), l);
    cplx rhs{0.0};
    std::vector<cplx> an, fo;
    for (const auto& mu : dom) {
        const cplx a = s_entry(ctx, row.kind, k, mixed ? phi_involution(lam) : lam, mu.weight);
        const cplx v = eval_anti_invariant(ctx, mu.weight, row.tgt, row.tgt_tw, y, opt.theta_tol);
        rhs += a * v;
        an.push_back(v);
        if (opt.series_depth > 0)
            fo.push_back(series_anti_invariant(ctx, mu.weight, row.tgt, row.tgt_tw, y, opt.series_depth));
    }
    rhs *= pref;
    auto meta = base_meta(ctx, labels, k, y, opt);
    meta["identity"] = "S-law " + to_string(c);
    meta["matrix"] = to_string(row.kind);
    auto rep = make_report("S-anti-" + to_string(c), lhs, rhs, tol, meta);
    if (opt.series_depth > 0) attach_series_check(rep, an, fo, opt);
    return rep;
}

VerificationReport verify_S_corollary(const RootSystemCtx& ctx, LawCase c, const YPoint& y, double tol,
                                      const SampleOptions& opt) {
    const LawRow row = law_row(c);
    const int l = ctx.rank();
    const Weight zero(l);
    const cplx cst = c == LawCase::TwistedI ? cplx(rank_sign(l)) : i_pow(-static_cast<long>(l) * l);
    const cplx lhs = eval_anti_invariant(ctx, zero, row.src, row.src_tw, sl2_act(kS, y), opt.theta_tol);
    const cplx rhs = std::pow(std::sqrt(y.tau / kI), l) * cst *
                     eval_anti_invariant(ctx, zero, row.tgt, row.tgt_tw, y, opt.theta_tol);
    auto meta = base_meta(ctx, std::vector<int>(static_cast<std::size_t>(l) + 1, 0), 0, y, opt);
    meta["identity"] = "S-law at lambda = 0, " + to_string(c);
    return make_report("S-anti-zero-" + to_string(c), lhs, rhs, tol, meta);
}

VerificationReport verify_T(const RootSystemCtx& ctx, LawCase c, const std::vector<int>& labels, int k,
                            const YPoint& y, double tol, const SampleOptions& opt, int power) {
    const LawRow row = law_row(c);
    const auto dom = ctx.enumerate_dominant(k);
    const Weight lam = dom[row_of(dom, labels)].weight;
    const Weight v = lam + ctx.rho();
    const Rational K = level(v);
    YPoint ty = y;
    bool tw = row.src_tw;
    cplx phase{1.0};
    for (int p = 0; p < power; ++p) {
        ty = sl2_act(kT, ty);
        phase *= unit_phase(finite_norm(v, row.src) / (2 * K));
        tw = t_target_twist(row.src, tw);
    }
    const cplx lhs = eval_anti_invariant(ctx, lam, row.src, row.src_tw, ty, opt.theta_tol);
    const cplx rhs = phase * eval_anti_invariant(ctx, lam, row.src, tw, y, opt.theta_tol);
    auto meta = base_meta(ctx, labels, k, y, opt);
    meta["identity"] = "T-law " + to_string(c);
    meta["power"] = power;
    meta["phase"] = {phase.real(), phase.imag()};
    return make_report("T-anti-" + to_string(c), lhs, rhs, tol, meta);
}

VerificationReport verify_prop_S(const RootSystemCtx& ctx, LawCase c, const std::vector<int>& labels,
                                 int k, const YPoint& y, double tol, const SampleOptions& opt) {
    const LawRow row = law_row(c);
    const int l = ctx.rank();
    const double K = k + 2 * l + 1;
    const auto dom = ctx.enumerate_dominant(k);
    const Weight lam = dom[row_of(dom, labels)].weight;
    const bool mixed = row.kind == SKind::aI_II || row.kind == SKind::aII_I;
    const cplx cst = c == LawCase::TwistedI ? cplx(rank_sign(l)) : i_pow(static_cast<long>(l) * l);
    const cplx lhs = eval_character(ctx, lam, row.src, row.src_tw, sl2_act(kS, y), opt.theta_tol);
    cplx rhs{0.0};
    for (const auto& mu : dom)
        rhs += s_entry(ctx, row.kind, k, mixed ? phi_involution(lam) : lam, mu.weight) *
               eval_character(ctx, mu.weight, row.tgt, row.tgt_tw, y, opt.theta_tol);
    rhs *= std::pow(K, -0.5 * l) * cst;
    auto meta = base_meta(ctx, labels, k, y, opt);
    meta["identity"] = "character S-law " + to_string(c);
    meta["matrix"] = to_string(row.kind);
    return make_report("S-char-" + to_string(c), lhs, rhs, tol, meta);
}

VerificationReport verify_prop_T(const RootSystemCtx& ctx, LawCase c, const std::vector<int>& labels,
                                 int k, const YPoint& y, double tol, const SampleOptions& opt) {
    const LawRow row = law_row(c);
    const int l = ctx.rank();
    const auto dom = ctx.enumerate_dominant(k);
    const Weight lam = dom[row_of(dom, labels)].weight;
    const Weight v = lam + ctx.rho();
    const Rational e = finite_norm(v, row.src) / (2 * level(v)) -
                       finite_norm(ctx.rho(), row.src) / (2 * Rational(2 * l + 1));
    const cplx phase = unit_phase(e);
    const cplx lhs = eval_character(ctx, lam, row.src, row.src_tw, sl2_act(kT, y), opt.theta_tol);
    const cplx rhs = phase * eval_character(ctx, lam, row.src, t_target_twist(row.src, row.src_tw), y, opt.theta_tol);
    auto meta = base_meta(ctx, labels, k, y, opt);
    meta["identity"] = "character T-law " + to_string(c);
    meta["phase"] = {phase.real(), phase.imag()};
    return make_report("T-char-" + to_string(c), lhs, rhs, tol, meta);
}

LawCase parse_law_case(const std::string& s) {
    if (s == "plain-I") return LawCase::PlainI;
    if (s == "twisted-I") return LawCase::TwistedI;
    if (s == "plain-II") return LawCase::PlainII;
    if (s == "twisted-II") return LawCase::TwistedII;
    throw std::invalid_argument("unknown law case: " + s);
}

std::string to_string(LawCase c) {
    switch (c) {
        case LawCase::PlainI: return "plain-I";
        case LawCase::TwistedI: return "twisted-I";
        case LawCase::PlainII: return "plain-II";
        case LawCase::TwistedII: return "twisted-II";
    }
    return "?";
}

std::string to_string(Family f) {
    switch (f) {
        case Family::I: return "I";
        case Family::II: return "II";
        case Family::PsiII: return "psi-II";
        case Family::PsiI: return "psi-I";
    }
    return "?";
}

std::vector<YPoint> sample_points(int rank, int n, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-0.3, 0.3), im(0.9, 1.3), zs(-0.12, 0.12);
    std::vector<YPoint> out;
    for (int i = 0; i < n; ++i) {
        YPoint y;
        y.tau = {re(rng), im(rng)};
        for (int j = 0; j < rank; ++j) y.z.push_back({zs(rng), zs(rng)});
        y.t = {zs(rng), 0.0};
        out.push_back(std::move(y));
    }
    return out;
}

namespace {

struct FamilySpec {
    Sharp s;
    bool tw;
};
FamilySpec family_spec(Family f) {
    switch (f) {
        case Family::I: return {Sharp::I, false};
        case Family::II: return {Sharp::II, false};
        case Family::PsiII: return {Sharp::II, true};
        case Family::PsiI: return {Sharp::I, true};
    }
    return {Sharp::I, false};
}

using Values = Eigen::MatrixXcd;  // samples x family members

Values family_values(const RootSystemCtx& ctx, const std::vector<DominantWeight>& dom, Family f,
                     const std::vector<YPoint>& pts, double tol) {
    const auto spec = family_spec(f);
    Values m(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(dom.size()));
    for (std::size_t j = 0; j < pts.size(); ++j)
        for (std::size_t i = 0; i < dom.size(); ++i)
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                eval_character(ctx, dom[i].weight, spec.s, spec.tw, pts[j], tol);
    return m;
}

ClosureArrow fit_arrow(const std::string& gen, Family from, Family to, const Values& src, const Values& tgt,
                       double tol, double& cond) {
    ClosureArrow a{gen, from, to, 0, false};
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(tgt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    cond = std::max(cond, sv(0) / sv(sv.size() - 1));
    for (Eigen::Index c = 0; c < src.cols(); ++c) {
        const Eigen::VectorXcd b = src.col(c);
        const Eigen::VectorXcd x = svd.solve(b);
        a.residual = std::max(a.residual, (tgt * x - b).norm() / b.norm());
    }
    a.pass = a.residual <= tol;
    return a;
}

ClosureReport run_closure(const RootSystemCtx& ctx, int k, const std::vector<YPoint>& samples, double tol,
                          double theta_tol,
                          const std::vector<std::tuple<std::string, Family, Family>>& arrows,
                          const std::vector<Family>& gram) {
    ClosureReport r;
    r.rank = ctx.rank();
    r.k = k;
    r.samples = static_cast<int>(samples.size());
    const auto dom = ctx.enumerate_dominant(k);
    r.dim = static_cast<int>(dom.size());
    r.degenerate = r.dim == 1;
    std::vector<YPoint> s_pts, t_pts;
    for (const auto& y : samples) {
        s_pts.push_back(sl2_act(kS, y));
        t_pts.push_back(sl2_act(kT, y));
    }
    std::map<Family, Values> at_y, at_s, at_t;
    auto get = [&](std::map<Family, Values>& cache, const std::vector<YPoint>& pts, Family f) -> const Values& {
        auto it = cache.find(f);
        if (it == cache.end()) it = cache.emplace(f, family_values(ctx, dom, f, pts, theta_tol)).first;
        return it->second;
    };
    r.pass = true;
    for (const auto& [gen, from, to] : arrows) {
        const Values& src = gen == "S" ? get(at_s, s_pts, from) : get(at_t, t_pts, from);
        r.arrows.push_back(fit_arrow(gen, from, to, src, get(at_y, samples, to), tol, r.condition));
        r.pass = r.pass && r.arrows.back().pass;
    }
    if (!gram.empty()) {
        Values all(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(gram.size() * dom.size()));
        Eigen::Index c = 0;
        for (Family f : gram) {
            const Values& v = get(at_y, samples, f);
            all.middleCols(c, v.cols()) = v;
            c += v.cols();
        }
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(all);
        const auto& sv = svd.singularValues();
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-8 * sv(0)) ++r.gram_rank;
        r.expected_rank = static_cast<int>(gram.size()) * r.dim;
    }
    return r;
}

}  // namespace

ClosureReport verify_sl2_closure(const RootSystemCtx& ctx, int k, const std::vector<YPoint>& samples, double tol,
                                 double theta_tol) {
    return run_closure(ctx, k, samples, tol, theta_tol,
                       {{"S", Family::II, Family::II},
                        {"S", Family::I, Family::PsiII},
                        {"S", Family::PsiII, Family::I},
                        {"T", Family::I, Family::I},
                        {"T", Family::II, Family::PsiII},
                        {"T", Family::PsiII, Family::II}},
                       {Family::I, Family::II, Family::PsiII});
}

ClosureReport verify_twisted_I_closure(const RootSystemCtx& ctx, int k, const std::vector<YPoint>& samples, double tol,
                                       double theta_tol) {
    return run_closure(ctx, k, samples, tol, theta_tol,
                       {{"S", Family::PsiI, Family::PsiI}, {"T", Family::PsiI, Family::PsiI}}, {});
}

ClosureReport verify_closure_sampled(const RootSystemCtx& ctx, int k, bool twisted_I, int n, unsigned long long seed,
                                     double tol, double theta_tol, int attempts) {
    const int need = 2 * static_cast<int>(ctx.enumerate_dominant(k).size()) * (twisted_I ? 1 : 3);
    n = std::max(n, need);
    ClosureReport r;
    for (int a = 0; a < attempts; ++a) {
        try {
            const auto pts = sample_points(ctx.rank(), n, seed + static_cast<unsigned long long>(a));
            r = twisted_I ? verify_twisted_I_closure(ctx, k, pts, tol, theta_tol)
                          : verify_sl2_closure(ctx, k, pts, tol, theta_tol);
            if (r.condition < 1e8) return r;
        } catch (const DegeneratePoint&) {
        }
    }
    return r;
}

nlohmann::json to_json(const ClosureReport& r) {
    nlohmann::json j{{"rank", r.rank},           {"k", r.k},
                     {"samples", r.samples},     {"dim", r.dim},
                     {"gram_rank", r.gram_rank}, {"expected_rank", r.expected_rank},
                     {"degenerate", r.degenerate}, {"condition", r.condition},
                     {"pass", r.pass}};
    j["arrows"] = nlohmann::json::array();
    for (const auto& a : r.arrows)
        j["arrows"].push_back({{"generator", a.generator},
                               {"from", to_string(a.from)},
                               {"to", to_string(a.to)},
                               {"residual", a.residual},
                               {"pass", a.pass}});
    return j;
}

namespace {

// Sum over Z^l of f(m), growing cubes until a full shell is negligible.
template <class F>
cplx lattice_sum(int l, F&& f) {
    cplx total{0.0};
    int quiet = 0;
    for (int R = 0; R <= 80; ++R) {
        std::vector<cplx> shell;
        std::vector<long> m(static_cast<std::size_t>(l), -R);
        while (true) {
            long mx = 0;
            for (long v : m) mx = std::max(mx, std::labs(v));
            if (mx == R) shell.push_back(f(m));
            int i = 0;
            while (i < l && ++m[static_cast<std::size_t>(i)] > R) m[static_cast<std::size_t>(i)] = -R, ++i;
            if (i == l) break;
        }
        const cplx s = pairwise_sum(shell);
        total += s;
        if (R > 2 && std::abs(s) <= 1e-18 * std::abs(total)) {
            if (++quiet >= 2) return total;
        } else {
            quiet = 0;
        }
    }
    throw std::runtime_error("lattice sum did not converge");
}

}  // namespace

VerificationReport poisson_check(int l, const std::vector<cplx>& a, cplx tau, double tol) {
    if (static_cast<int>(a.size()) != l) throw std::invalid_argument("shift vector has wrong length");
    if (tau.imag() <= 0) throw std::domain_error("Im tau must be positive");
    const cplx sigma = -1.0 / tau;
    const cplx lhs = lattice_sum(l, [&](const std::vector<long>& m) {
        cplx q{0.0};
        for (int i = 0; i < l; ++i) q += (double(m[static_cast<std::size_t>(i)]) + a[static_cast<std::size_t>(i)]) *
                                         (double(m[static_cast<std::size_t>(i)]) + a[static_cast<std::size_t>(i)]);
        return std::exp(kI * kPi * sigma * q);
    });
    const cplx rhs = std::pow(std::sqrt(tau / kI), l) * lattice_sum(l, [&](const std::vector<long>& m) {
                         double n2 = 0;
                         cplx am{0.0};
                         for (int i = 0; i < l; ++i) {
                             const double mi = double(m[static_cast<std::size_t>(i)]);
                             n2 += mi * mi;
                             am += a[static_cast<std::size_t>(i)] * mi;
                         }
                         return std::exp(kI * kPi * tau * n2 + 2.0 * kPi * kI * am);
                     });
    nlohmann::json meta{{"rank", l}, {"tau", {tau.real(), tau.imag()}}};
    for (const auto& x : a) meta["a"].push_back({x.real(), x.imag()});
    return make_report("poisson", lhs, rhs, tol, meta);
}

SinProduct sin_product(int N) {
    if (N < 2) throw std::invalid_argument("N must be at least 2");
    double p = 1;
    for (int k = 1; k < N; ++k) p *= std::sin(k * kPi / N);
    const double e = N / std::pow(2.0, N - 1);
    return {N, p, e, std::abs(p - e) / e};
}

YPoint default_point(int rank) {
    YPoint y;
    y.tau = {0.37, 1.13};
    for (int j = 1; j <= rank; ++j) y.z.push_back(cplx(0.11, 0.07) * double(j));
    y.t = {0.05, 0.0};
    return y;
}

std::vector<YPoint> acceptance_points(int rank) {
    std::vector<YPoint> pts{default_point(rank)};
    for (auto& y : sample_points(rank, 2, 20261015ULL)) pts.push_back(std::move(y));
    return pts;
}

}  // namespace kacmod
