#include "kacmod/suite.hpp"

#include "kacmod/characters.hpp"
#include "kacmod/modular.hpp"
#include "kacmod/superalg.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace kacmod {

namespace {

std::vector<int> ranks(bool quick, int hi) {
    std::vector<int> r;
    for (int l = 1; l <= (quick ? std::min(hi, 2) : hi); ++l) r.push_back(l);
    return r;
}

// Three fixed samples with Im tau >= 1, away from the zeros of A_rho.
std::vector<YPoint> criterion_points(int l) {
    std::vector<YPoint> pts{default_point(l)};
    YPoint a, b;
    a.tau = {-0.21, 1.27};
    b.tau = {0.13, 1.05};
    for (int j = 1; j <= l; ++j) {
        a.z.push_back(cplx(0.05, -0.09) * double(j) + cplx(0.03, 0.0));
        b.z.push_back(cplx(-0.08, 0.04) * double(j) + cplx(0.0, 0.02));
    }
    a.t = {0.02, 0.0};
    b.t = {-0.04, 0.01};
    pts.push_back(a);
    pts.push_back(b);
    return pts;
}

void absorb(CriterionResult& r, const VerificationReport& v, double& worst) {
    worst = std::max(worst, v.rel_err);
    if (!v.pass) {
        r.pass = false;
        r.details["failures"].push_back(to_json(v));
    }
}

CriterionResult denominators(bool twisted, bool quick) {
    CriterionResult r{twisted ? 2 : 1, twisted ? "twisted denominator identity" : "denominator identity", true, 0, {}};
    for (int l : ranks(quick, 3)) {
        const auto rep = check_denominator_identity(l, 10, twisted);
        r.pass = r.pass && rep.pass;
        r.details["runs"].push_back(to_json(rep));
    }
    return r;
}

CriterionResult super_denominators() {
    CriterionResult r{3, "super-denominator identity", true, 0, {}};
    for (int l : {1, 2}) {
        const auto rep = check_super_denominator(l, 8);
        r.pass = r.pass && rep.pass;
        r.details["runs"].push_back(to_json(rep));
    }
    return r;
}

CriterionResult trivial_and_positive(bool quick) {
    CriterionResult r{4, "chi_0 = 1 and positivity of characters", true, 0, {}};
    for (int l : ranks(quick, 3)) {
        RootSystemCtx ctx(l);
        const QSeries c = character(ctx, {Weight(l), Sharp::I, false, 12, -1});
        const bool ok = c.size() == 1 && c.terms().front().first == 0 && c.terms().front().second == 1;
        r.pass = r.pass && ok;
        r.details["trivial"].push_back({{"rank", l}, {"depth", 12}, {"terms", c.size()}, {"pass", ok}});
    }
    for (int l : {1, 2}) {
        RootSystemCtx ctx(l);
        for (const auto& d : ctx.enumerate_dominant(2)) {
            const QSeries c = character(ctx, {d.weight, Sharp::I, false, 8, -1});
            bool nonneg = true;
            for (const auto& [k, v] : c.terms()) nonneg = nonneg && v >= 0;
            const bool apex = c.coeff(0) == 1;
            r.pass = r.pass && nonneg && apex;
            r.details["positivity"].push_back({{"rank", l},
                                               {"labels", d.labels},
                                               {"terms", c.size()},
                                               {"nonnegative", nonneg},
                                               {"apex_one", apex}});
        }
    }
    return r;
}

CriterionResult super_characters() {
    CriterionResult r{5, "super-character equals twisted character", true, 0, {}};
    for (int l : {1, 2}) {
        RootSystemCtx ctx(l);
        for (const auto& d : ctx.enumerate_dominant(2)) {
            const auto rep = check_super_character(l, d.labels, 8);
            r.pass = r.pass && rep.pass;
            r.details["runs"].push_back(to_json(rep));
        }
    }
    return r;
}

const std::vector<LawCase> kCases{LawCase::PlainI, LawCase::TwistedI, LawCase::PlainII, LawCase::TwistedII};

CriterionResult s_laws() {
    CriterionResult r{6, "S-transformation of anti-invariants", true, 0, {}};
    double worst = 0, worst_cor = 0, worst_series = 0;
    int count = 0;
    SampleOptions opt;
    opt.theta_tol = 1e-10;
    opt.series_depth = 12;
    for (int l : {1, 2}) {
        RootSystemCtx ctx(l);
        for (const auto& y : criterion_points(l)) {
            for (const auto lc : kCases) {
                for (const auto& d : ctx.enumerate_dominant(2)) {
                    const auto v = verify_S(ctx, lc, d.labels, 2, y, 1e-6, opt);
                    worst_series = std::max(worst_series, v.metadata["series_rel_err"].get<double>());
                    absorb(r, v, worst);
                    ++count;
                }
                absorb(r, verify_S_corollary(ctx, lc, y, 1e-8, opt), worst_cor);
            }
        }
    }
    r.details["checks"] = count;
    r.details["max_rel_err"] = worst;
    r.details["max_zero_weight_rel_err"] = worst_cor;
    r.details["max_series_rel_err"] = worst_series;
    return r;
}

CriterionResult t_laws() {
    CriterionResult r{7, "T-transformation of anti-invariants", true, 0, {}};
    double worst = 0;
    SampleOptions opt;
    opt.series_depth = 0;
    for (int l : {1, 2}) {
        RootSystemCtx ctx(l);
        for (const auto& y : criterion_points(l))
            for (const auto lc : kCases)
                for (const auto& d : ctx.enumerate_dominant(2))
                    for (int p : {1, 2}) absorb(r, verify_T(ctx, lc, d.labels, 2, y, 1e-10, opt, p), worst);
    }
    r.details["max_rel_err"] = worst;
    return r;
}

CriterionResult props() {
    CriterionResult r{8, "S and T laws of normalized characters", true, 0, {}};
    double worst_s = 0, worst_t = 0;
    SampleOptions opt;
    opt.theta_tol = 1e-10;
    opt.series_depth = 0;
    for (int l : {1, 2}) {
        RootSystemCtx ctx(l);
        for (const auto& y : criterion_points(l))
            for (const auto lc : kCases)
                for (const auto& d : ctx.enumerate_dominant(2)) {
                    absorb(r, verify_prop_S(ctx, lc, d.labels, 2, y, 1e-6, opt), worst_s);
                    absorb(r, verify_prop_T(ctx, lc, d.labels, 2, y, 1e-6, opt), worst_t);
                }
    }
    r.details["max_rel_err_S"] = worst_s;
    r.details["max_rel_err_T"] = worst_t;
    return r;
}

CriterionResult closure() {
    CriterionResult r{9, "SL2 closure of character families", true, 0, {}};
    RootSystemCtx ctx(1);
    const auto main = verify_closure_sampled(ctx, 2, false, 12, 1, 1e-6);
    const auto tw = verify_closure_sampled(ctx, 2, true, 12, 101, 1e-6);
    r.pass = main.pass && tw.pass && main.gram_rank == 6;
    r.details["families"] = to_json(main);
    r.details["twisted_I"] = to_json(tw);
    return r;
}

CriterionResult poisson(bool quick) {
    CriterionResult r{10, "Poisson resummation and sine product", true, 0, {}};
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(-0.3, 0.3), tim(0.6, 1.6);
    double worst = 0;
    for (int l : ranks(quick, 3))
        for (int s = 0; s < 5; ++s) {
            std::vector<cplx> a;
            for (int i = 0; i < l; ++i) a.push_back({re(rng), im(rng)});
            const cplx tau{re(rng), tim(rng)};
            absorb(r, poisson_check(l, a, tau, 1e-8), worst);
        }
    double worst_sin = 0;
    for (int N = 2; N <= 50; ++N) worst_sin = std::max(worst_sin, sin_product(N).rel_err);
    r.pass = r.pass && worst_sin <= 1e-10;
    r.details["max_poisson_rel_err"] = worst;
    r.details["max_sine_rel_err"] = worst_sin;
    return r;
}

CriterionResult osp() {
    CriterionResult r{11, "osp(1|2) Verma modules", true, 0, {}};
    for (const Rational& lam : {Rational(0), Rational(1), Rational(4), Rational(-3), Rational(5, 3), Rational(7, 2)}) {
        const auto b = osp_bracket_check(lam, 20);
        r.pass = r.pass && b.pass;
        r.details["brackets"].push_back({{"lambda", to_string(lam)}, {"pass", b.pass}});
    }
    for (int N = 0; N <= 10; ++N) {
        const int d = osp_irreducible_dim(N);
        r.pass = r.pass && d == 2 * N + 1;
        r.details["dims"].push_back(d);
    }
    const std::vector<std::pair<Rational, bool>> cases{
        {0, true},   {2, true},   {6, true},          {10, true},         {1, false},
        {3, false},  {-2, false}, {Rational(1, 2), false}, {Rational(4, 3), false}, {-1, false}};
    for (const auto& [lam, want] : cases) {
        const bool got = osp_verma_reducible(lam, 40);
        r.pass = r.pass && got == want;
        r.details["reducibility"].push_back({{"lambda", to_string(lam)}, {"reducible", got}, {"expected", want}});
    }
    return r;
}

CriterionResult geometry(bool quick) {
    CriterionResult r{12, "coordinate geometry", true, 0, {}};
    std::mt19937_64 rng(12012);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 12);
    std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.3, 2.0);
    auto rat = [&] { return Rational(num(rng), den(rng)); };
    int exact_bad = 0;
    double worst = 0;
    for (int l : ranks(quick, 3)) {
        for (int n = 0; n < 100; ++n) {
            Weight w(l), v(l);
            for (int i = 0; i < l; ++i) w.eps[static_cast<std::size_t>(i)] = rat(), v.eps[static_cast<std::size_t>(i)] = rat();
            w.delta = rat(), w.lambda0 = rat(), v.delta = rat(), v.lambda0 = rat();
            const Weight pw = phi_involution(w);
            if (phi_involution(pw) != w) ++exact_bad;
            if (inner(pw, phi_involution(v)) != inner(w, v)) ++exact_bad;
            if (project_finite(pw, Sharp::II) != phi_involution(project_finite(w, Sharp::I))) ++exact_bad;

            YPoint y;
            y.tau = {u(rng), pos(rng)};
            for (int i = 0; i < l; ++i) y.z.push_back({u(rng), u(rng)});
            y.t = {u(rng), u(rng)};
            auto dist = [](const YPoint& a, const YPoint& b) {
                double d = std::abs(a.tau - b.tau) + std::abs(a.t - b.t);
                for (std::size_t i = 0; i < a.z.size(); ++i) d += std::abs(a.z[i] - b.z[i]);
                return d;
            };
            const YPoint ty = transition(y);
            worst = std::max(worst, dist(transition(ty), y));
            worst = std::max(worst, dist(ty, weight_to_point(Sharp::II, point_to_weight(Sharp::I, y))));
            worst = std::max(worst, dist(weight_to_point(Sharp::II, phi_involution(point_to_weight(Sharp::I, y))), y));
        }
    }
    r.pass = exact_bad == 0 && worst <= 1e-12;
    r.details["exact_failures"] = exact_bad;
    r.details["max_complex_err"] = worst;
    return r;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        switch (id) {
            case 1: r = denominators(false, opt.quick); break;
            case 2: r = denominators(true, opt.quick); break;
            case 3: r = super_denominators(); break;
            case 4: r = trivial_and_positive(opt.quick); break;
            case 5: r = super_characters(); break;
            case 6: r = s_laws(); break;
            case 7: r = t_laws(); break;
            case 8: r = props(); break;
            case 9: r = closure(); break;
            case 10: r = poisson(opt.quick); break;
            case 11: r = osp(); break;
            case 12: r = geometry(opt.quick); break;
            default: throw std::invalid_argument("no criterion " + std::to_string(id));
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        r.id = id;
        r.pass = false;
        r.details["error"] = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt, const std::vector<int>& ids_in) {
    std::vector<int> ids = ids_in;
    if (ids.empty())
        for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
    std::vector<CriterionResult> out(ids.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < ids.size();) out[i] = run_criterion(ids[i], opt);
    };
    const int n = std::max(1, std::min<int>(opt.threads, static_cast<int>(ids.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

nlohmann::json to_json(const CriterionResult& r) {
    return {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"seconds", r.seconds}, {"details", r.details}};
}

}  // namespace kacmod
