#include "kacmod/cli.hpp"

#include "kacmod/characters.hpp"
#include "kacmod/modular.hpp"
#include "kacmod/suite.hpp"
#include "kacmod/superalg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace kacmod::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string fmt_complex(cplx c) {
    auto clean = [](double x) { return std::abs(x) < 1e-13 ? 0.0 : x; };
    c = {clean(c.real()), clean(c.imag())};
    std::string im = fmt15(c.imag());
    if (im.front() != '-') im = "+" + im;
    return fmt15(c.real()) + im + "i";
}

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace

Config parse_config(const std::string& text, Config c) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(n) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
        if (key == "rank_cap") c.rank_cap = std::stoi(val);
        else if (key == "depth") c.depth = std::stoi(val);
        else if (key == "tol") c.tol = std::stod(val);
        else if (key == "theta_tol") c.theta_tol = std::stod(val);
        else if (key == "threads") c.threads = std::stoi(val);
        else if (key == "format") {
            if (val == "json") c.format = Format::Json;
            else if (val == "csv") c.format = Format::Csv;
            else if (val == "pretty") c.format = Format::Pretty;
            else throw std::invalid_argument("config: unknown format " + val);
        } else if (key == "tau") c.tau = val;
        else if (key == "z") c.z = val;
        else if (key == "t") c.t = val;
        else throw std::invalid_argument("config: unknown key " + key);
    }
    if (c.depth < 1) throw std::invalid_argument("config: depth must be >= 1");
    if (!(c.tol > 0 && c.tol < 1)) throw std::invalid_argument("config: tol must lie in (0, 1)");
    if (c.rank_cap < 1 || c.rank_cap > 6) throw std::invalid_argument("config: rank_cap must lie in [1, 6]");
    return c;
}

Config load_config(const std::string& path) {
    Config c;
    if (!path.empty()) {
        std::ifstream f(path);
        if (!f) throw std::invalid_argument("cannot read config file " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        c = parse_config(ss.str(), c);
    }
    if (const char* e = std::getenv("KACMOD_THREADS")) {
        try {
            c.threads = std::max(1, std::stoi(e));
        } catch (const std::exception&) {
            throw std::invalid_argument("KACMOD_THREADS must be an integer");
        }
    }
    return c;
}

cplx parse_complex(const std::string& s_in) {
    std::string s;
    for (char ch : s_in)
        if (ch != ' ') s += ch;
    if (s.empty()) throw std::invalid_argument("empty complex number");
    std::size_t pos = 0;
    auto num = [&](const std::string& x) {
        std::size_t used = 0;
        const double v = std::stod(x, &used);
        if (used != x.size()) throw std::invalid_argument("bad complex number: " + s_in);
        return v;
    };
    try {
        if (s.back() != 'i') return {num(s), 0.0};
        s.pop_back();
        // split at the last sign that is not an exponent sign
        for (std::size_t i = s.size(); i-- > 1;)
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                pos = i;
                break;
            }
        auto imag = [&](std::string x) {
            if (x.empty() || x == "+") return 1.0;
            if (x == "-") return -1.0;
            return num(x);
        };
        if (pos == 0) return {0.0, imag(s)};
        return {num(s.substr(0, pos)), imag(s.substr(pos))};
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad complex number: " + s_in);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("bad complex number: " + s_in);
    }
}

std::vector<cplx> parse_complex_list(const std::string& s) {
    std::vector<cplx> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
    return out;
}

std::vector<int> parse_labels(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(trim(item), &used);
        if (used != trim(item).size() || v < 0) throw std::invalid_argument("labels must be nonnegative integers");
        out.push_back(v);
    }
    return out;
}

nlohmann::json stable(nlohmann::json j) {
    if (j.is_number_float()) return std::stod(fmt15(j.get<double>()));
    if (j.is_array() || j.is_object())
        for (auto& v : j) v = stable(v);
    return j;
}

namespace {

struct Common {
    bool json = false;
};

struct Ctx {
    Config cfg;
    std::ostream& out;
};

void check_rank(const Config& cfg, int l) {
    if (l < 1 || l > cfg.rank_cap) throw Usage("rank must lie in [1, " + std::to_string(cfg.rank_cap) + "]");
}

void emit_json(std::ostream& out, const nlohmann::json& j) { out << stable(j).dump(2) << "\n"; }

YPoint make_point(const Config& cfg, int l, const std::string& tau, const std::string& z, const std::string& t) {
    YPoint y = default_point(l);
    const std::string ta = tau.empty() ? cfg.tau : tau, za = z.empty() ? cfg.z : z, tt = t.empty() ? cfg.t : t;
    if (!ta.empty()) y.tau = parse_complex(ta);
    if (!za.empty()) y.z = parse_complex_list(za);
    if (!tt.empty()) y.t = parse_complex(tt);
    if (static_cast<int>(y.z.size()) != l) throw Usage("--z needs exactly rank entries");
    if (y.tau.imag() <= 0) throw Usage("Im tau must be positive");
    return y;
}

std::vector<DominantWeight> pick_weights(const RootSystemCtx& ctx, int k, const std::string& labels) {
    if (k < 0 || k % 2 != 0) throw Usage("level must be even and nonnegative");
    auto all = ctx.enumerate_dominant(k);
    if (labels.empty()) return all;
    const auto m = parse_labels(labels);
    for (const auto& d : all)
        if (d.labels == m) return {d};
    throw Usage("labels " + labels + " are not a dominant weight of level " + std::to_string(k));
}

int verdict(bool pass) { return pass ? 0 : 1; }

// --which takes a case name or the numeric id the command line has always used for it.
const std::map<std::string, LawCase> kAntiCases{
    {"plain-I", LawCase::PlainI},   {"twisted-I", LawCase::TwistedI}, {"plain-II", LawCase::PlainII},
    {"twisted-II", LawCase::TwistedII}, {"4.2", LawCase::PlainI},     {"4.3", LawCase::TwistedI},
    {"4.4", LawCase::PlainII},      {"4.5", LawCase::TwistedII}};
const std::map<std::string, LawCase> kCharCases{
    {"plain-I", LawCase::PlainI},   {"twisted-I", LawCase::TwistedI}, {"plain-II", LawCase::PlainII},
    {"twisted-II", LawCase::TwistedII}, {"4.6", LawCase::PlainI},     {"4.7", LawCase::TwistedI},
    {"4.8", LawCase::PlainII},      {"4.9", LawCase::TwistedII}};

std::vector<std::string> keys(const std::map<std::string, LawCase>& m) {
    std::vector<std::string> k;
    for (const auto& [a, b] : m) k.push_back(a);
    return k;
}

nlohmann::json report_list(const std::vector<VerificationReport>& reps, bool& pass) {
    nlohmann::json j = nlohmann::json::array();
    pass = true;
    for (const auto& r : reps) {
        j.push_back(to_json(r));
        pass = pass && r.pass;
    }
    return j;
}

nlohmann::json weight_list(const std::vector<Weight>& ws) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& w : ws) j.push_back(to_json(w));
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"kacmod: characters and modular transformations for the twisted affine algebra BC_l^(2)", "kacmod"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file");

    int rank = 1, level = 2, depth = -1, skip = -1, power = 1, samples = 12, N = 3, imax = -1;
    unsigned long long seed = 1;
    bool json = false, csv = false, twisted = false, quick = false, twisted_I = false;
    std::string sharp = "I", labels, which, kind, tau, z, t, a_vec, report, law = "S", criteria;
    double tol = -1, theta_tol = -1;
    int series_depth = 12;

    auto rank_opt = [&](CLI::App* s) { s->add_option("--rank", rank, "rank l")->required()->check(CLI::PositiveNumber); };
    auto json_opt = [&](CLI::App* s) { s->add_flag("--json", json, "machine-readable output"); };
    auto point_opts = [&](CLI::App* s) {
        s->add_option("--tau", tau, "tau as a+bi");
        s->add_option("--z", z, "comma-separated z_j");
        s->add_option("--t", t, "t");
        s->add_option("--tol", tol, "relative tolerance");
        s->add_option("--theta-tol", theta_tol, "lattice tail tolerance");
    };

    auto* roots = app.add_subcommand("roots", "simple roots, labels, fundamental weights");
    rank_opt(roots);
    json_opt(roots);
    auto* weights = app.add_subcommand("weights", "dominant weights of a level");
    rank_opt(weights);
    weights->add_option("--level", level, "even level k")->required();
    json_opt(weights);
    auto* chr = app.add_subcommand("char", "q-expansion of a character");
    rank_opt(chr);
    chr->add_option("--labels", labels, "Dynkin labels m0,...,ml")->required();
    chr->add_option("--depth", depth, "q-depth");
    chr->add_flag("--twisted", twisted, "twisted character");
    chr->add_option("--sharp", sharp, "frame I or II")->check(CLI::IsMember({"I", "II"}));
    json_opt(chr);
    chr->add_flag("--csv", csv, "plot-ready CSV of coefficients");

    auto* check = app.add_subcommand("check", "exact identity checks");
    check->require_subcommand(1);
    auto* den = check->add_subcommand("denominator", "denominator identity");
    rank_opt(den);
    den->add_option("--depth", depth, "q-depth");
    den->add_flag("--twisted", twisted, "twisted identity");
    den->add_option("--skip-factor", skip, "drop one product factor (negative control)");
    json_opt(den);

    auto* sm = app.add_subcommand("smatrix", "finite S-transformation matrix");
    sm->add_option("--kind", kind, "aI|aI_II|aII_I|aII")->required()->check(CLI::IsMember({"aI", "aI_II", "aII_I", "aII"}));
    rank_opt(sm);
    sm->add_option("--level", level, "even level k")->required();
    json_opt(sm);

    auto* ver = app.add_subcommand("verify", "numerical verifiers (JSON reports)");
    ver->require_subcommand(1);
    auto* vs = ver->add_subcommand("s-lemma", "S-law of anti-invariants");
    auto* vt = ver->add_subcommand("t-lemma", "T-law of anti-invariants");
    auto* vc = ver->add_subcommand("s-zero", "S-law constants at lambda = 0");
    for (auto* s : {vs, vt, vc}) {
        s->add_option("--which", which, "plain-I|twisted-I|plain-II|twisted-II (or 4.2|4.3|4.4|4.5)")
            ->required()
            ->check(CLI::IsMember(keys(kAntiCases)));
        rank_opt(s);
        point_opts(s);
        json_opt(s);
    }
    for (auto* s : {vs, vt}) {
        s->add_option("--level", level, "even level k");
        s->add_option("--labels", labels, "one weight, default all of the level");
    }
    vs->add_option("--series-depth", series_depth, "formal cross-check depth, 0 disables");
    vt->add_option("--power", power, "apply T this many times")->check(CLI::PositiveNumber);
    auto* vp = ver->add_subcommand("prop", "S or T law of normalized characters");
    vp->add_option("--which", which, "plain-I|twisted-I|plain-II|twisted-II (or 4.6|4.7|4.8|4.9)")
        ->required()
        ->check(CLI::IsMember(keys(kCharCases)));
    vp->add_option("--law", law, "S or T")->check(CLI::IsMember({"S", "T"}));
    rank_opt(vp);
    vp->add_option("--level", level, "even level k");
    vp->add_option("--labels", labels, "one weight, default all of the level");
    point_opts(vp);
    json_opt(vp);
    auto* vsl = ver->add_subcommand("sl2", "closure of character families under S and T");
    rank_opt(vsl);
    vsl->add_option("--level", level, "even level k");
    vsl->add_option("--samples", samples, "number of sample points");
    vsl->add_option("--seed", seed, "sampling seed");
    vsl->add_option("--tol", tol, "residual tolerance");
    vsl->add_flag("--twisted-I", twisted_I, "the twisted type-I family instead");
    json_opt(vsl);
    auto* vpo = ver->add_subcommand("poisson", "Poisson resummation");
    rank_opt(vpo);
    vpo->add_option("--a", a_vec, "comma-separated shift vector");
    vpo->add_option("--tau", tau, "tau as a+bi");
    vpo->add_option("--tol", tol, "relative tolerance");
    json_opt(vpo);
    auto* vsp = ver->add_subcommand("sinprod", "product of sines");
    vsp->add_option("--N", N, "N >= 2")->required();
    vsp->add_option("--tol", tol, "relative tolerance");
    json_opt(vsp);

    auto* sup = app.add_subcommand("super", "superalgebra side");
    sup->require_subcommand(1);
    auto* sv = sup->add_subcommand("verify", "super-denominator and super-characters");
    rank_opt(sv);
    sv->add_option("--level", level, "even level k");
    sv->add_option("--depth", depth, "q-depth");
    json_opt(sv);
    auto* so = sup->add_subcommand("osp", "irreducible osp(1|2) module L(N alpha)");
    so->add_option("--N", N, "N >= 0")->required()->check(CLI::NonNegativeNumber);
    so->add_option("--imax", imax, "bracket check range");
    json_opt(so);

    auto* suite = app.add_subcommand("suite", "acceptance battery");
    suite->add_flag("--quick", quick, "ranks 1 and 2 only");
    suite->add_option("--report", report, "write full results as JSON");
    suite->add_option("--criteria", criteria, "comma-separated subset of criterion ids");
    json_opt(suite);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        const Config cfg = load_config(config_path);
        if (cfg.format == Format::Json) json = true;
        if (cfg.format == Format::Csv) csv = true;
        const double vtol = tol > 0 ? tol : cfg.tol;
        const double ttol = theta_tol > 0 ? theta_tol : cfg.theta_tol;
        const int D = depth > 0 ? depth : cfg.depth;

        if (*roots) {
            check_rank(cfg, rank);
            RootSystemCtx ctx(rank);
            nlohmann::json j{{"rank", rank}, {"labels", ctx.labels()}, {"colabels", ctx.colabels()}};
            for (Sharp s : {Sharp::I, Sharp::II}) {
                j["simple_roots"][to_string(s)] = weight_list(ctx.simple_roots(s));
                j["fundamental_weights"][to_string(s)] = weight_list(ctx.fund_weights(s));
                j["cartan_matrix"][to_string(s)] = ctx.cartan_matrix(s);
                j["rho_f"][to_string(s)] = to_json(ctx.rho_f(s));
            }
            j["rho"] = to_json(ctx.rho());
            for (int i = 0; i <= rank; ++i)
                j["level_table"].push_back(
                    {{"index", i}, {"level", to_string(kacmod::level(ctx.fund_weights(Sharp::I)[static_cast<std::size_t>(i)]))}});
            for (const auto& sp : ctx.special_indices())
                j["special_indices"].push_back({{"index", sp.index}, {"p", sp.p}, {"root", to_json(sp.root)}});
            if (json) {
                emit_json(out, j);
            } else {
                out << "rank " << rank << "\n";
                for (Sharp s : {Sharp::I, Sharp::II}) {
                    out << "simple roots (" << to_string(s) << "):\n";
                    for (const auto& a : ctx.simple_roots(s)) out << "  " << to_json(a).dump() << "\n";
                }
                out << "labels " << nlohmann::json(ctx.labels()).dump() << "  colabels "
                    << nlohmann::json(ctx.colabels()).dump() << "\n";
                out << "fundamental weights (I):\n";
                for (const auto& w : ctx.fund_weights(Sharp::I))
                    out << "  " << to_json(w).dump() << "  level " << to_string(kacmod::level(w)) << "\n";
            }
            return 0;
        }
        if (*weights) {
            check_rank(cfg, rank);
            RootSystemCtx ctx(rank);
            const auto dom = pick_weights(ctx, level, "");
            nlohmann::json j{{"rank", rank}, {"level", level}, {"count", dom.size()}};
            j["weights"] = nlohmann::json::array();
            for (std::size_t i = 0; i < dom.size(); ++i)
                j["weights"].push_back({{"index", i}, {"labels", dom[i].labels}, {"weight", to_json(dom[i].weight)}});
            if (json) {
                emit_json(out, j);
            } else {
                for (std::size_t i = 0; i < dom.size(); ++i)
                    out << i << "  " << nlohmann::json(dom[i].labels).dump() << "  " << to_json(dom[i].weight).dump()
                        << "\n";
            }
            return 0;
        }
        if (*chr) {
            check_rank(cfg, rank);
            RootSystemCtx ctx(rank);
            const auto m = parse_labels(labels);
            if (static_cast<int>(m.size()) != rank + 1) throw Usage("--labels needs rank+1 entries");
            const Weight lam = ctx.weight_from_labels(m);
            const QSeries c = character(ctx, {lam, parse_sharp(sharp), twisted, D, -1});
            const auto slices = delta_expansion(c);
            if (csv) {
                out << "q_degree,weight,coefficient\n";
                for (const auto& s : slices)
                    for (const auto& [w, v] : s.terms) {
                        std::string ws;
                        for (const auto& e : finite_coords(w, parse_sharp(sharp))) ws += (ws.empty() ? "" : ";") + to_string(e);
                        out << to_string(s.q_degree) << "," << ws << "," << v << "\n";
                    }
                return 0;
            }
            nlohmann::json j{{"rank", rank},
                             {"labels", m},
                             {"sharp", sharp},
                             {"twisted", twisted},
                             {"depth", D},
                             {"height", c.max_height()},
                             {"conformal_anomaly", to_string(conformal_anomaly(ctx, lam))},
                             {"apex", to_json(c.apex())},
                             {"terms", c.size()},
                             {"expansion", to_json(slices)}};
            if (json) {
                emit_json(out, j);
            } else {
                out << "character " << nlohmann::json(m).dump() << (twisted ? " (twisted)" : "") << ", c = "
                    << to_string(conformal_anomaly(ctx, lam)) << "\n";
                for (const auto& s : slices) {
                    out << "q^" << to_string(s.q_degree) << ":";
                    for (const auto& [w, v] : s.terms) {
                        std::string ws;
                        for (const auto& e : finite_coords(w, parse_sharp(sharp))) ws += (ws.empty() ? "" : ",") + to_string(e);
                        out << " " << v << "*e(" << ws << ")";
                    }
                    out << "\n";
                }
            }
            return 0;
        }
        if (*den) {
            check_rank(cfg, rank);
            const auto r = check_denominator_identity(rank, D, twisted, skip);
            if (json) emit_json(out, to_json(r));
            else
                out << (r.twisted ? "twisted " : "") << "denominator identity, rank " << rank << ", depth " << D << ": "
                    << (r.pass ? "PASS" : "FAIL " + r.diff.reason) << "\n";
            return verdict(r.pass);
        }
        if (*sm) {
            check_rank(cfg, rank);
            RootSystemCtx ctx(rank);
            pick_weights(ctx, level, "");
            const auto m = smatrix(ctx, parse_skind(kind), level);
            if (json) {
                emit_json(out, to_json(m));
            } else {
                for (std::size_t i = 0; i < m.index.size(); ++i) {
                    out << nlohmann::json(m.index[i].labels).dump() << ":";
                    for (const auto& c : m.entries[i]) out << "  " << fmt_complex(c);
                    out << "\n";
                }
            }
            return 0;
        }
        if (*ver) {
            bool pass = true;
            nlohmann::json j;
            SampleOptions opt;
            opt.theta_tol = ttol;
            opt.series_depth = series_depth;
            if (*vs || *vt || *vp || *vc) {
                check_rank(cfg, rank);
                RootSystemCtx ctx(rank);
                const YPoint y = make_point(cfg, rank, tau, z, t);
                std::vector<VerificationReport> reps;
                const LawCase lc = *vp ? kCharCases.at(which) : kAntiCases.at(which);
                if (*vc) {
                    reps.push_back(verify_S_corollary(ctx, lc, y, vtol, opt));
                } else {
                    for (const auto& d : pick_weights(ctx, level, labels)) {
                        if (*vs) reps.push_back(verify_S(ctx, lc, d.labels, level, y, vtol, opt));
                        if (*vt) reps.push_back(verify_T(ctx, lc, d.labels, level, y, vtol, opt, power));
                        if (*vp) {
                            opt.series_depth = 0;
                            reps.push_back(law == "S" ? verify_prop_S(ctx, lc, d.labels, level, y, vtol, opt)
                                                      : verify_prop_T(ctx, lc, d.labels, level, y, vtol, opt));
                        }
                    }
                }
                j = report_list(reps, pass);
                if (reps.size() == 1) j = j.front();
            } else if (*vsl) {
                check_rank(cfg, rank);
                RootSystemCtx ctx(rank);
                pick_weights(ctx, level, "");
                const auto r = verify_closure_sampled(ctx, level, twisted_I, samples, seed, tol > 0 ? tol : cfg.tol);
                j = to_json(r);
                pass = r.pass;
            } else if (*vpo) {
                check_rank(cfg, rank);
                std::vector<cplx> a = a_vec.empty() ? std::vector<cplx>(static_cast<std::size_t>(rank), cplx{0.0})
                                                    : parse_complex_list(a_vec);
                const cplx tv = tau.empty() ? cplx{0.0, 1.0} : parse_complex(tau);
                if (static_cast<int>(a.size()) != rank) throw Usage("--a needs exactly rank entries");
                if (tv.imag() <= 0) throw Usage("Im tau must be positive");
                const auto r = poisson_check(rank, a, tv, tol > 0 ? tol : 1e-8);
                j = to_json(r);
                pass = r.pass;
            } else if (*vsp) {
                if (N < 2) throw Usage("N must be at least 2");
                const auto s = sin_product(N);
                const double st = tol > 0 ? tol : 1e-10;
                pass = s.rel_err <= st;
                j = {{"id", "sinprod"},   {"N", N},       {"product", s.product}, {"expected", s.expected},
                     {"rel_err", s.rel_err}, {"tol", st}, {"pass", pass}};
            }
            emit_json(out, j);
            return verdict(pass);
        }
        if (*sv) {
            check_rank(cfg, rank);
            RootSystemCtx ctx(rank);
            const auto dom = pick_weights(ctx, level, "");
            bool pass = true;
            nlohmann::json j = nlohmann::json::array();
            std::vector<SuperReport> reps{check_super_denominator(rank, D)};
            for (const auto& d : dom) reps.push_back(check_super_character(rank, d.labels, D));
            for (const auto& r : reps) {
                j.push_back(to_json(r));
                pass = pass && r.pass;
            }
            if (json) emit_json(out, j);
            else
                for (const auto& r : reps)
                    out << r.check << " " << nlohmann::json(r.labels).dump() << ": " << (r.pass ? "PASS" : "FAIL")
                        << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
            return verdict(pass);
        }
        if (*so) {
            const Rational lam = 2 * N;
            const int n = 2 * N;
            const auto br = osp_bracket_check(lam, imax >= 0 ? imax : 4 * N + 8);
            const int dim = osp_irreducible_dim(N);
            nlohmann::json j{{"N", N}, {"lambda_H", to_string(lam)}, {"dim", dim}, {"brackets_pass", br.pass}};
            for (int i = 0; i <= n; ++i) j["basis"].push_back("w_" + std::to_string(i));
            for (OspGen g : {OspGen::E, OspGen::e, OspGen::H, OspGen::f, OspGen::F}) {
                nlohmann::json rows = nlohmann::json::array();
                for (const auto& row : osp_matrix(g, n, lam)) {
                    nlohmann::json r = nlohmann::json::array();
                    for (const auto& x : row) r.push_back(to_string(x));
                    rows.push_back(r);
                }
                j["matrices"][to_string(g)] = rows;
            }
            if (json) {
                emit_json(out, j);
            } else {
                out << "L(" << N << " alpha): dim " << dim << ", basis w_0..w_" << n << "\n";
                for (auto& [name, rows] : j["matrices"].items()) {
                    out << name << ":\n";
                    for (const auto& r : rows) {
                        out << " ";
                        for (const auto& x : r) out << " " << std::setw(6) << x.get<std::string>();
                        out << "\n";
                    }
                }
            }
            return verdict(br.pass && dim == 2 * N + 1);
        }
        if (*suite) {
            SuiteOptions opt{quick, cfg.threads};
            std::vector<int> ids;
            if (!criteria.empty()) {
                ids = parse_labels(criteria);
                for (int id : ids)
                    if (id < 1 || id > kCriteria) throw Usage("criterion ids run from 1 to 12");
            }
            const auto res = run_suite(opt, ids);
            bool pass = true;
            nlohmann::json j{{"quick", quick}, {"threads", cfg.threads}};
            for (const auto& r : res) {
                j["criteria"].push_back(to_json(r));
                pass = pass && r.pass;
            }
            j["pass"] = pass;
            if (!report.empty()) {
                std::ofstream f(report);
                if (!f) throw std::runtime_error("cannot write " + report);
                f << stable(j).dump(2) << "\n";
            }
            if (json) {
                emit_json(out, j);
            } else {
                for (const auto& r : res)
                    out << std::setw(3) << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << std::left
                        << std::setw(44) << r.title << std::right << std::setw(9) << std::fixed << std::setprecision(2)
                        << r.seconds << " s\n";
                out << (pass ? "all criteria pass" : "some criteria FAIL") << "\n";
            }
            return verdict(pass);
        }
    } catch (const Usage& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace kacmod::cli
