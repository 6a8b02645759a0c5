#include "kacmod/root_system.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace kacmod {

std::string to_string(RootLength r) {
    switch (r) {
        case RootLength::Short: return "short";
        case RootLength::Middle: return "middle";
        case RootLength::Long: return "long";
        case RootLength::Imaginary: return "imaginary";
    }
    return "?";
}

RootSystemCtx::RootSystemCtx(int rank) : l_(rank) {
    if (rank < 1) throw std::invalid_argument("rank must be >= 1");
    const int l = rank;
    // alpha_0 = delta - 2 eps_1, alpha_i = eps_i - eps_{i+1}, alpha_l = eps_l
    simple_I_.push_back(Weight::delta_w(l) - Rational(2) * Weight::epsilon(l, 1));
    for (int i = 1; i < l; ++i) simple_I_.push_back(Weight::epsilon(l, i) - Weight::epsilon(l, i + 1));
    simple_I_.push_back(Weight::epsilon(l, l));
    for (int i = 0; i <= l; ++i) simple_II_.push_back(simple_I_[static_cast<std::size_t>(l - i)]);

    labels_.assign(static_cast<std::size_t>(l + 1), 2);
    labels_[0] = 1;
    colabels_.assign(static_cast<std::size_t>(l + 1), 2);
    colabels_[static_cast<std::size_t>(l)] = 1;

    for (int j = 0; j <= l; ++j) {
        Weight w = Weight::lambda0_w(l);
        if (j == l) {
            w = Weight(l);
            for (auto& e : w.eps) e = Rational(1, 2);
            w.lambda0 = Rational(1, 2);
        } else {
            for (int i = 0; i < j; ++i) w.eps[static_cast<std::size_t>(i)] = 1;
        }
        fund_I_.push_back(w);
    }
    for (int j = 0; j <= l; ++j) fund_II_.push_back(fund_I_[static_cast<std::size_t>(l - j)]);

    rho_ = Weight(l);
    for (const auto& f : fund_I_) rho_ += f;
    rho_f_I_ = project_finite(rho_, Sharp::I);
    rho_f_II_ = project_finite(rho_, Sharp::II);
}

Rational RootSystemCtx::coroot_pairing(int i, const Weight& w) const {
    const Weight& a = simple_I_.at(static_cast<std::size_t>(i));
    return 2 * inner(a, w) / norm_sq(a);
}

std::vector<std::vector<int>> RootSystemCtx::cartan_matrix(Sharp s) const {
    const auto& roots = simple_roots(s);
    std::vector<std::vector<int>> a(roots.size(), std::vector<int>(roots.size()));
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < roots.size(); ++j)
            a[i][j] = static_cast<int>(to_int64(2 * inner(roots[i], roots[j]) / norm_sq(roots[i])));
    return a;
}

std::vector<Rational> root_height_vector(const Weight& beta) {
    if (beta.lambda0 != 0) throw std::invalid_argument("height vector of a weight with nonzero level");
    const int l = beta.rank();
    std::vector<Rational> n(static_cast<std::size_t>(l + 1));
    n[0] = beta.delta;
    n[1] = beta.eps[0] + 2 * n[0];
    for (int j = 2; j <= l; ++j)
        n[static_cast<std::size_t>(j)] = beta.eps[static_cast<std::size_t>(j - 1)] + n[static_cast<std::size_t>(j - 1)];
    return n;
}

Weight root_lattice_element(int l, const std::vector<int>& n) {
    Weight w(l);
    w.delta = n[0];
    w.eps[0] = n[1] - 2 * n[0];
    for (int j = 2; j <= l; ++j) w.eps[static_cast<std::size_t>(j - 1)] = n[static_cast<std::size_t>(j)] - n[static_cast<std::size_t>(j - 1)];
    return w;
}

std::vector<Rational> RootSystemCtx::height_vector(const Weight& beta) const { return root_height_vector(beta); }

Rational RootSystemCtx::height(const Weight& beta) const {
    Rational h = 0;
    for (const auto& x : height_vector(beta)) h += x;
    return h;
}

std::optional<RootInfo> RootSystemCtx::classify(const Weight& w) const {
    if (w.rank() != l_) throw std::invalid_argument("rank mismatch");
    if (w.lambda0 != 0 || !is_integer(w.delta)) return std::nullopt;
    std::vector<int> nz;
    for (int i = 0; i < l_; ++i) {
        const Rational& e = w.eps[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        if (!is_integer(e)) return std::nullopt;
        nz.push_back(i);
    }
    auto coef = [&](int i) { return w.eps[static_cast<std::size_t>(i)]; };
    if (nz.empty()) {
        if (w.delta == 0) return std::nullopt;
        return RootInfo{w, RootLength::Imaginary, Parity::Even, l_};
    }
    if (nz.size() == 1) {
        Rational c = abs(coef(nz[0]));
        if (c == 1) return RootInfo{w, RootLength::Short, Parity::Odd, 1};
        if (c == 2) {
            const std::int64_t d = to_int64(w.delta);
            if (d % 2 != 0) return RootInfo{w, RootLength::Long, Parity::Even, 1};
        }
        return std::nullopt;
    }
    if (nz.size() == 2 && abs(coef(nz[0])) == 1 && abs(coef(nz[1])) == 1)
        return RootInfo{w, RootLength::Middle, Parity::Even, 1};
    return std::nullopt;
}

bool RootSystemCtx::is_positive_root(const Weight& w) const {
    if (!classify(w)) return false;
    if (w.delta > 0) return true;
    if (w.delta < 0) return false;
    for (const auto& e : w.eps)
        if (e != 0) return e > 0;
    return false;
}

std::vector<RootInfo> RootSystemCtx::positive_roots(int max_height) const {
    const int l = l_;
    std::vector<Weight> finite;
    finite.push_back(Weight(l));
    for (int i = 1; i <= l; ++i) {
        for (int s : {1, -1}) {
            finite.push_back(Rational(s) * Weight::epsilon(l, i));
            finite.push_back(Rational(2 * s) * Weight::epsilon(l, i));
            for (int j = i + 1; j <= l; ++j)
                for (int t : {1, -1})
                    finite.push_back(Rational(s) * Weight::epsilon(l, i) + Rational(t) * Weight::epsilon(l, j));
        }
    }
    std::vector<RootInfo> out;
    const int nmax = (max_height + 2 * l) / (2 * l + 1) + 1;
    for (int n = 0; n <= nmax; ++n) {
        for (const auto& f : finite) {
            Weight w = f;
            w.delta = n;
            if (!is_positive_root(w)) continue;
            if (height(w) > max_height) continue;
            out.push_back(*classify(w));
        }
    }
    std::sort(out.begin(), out.end(), [&](const RootInfo& a, const RootInfo& b) {
        Rational ha = height(a.weight), hb = height(b.weight);
        if (ha != hb) return ha < hb;
        return a.weight < b.weight;
    });
    return out;
}

std::optional<SpecialIndex> RootSystemCtx::check_special(int i, int max_p) const {
    const Weight beta = Weight::delta_w(l_) - Rational(labels_[static_cast<std::size_t>(i)]) * simple_I_[static_cast<std::size_t>(i)];
    for (int p = 1; p <= max_p; ++p) {
        Weight a = Rational(1, p) * beta;
        if (is_positive_root(a)) return SpecialIndex{i, p, a};
    }
    return std::nullopt;
}

std::vector<SpecialIndex> RootSystemCtx::special_indices() const {
    std::vector<SpecialIndex> out;
    for (int i = 0; i <= l_; ++i) {
        // delta has height 2l+1, so p beyond that cannot give an integral root.
        if (auto s = check_special(i, 2 * l_ + 1)) out.push_back(*s);
    }
    return out;
}

Weight RootSystemCtx::weight_from_labels(const std::vector<int>& m) const {
    if (static_cast<int>(m.size()) != l_ + 1) throw std::invalid_argument("need l+1 labels");
    Weight w(l_);
    for (int j = 0; j <= l_; ++j) w += Rational(m[static_cast<std::size_t>(j)]) * fund_I_[static_cast<std::size_t>(j)];
    return w;
}

std::vector<DominantWeight> RootSystemCtx::enumerate_dominant(int k) const {
    if (k < 0 || k % 2 != 0) throw std::invalid_argument("level must be even and nonnegative");
    std::vector<DominantWeight> out;
    std::vector<int> m(static_cast<std::size_t>(l_ + 1), 0);
    // 2(m_0 + ... + m_{l-1}) + m_l = k, generated in lexicographic order.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == l_) {
            m[static_cast<std::size_t>(l_)] = remaining;
            out.push_back({m, weight_from_labels(m)});
            return;
        }
        for (int v = 0; 2 * v <= remaining; ++v) {
            m[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - 2 * v);
        }
    };
    rec(rec, 0, k);
    return out;
}

bool RootSystemCtx::is_dominant(const Weight& w) const {
    for (int i = 0; i <= l_; ++i) {
        Rational c = coroot_pairing(i, w);
        if (!is_integer(c) || c < 0) return false;
    }
    return true;
}

Weight RootSystemCtx::reflect(int i, const Weight& w) const {
    return w - coroot_pairing(i, w) * simple_I_.at(static_cast<std::size_t>(i));
}

// ---- coordinate maps ----

namespace {
const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

CWeight cweight_zero(int l) {
    CWeight w;
    w.eps.assign(static_cast<std::size_t>(l), 0.0);
    return w;
}

void axpy(CWeight& acc, cplx c, const CWeight& x) {
    for (std::size_t i = 0; i < acc.eps.size(); ++i) acc.eps[i] += c * x.eps[i];
    acc.delta += c * x.delta;
    acc.lambda0 += c * x.lambda0;
}
}  // namespace

CWeight point_to_weight(Sharp s, const YPoint& y) {
    const int l = y.rank();
    CWeight v = cweight_zero(l);
    if (s == Sharp::I) {
        axpy(v, -y.tau / 2.0, complexify(Weight::lambda0_w(l)));
        for (int i = 1; i <= l; ++i) axpy(v, y.z[static_cast<std::size_t>(i - 1)], complexify(Weight::epsilon(l, i)));
    } else {
        axpy(v, -y.tau, complexify(lambda0_II(l)));
        for (int i = 1; i <= l; ++i) axpy(v, y.z[static_cast<std::size_t>(i - 1)], complexify(epsilon_II(l, i)));
    }
    v.delta += y.t;
    CWeight out = cweight_zero(l);
    axpy(out, kTwoPiI, v);
    return out;
}

YPoint weight_to_point(Sharp s, const CWeight& v) {
    const int l = static_cast<int>(v.eps.size());
    const CWeight d = complexify(Weight::delta_w(l));
    if (inner(v, d).real() <= 0.0) throw std::domain_error("weight outside the domain: Re I(v, delta) <= 0");
    YPoint y;
    y.tau = -inner(v, d) / kTwoPiI;
    y.z.resize(static_cast<std::size_t>(l));
    for (int i = 1; i <= l; ++i) {
        const Weight e = s == Sharp::I ? Weight::epsilon(l, i) : epsilon_II(l, i);
        y.z[static_cast<std::size_t>(i - 1)] = inner(v, complexify(e)) / kTwoPiI;
    }
    const Weight l0 = s == Sharp::I ? Rational(1, 2) * Weight::lambda0_w(l) : lambda0_II(l);
    y.t = inner(v, complexify(l0)) / kTwoPiI;
    return y;
}

YPoint transition(const YPoint& y) {
    const int l = y.rank();
    YPoint out;
    out.tau = y.tau;
    out.z.resize(static_cast<std::size_t>(l));
    cplx sum = 0;
    for (int i = 0; i < l; ++i) {
        out.z[static_cast<std::size_t>(i)] = -y.z[static_cast<std::size_t>(l - 1 - i)] - y.tau / 2.0;
        sum += y.z[static_cast<std::size_t>(i)];
    }
    out.t = y.t + static_cast<double>(l) / 8.0 * y.tau + sum / 2.0;
    return out;
}

// phi = t_{(eps_1+...+eps_l)/2} o w_0^{A_l} o zeta.
Weight phi_involution(const Weight& w) {
    const int l = w.rank();
    Weight v(l);
    for (int i = 0; i < l; ++i) v.eps[static_cast<std::size_t>(l - 1 - i)] = -w.eps[static_cast<std::size_t>(i)];
    v.delta = w.delta;
    v.lambda0 = w.lambda0;
    Weight mu(l);
    for (auto& e : mu.eps) e = Rational(1, 2);
    return translate(mu, v);
}

CWeight phi_involution(const CWeight& w) {
    const int l = static_cast<int>(w.eps.size());
    CWeight v = cweight_zero(l);
    for (int i = 0; i < l; ++i) v.eps[static_cast<std::size_t>(l - 1 - i)] = -w.eps[static_cast<std::size_t>(i)];
    v.delta = w.delta;
    v.lambda0 = w.lambda0;
    CWeight mu = cweight_zero(l);
    for (auto& e : mu.eps) e = 0.5;
    return translate(mu, v);
}

std::vector<cplx> pr_coords(Sharp, const YPoint& y) {
    std::vector<cplx> c(y.z.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = kTwoPiI * y.z[i];
    return c;
}

CWeight pr(Sharp s, const YPoint& y) {
    const int l = y.rank();
    CWeight out = cweight_zero(l);
    const auto c = pr_coords(s, y);
    for (int i = 1; i <= l; ++i) {
        const Weight e = s == Sharp::I ? Weight::epsilon(l, i) : epsilon_II(l, i);
        axpy(out, c[static_cast<std::size_t>(i - 1)], complexify(e));
    }
    return out;
}

nlohmann::json to_json(const YPoint& y) {
    auto c = [](cplx x) { return nlohmann::json::array({x.real(), x.imag()}); };
    nlohmann::json z = nlohmann::json::array();
    for (auto x : y.z) z.push_back(c(x));
    return {{"tau", c(y.tau)}, {"z", z}, {"t", c(y.t)}};
}

}  // namespace kacmod
