#include "kacmod/lattice_forms.hpp"

#include <stdexcept>

namespace kacmod {

std::string to_string(Sharp s) { return s == Sharp::I ? "I" : "II"; }

Sharp parse_sharp(const std::string& s) {
    if (s == "I" || s == "1") return Sharp::I;
    if (s == "II" || s == "2") return Sharp::II;
    throw std::invalid_argument("sharp must be I or II");
}

Weight Weight::epsilon(int l, int i) {
    if (i < 1 || i > l) throw std::out_of_range("epsilon index");
    Weight w(l);
    w.eps[static_cast<std::size_t>(i - 1)] = 1;
    return w;
}

Weight Weight::delta_w(int l) {
    Weight w(l);
    w.delta = 1;
    return w;
}

Weight Weight::lambda0_w(int l) {
    Weight w(l);
    w.lambda0 = 1;
    return w;
}

static void check_rank(const Weight& a, const Weight& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("rank mismatch");
}

Weight& Weight::operator+=(const Weight& o) {
    check_rank(*this, o);
    for (std::size_t i = 0; i < eps.size(); ++i) eps[i] += o.eps[i];
    delta += o.delta;
    lambda0 += o.lambda0;
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    check_rank(*this, o);
    for (std::size_t i = 0; i < eps.size(); ++i) eps[i] -= o.eps[i];
    delta -= o.delta;
    lambda0 -= o.lambda0;
    return *this;
}

Weight& Weight::operator*=(const Rational& c) {
    for (auto& e : eps) e *= c;
    delta *= c;
    lambda0 *= c;
    return *this;
}

bool Weight::operator<(const Weight& o) const {
    if (eps != o.eps) return eps < o.eps;
    if (delta != o.delta) return delta < o.delta;
    return lambda0 < o.lambda0;
}

Weight canonical_class(Weight w) {
    w.delta = 0;
    return w;
}

Rational inner(const Weight& a, const Weight& b) {
    check_rank(a, b);
    Rational s = 0;
    for (std::size_t i = 0; i < a.eps.size(); ++i) s += a.eps[i] * b.eps[i];
    s += 2 * (a.delta * b.lambda0 + a.lambda0 * b.delta);
    return s;
}

Rational norm_sq(const Weight& w) { return inner(w, w); }

Rational level(const Weight& w) { return 2 * w.lambda0; }

// eps_i = -eps^(II)_{l+1-i} + delta/2,  Lambda0^(I) = 2 Lambda0^(II) - sum eps + (l/4) delta.
TypeIICoords to_type_II_coords(const Weight& w) {
    const int l = w.rank();
    const Rational& m = w.lambda0;
    TypeIICoords c;
    c.eps.assign(static_cast<std::size_t>(l), Rational(0));
    Rational sum_f = 0;
    for (int i = 0; i < l; ++i) {
        Rational f = m - w.eps[static_cast<std::size_t>(i)];
        c.eps[static_cast<std::size_t>(l - 1 - i)] = f;
        sum_f += f;
    }
    c.lambda0 = 2 * m;
    c.delta = w.delta - sum_f / 2 + Rational(l, 4) * m;
    return c;
}

Weight from_type_II_coords(const TypeIICoords& c) {
    const int l = static_cast<int>(c.eps.size());
    Weight w(l);
    Rational m = c.lambda0 / 2;
    Rational sum_f = 0;
    for (int i = 0; i < l; ++i) {
        const Rational& f = c.eps[static_cast<std::size_t>(l - 1 - i)];
        w.eps[static_cast<std::size_t>(i)] = m - f;
        sum_f += f;
    }
    w.lambda0 = m;
    w.delta = c.delta + sum_f / 2 - Rational(l, 4) * m;
    return w;
}

Weight epsilon_II(int l, int i) {
    TypeIICoords c;
    c.eps.assign(static_cast<std::size_t>(l), Rational(0));
    c.eps[static_cast<std::size_t>(i - 1)] = 1;
    return from_type_II_coords(c);
}

Weight lambda0_II(int l) {
    TypeIICoords c;
    c.eps.assign(static_cast<std::size_t>(l), Rational(0));
    c.lambda0 = 1;
    return from_type_II_coords(c);
}

std::vector<Rational> finite_coords(const Weight& w, Sharp s) {
    if (s == Sharp::I) return w.eps;
    return to_type_II_coords(w).eps;
}

Weight finite_weight(const std::vector<Rational>& coeffs, Sharp s) {
    if (s == Sharp::I) return Weight(coeffs, 0, 0);
    TypeIICoords c;
    c.eps = coeffs;
    return from_type_II_coords(c);
}

Weight project_finite(const Weight& w, Sharp s) { return finite_weight(finite_coords(w, s), s); }

nlohmann::json to_json(const Weight& w) {
    nlohmann::json e = nlohmann::json::array();
    for (const auto& x : w.eps) e.push_back(to_string(x));
    return {{"eps", e}, {"delta", to_string(w.delta)}, {"lambda0", to_string(w.lambda0)}};
}

Weight weight_from_json(const nlohmann::json& j) {
    Weight w;
    for (const auto& x : j.at("eps")) w.eps.push_back(parse_rational(x.get<std::string>()));
    w.delta = parse_rational(j.at("delta").get<std::string>());
    w.lambda0 = parse_rational(j.at("lambda0").get<std::string>());
    return w;
}

CWeight complexify(const Weight& w) {
    CWeight c;
    for (const auto& e : w.eps) c.eps.emplace_back(to_double(e), 0.0);
    c.delta = to_double(w.delta);
    c.lambda0 = to_double(w.lambda0);
    return c;
}

cplx inner(const CWeight& a, const CWeight& b) {
    cplx s = 0;
    for (std::size_t i = 0; i < a.eps.size(); ++i) s += a.eps[i] * b.eps[i];
    return s + 2.0 * (a.delta * b.lambda0 + a.lambda0 * b.delta);
}

}  // namespace kacmod

namespace kacmod {

Weight translate(const Weight& mu, const Weight& v) {
    const Weight d = Weight::delta_w(v.rank());
    const Rational k = inner(v, d);
    Weight out = v + k * mu;
    out.delta -= inner(v, mu) + norm_sq(mu) * k / 2;
    return out;
}

CWeight translate(const CWeight& mu, const CWeight& v) {
    CWeight d;
    d.eps.assign(v.eps.size(), 0.0);
    d.delta = 1.0;
    const cplx k = inner(v, d);
    CWeight out = v;
    for (std::size_t i = 0; i < v.eps.size(); ++i) out.eps[i] += k * mu.eps[i];
    out.delta += k * mu.delta;
    out.lambda0 += k * mu.lambda0;
    out.delta -= inner(v, mu) + inner(mu, mu) * k / 2.0;
    return out;
}

}  // namespace kacmod
