#pragma once

#include "kacmod/rational.hpp"

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

namespace kacmod {

enum class Sharp { I, II };
std::string to_string(Sharp s);
Sharp parse_sharp(const std::string& s);

// Element of the ambient space in type-I coordinates:
// sum eps[i] * eps_{i+1} + delta * delta + lambda0 * Lambda_0^(I).
struct Weight {
    std::vector<Rational> eps;
    Rational delta{0};
    Rational lambda0{0};

    Weight() = default;
    explicit Weight(int rank) : eps(static_cast<std::size_t>(rank)) {}
    Weight(std::vector<Rational> e, Rational d, Rational m)
        : eps(std::move(e)), delta(std::move(d)), lambda0(std::move(m)) {}

    int rank() const { return static_cast<int>(eps.size()); }

    static Weight zero(int l) { return Weight(l); }
    static Weight epsilon(int l, int i);  // i is 1-based
    static Weight delta_w(int l);
    static Weight lambda0_w(int l);

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    Weight& operator*=(const Rational& c);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(const Rational& c, Weight a) { return a *= c; }
    Weight operator-() const { return Rational(-1) * (*this); }
    friend bool operator==(const Weight& a, const Weight& b) = default;
    bool operator<(const Weight& o) const;  // lexicographic (eps, delta, lambda0)
};

// Same weight with delta coefficient 0.
Weight canonical_class(Weight w);

Rational inner(const Weight& a, const Weight& b);
Rational norm_sq(const Weight& w);
Rational level(const Weight& w);

// Coordinates in the type-II basis (eps_i^(II), delta, Lambda_0^(II)).
struct TypeIICoords {
    std::vector<Rational> eps;
    Rational delta{0};
    Rational lambda0{0};
    friend bool operator==(const TypeIICoords&, const TypeIICoords&) = default;
};

TypeIICoords to_type_II_coords(const Weight& w);
Weight from_type_II_coords(const TypeIICoords& c);

// Basis vectors of the type-II frame written in type-I coordinates.
Weight epsilon_II(int l, int i);  // 1-based
Weight lambda0_II(int l);

// Finite coefficients of w in the sharp-basis.
std::vector<Rational> finite_coords(const Weight& w, Sharp s);
// pi^(sharp)(w) as a Weight (type-I storage).
Weight project_finite(const Weight& w, Sharp s);
// Inverse of finite_coords for a finite vector.
Weight finite_weight(const std::vector<Rational>& coeffs, Sharp s);

nlohmann::json to_json(const Weight& w);
Weight weight_from_json(const nlohmann::json& j);

// Complexified weights for the analytic layer, type-I coordinates.
using cplx = std::complex<double>;
struct CWeight {
    std::vector<cplx> eps;
    cplx delta{0.0};
    cplx lambda0{0.0};
};
CWeight complexify(const Weight& w);
cplx inner(const CWeight& a, const CWeight& b);

}  // namespace kacmod

namespace kacmod {

// t_mu(v) = v + I(v,delta) mu - (I(v,mu) + |mu|^2 I(v,delta) / 2) delta.
Weight translate(const Weight& mu, const Weight& v);
CWeight translate(const CWeight& mu, const CWeight& v);

}  // namespace kacmod
