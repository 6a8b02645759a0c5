#include "kacmod/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kacmod {

FiniteWeylElement FiniteWeylElement::identity(int l) {
    FiniteWeylElement u;
    u.perm.resize(static_cast<std::size_t>(l));
    std::iota(u.perm.begin(), u.perm.end(), 0);
    u.signs.assign(static_cast<std::size_t>(l), 1);
    return u;
}

FiniteWeylElement FiniteWeylElement::transposition(int l, int i) {
    auto u = identity(l);
    std::swap(u.perm[static_cast<std::size_t>(i - 1)], u.perm[static_cast<std::size_t>(i)]);
    return u;
}

FiniteWeylElement FiniteWeylElement::sign_flip(int l, int i) {
    auto u = identity(l);
    u.signs[static_cast<std::size_t>(i - 1)] = -1;
    return u;
}

FiniteWeylElement FiniteWeylElement::operator*(const FiniteWeylElement& o) const {
    if (rank() != o.rank()) throw std::invalid_argument("rank mismatch");
    FiniteWeylElement c;
    c.perm.resize(perm.size());
    c.signs.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        const auto j = static_cast<std::size_t>(o.perm[i]);
        c.perm[i] = perm[j];
        c.signs[i] = signs[j] * o.signs[i];
    }
    return c;
}

FiniteWeylElement FiniteWeylElement::inverse() const {
    FiniteWeylElement c;
    c.perm.resize(perm.size());
    c.signs.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        const auto j = static_cast<std::size_t>(perm[i]);
        c.perm[j] = static_cast<int>(i);
        c.signs[j] = signs[i];
    }
    return c;
}

bool FiniteWeylElement::operator<(const FiniteWeylElement& o) const {
    if (perm != o.perm) return perm < o.perm;
    return signs > o.signs;
}

AffineWeylElement AffineWeylElement::identity(int l) {
    return {FiniteWeylElement::identity(l), std::vector<std::int64_t>(static_cast<std::size_t>(l), 0)};
}

AffineWeylElement AffineWeylElement::translation_by(const std::vector<std::int64_t>& g) {
    return {FiniteWeylElement::identity(static_cast<int>(g.size())), g};
}

// (u, g)(u', g') = (u u', u'^{-1} g + g')
AffineWeylElement AffineWeylElement::operator*(const AffineWeylElement& o) const {
    AffineWeylElement c;
    c.finite = finite * o.finite;
    c.translation = o.finite.inverse().apply(translation);
    for (std::size_t i = 0; i < c.translation.size(); ++i) c.translation[i] += o.translation[i];
    return c;
}

AffineWeylElement AffineWeylElement::inverse() const {
    AffineWeylElement c;
    c.finite = finite.inverse();
    c.translation = finite.apply(translation);
    for (auto& x : c.translation) x = -x;
    return c;
}

int det_sign(const FiniteWeylElement& u) {
    int inv = 0;
    for (std::size_t i = 0; i < u.perm.size(); ++i)
        for (std::size_t j = i + 1; j < u.perm.size(); ++j)
            if (u.perm[i] > u.perm[j]) ++inv;
    int s = inv % 2 ? -1 : 1;
    for (int x : u.signs) s *= x;
    return s;
}

int epsilon(const FiniteWeylElement& u) { return det_sign(u); }
int epsilon(const AffineWeylElement& w) { return det_sign(w.finite); }

int psi(const FiniteWeylElement& u) {
    int s = 1;
    for (int x : u.signs) s *= x;
    return s;
}

int psi(const AffineWeylElement& w) {
    std::int64_t sum = 0;
    for (auto g : w.translation) sum += g;
    return psi(w.finite) * (sum % 2 ? -1 : 1);
}

Weight act(const FiniteWeylElement& u, const Weight& v, Sharp s) {
    if (u.rank() != v.rank()) throw std::invalid_argument("rank mismatch");
    if (s == Sharp::I) return Weight(u.apply(v.eps), v.delta, v.lambda0);
    TypeIICoords c = to_type_II_coords(v);
    c.eps = u.apply(c.eps);
    return from_type_II_coords(c);
}

Weight act(const AffineWeylElement& w, const Weight& v) {
    if (w.rank() != v.rank()) throw std::invalid_argument("rank mismatch");
    Weight mu(v.rank());
    for (std::size_t i = 0; i < mu.eps.size(); ++i) mu.eps[i] = Rational(w.translation[i]);
    return act(w.finite, translate(mu, v));
}

AffineWeylElement simple_reflection(int l, int i) {
    if (i == 0) {
        AffineWeylElement w{FiniteWeylElement::sign_flip(l, 1), std::vector<std::int64_t>(static_cast<std::size_t>(l), 0)};
        w.translation[0] = -1;
        return w;
    }
    if (i < l) return {FiniteWeylElement::transposition(l, i), std::vector<std::int64_t>(static_cast<std::size_t>(l), 0)};
    if (i == l) return {FiniteWeylElement::sign_flip(l, l), std::vector<std::int64_t>(static_cast<std::size_t>(l), 0)};
    throw std::out_of_range("simple reflection index");
}

Weight reflect_in(const Weight& beta, const Weight& v) {
    return v - (2 * inner(beta, v) / norm_sq(beta)) * beta;
}

AffineWeylElement from_linear_map(int l, const std::function<Weight(const Weight&)>& f) {
    FiniteWeylElement u = FiniteWeylElement::identity(l);
    std::vector<bool> used(static_cast<std::size_t>(l), false);
    for (int i = 1; i <= l; ++i) {
        Weight img = f(Weight::epsilon(l, i));
        if (img.lambda0 != 0) throw std::invalid_argument("not in W: level changed");
        int found = -1;
        for (int j = 0; j < l; ++j) {
            const Rational& c = img.eps[static_cast<std::size_t>(j)];
            if (c == 0) continue;
            if ((c != 1 && c != -1) || found >= 0) throw std::invalid_argument("not a signed permutation");
            found = j;
        }
        if (found < 0 || used[static_cast<std::size_t>(found)]) throw std::invalid_argument("not a signed permutation");
        used[static_cast<std::size_t>(found)] = true;
        u.perm[static_cast<std::size_t>(i - 1)] = found;
        u.signs[static_cast<std::size_t>(i - 1)] = img.eps[static_cast<std::size_t>(found)] > 0 ? 1 : -1;
    }
    // f(Lambda_0) has finite part 2 u(gamma).
    const Weight l0 = f(Weight::lambda0_w(l));
    std::vector<Rational> g = u.inverse().apply(l0.eps);
    AffineWeylElement w{u, std::vector<std::int64_t>(static_cast<std::size_t>(l))};
    for (int i = 0; i < l; ++i) {
        Rational gi = g[static_cast<std::size_t>(i)] / 2;
        if (!is_integer(gi)) throw std::invalid_argument("translation not in the lattice");
        w.translation[static_cast<std::size_t>(i)] = to_int64(gi);
    }
    // The reconstruction has to reproduce f on a basis.
    auto check = [&](const Weight& b) {
        if (act(w, b) != f(b)) throw std::invalid_argument("linear map is not an affine Weyl element");
    };
    for (int i = 1; i <= l; ++i) check(Weight::epsilon(l, i));
    check(Weight::delta_w(l));
    check(Weight::lambda0_w(l));
    return w;
}

AffineWeylElement to_type_I(const FiniteWeylElement& u, Sharp s) {
    const int l = u.rank();
    if (s == Sharp::I) return {u, std::vector<std::int64_t>(static_cast<std::size_t>(l), 0)};
    return from_linear_map(l, [&](const Weight& v) { return act(u, v, Sharp::II); });
}

std::vector<FiniteWeylElement> enumerate_finite(int l, int max_rank) {
    if (l < 1) throw std::invalid_argument("rank must be >= 1");
    if (l > max_rank) throw std::invalid_argument("rank exceeds the Weyl enumeration cap");
    std::vector<FiniteWeylElement> out;
    std::vector<int> p(static_cast<std::size_t>(l));
    std::iota(p.begin(), p.end(), 0);
    do {
        for (int mask = 0; mask < (1 << l); ++mask) {
            FiniteWeylElement u{p, std::vector<int>(static_cast<std::size_t>(l), 1)};
            for (int i = 0; i < l; ++i)
                if (mask & (1 << i)) u.signs[static_cast<std::size_t>(i)] = -1;
            out.push_back(std::move(u));
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<FiniteWeylElement> enumerate_ker_psi_finite(int l, int max_rank) {
    std::vector<FiniteWeylElement> out;
    for (auto& u : enumerate_finite(l, max_rank))
        if (psi(u) == 1) out.push_back(u);
    return out;
}

}  // namespace kacmod
