#pragma once

#include "kacmod/lattice_forms.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace kacmod {

// Signed permutation: (u v)_{perm[i]} = signs[i] * v_i on the coordinates of the frame it acts in.
struct FiniteWeylElement {
    std::vector<int> perm;
    std::vector<int> signs;

    int rank() const { return static_cast<int>(perm.size()); }
    static FiniteWeylElement identity(int l);
    static FiniteWeylElement transposition(int l, int i);  // swaps i, i+1 (1-based)
    static FiniteWeylElement sign_flip(int l, int i);      // negates coordinate i (1-based)

    template <class T>
    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(perm[i])] = T(signs[i]) * v[i];
        return out;
    }
    FiniteWeylElement operator*(const FiniteWeylElement& o) const;  // (this o o)
    FiniteWeylElement inverse() const;
    friend bool operator==(const FiniteWeylElement&, const FiniteWeylElement&) = default;
    bool operator<(const FiniteWeylElement& o) const;
};

// u o t_gamma with gamma in the type-I translation lattice.
struct AffineWeylElement {
    FiniteWeylElement finite;
    std::vector<std::int64_t> translation;

    int rank() const { return finite.rank(); }
    static AffineWeylElement identity(int l);
    static AffineWeylElement translation_by(const std::vector<std::int64_t>& g);
    AffineWeylElement operator*(const AffineWeylElement& o) const;
    AffineWeylElement inverse() const;
    friend bool operator==(const AffineWeylElement&, const AffineWeylElement&) = default;
};

int det_sign(const FiniteWeylElement& u);
int epsilon(const FiniteWeylElement& u);
int epsilon(const AffineWeylElement& w);
int psi(const FiniteWeylElement& u);  // as an element of W_f^(I)
int psi(const AffineWeylElement& w);

// Finite element acting in the sharp frame (fixes delta and Lambda_0^(sharp)).
Weight act(const FiniteWeylElement& u, const Weight& v, Sharp s = Sharp::I);
Weight act(const AffineWeylElement& w, const Weight& v);

// Simple reflection s_{alpha_i^(I)} in semidirect coordinates, i in [0, l].
AffineWeylElement simple_reflection(int l, int i);
// Reflection in a real root beta: v -> v - 2 I(beta,v)/I(beta,beta) beta.
Weight reflect_in(const Weight& beta, const Weight& v);

// Recover (u, gamma) from an isometry of the weight space lying in W.
// Throws if the map is not of that shape.
AffineWeylElement from_linear_map(int l, const std::function<Weight(const Weight&)>& f);
// An element of W_f^(II) rewritten in type-I semidirect coordinates.
AffineWeylElement to_type_I(const FiniteWeylElement& u, Sharp s);

// All 2^l l! signed permutations, in a fixed order. Throws above max_rank.
std::vector<FiniteWeylElement> enumerate_finite(int l, int max_rank = 6);
// Signed permutations with an even number of sign changes.
std::vector<FiniteWeylElement> enumerate_ker_psi_finite(int l, int max_rank = 6);

}  // namespace kacmod
