#pragma once

#include "kacmod/lattice_forms.hpp"

#include <random>

namespace testutil {

inline kacmod::Rational rnd_rat(std::mt19937_64& g) {
    std::uniform_int_distribution<int> n(-30, 30), d(1, 9);
    return kacmod::Rational(n(g), d(g));
}

inline kacmod::Weight rnd_weight(std::mt19937_64& g, int l) {
    kacmod::Weight w(l);
    for (auto& e : w.eps) e = rnd_rat(g);
    w.delta = rnd_rat(g);
    w.lambda0 = rnd_rat(g);
    return w;
}

}  // namespace testutil
