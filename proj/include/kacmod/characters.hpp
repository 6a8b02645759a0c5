#pragma once

#include "kacmod/qseries.hpp"
#include "kacmod/root_system.hpp"
#include "kacmod/weyl.hpp"

#include <string>

namespace kacmod {

// Representative of w mod C delta with I(w, w) = 0 (level must be nonzero).
Weight isotropic_rep(const Weight& w);
// Affine-dominant W-conjugate of w (level must be positive).
Weight dominant_conjugate(const RootSystemCtx& ctx, const Weight& w);

// Formal theta series of a level-k weight, every term of height <= H relative to
// the apex isotropic_rep(dominant_conjugate(lambda)).
QSeries theta_formal(const RootSystemCtx& ctx, const Weight& lambda, Sharp s, bool twisted, int H);

enum class PsiRewriting { Full, KerPsi };

// A_{lambda+rho} (or the twisted A^psi), lambda dominant of level k >= 0.
QSeries anti_invariant(const RootSystemCtx& ctx, const Weight& lambda, Sharp s, bool twisted, int H,
                       PsiRewriting rewriting = PsiRewriting::Full);

// Product side of the (twisted) denominator identity. skip_factor >= 0 drops that
// factor from the enumeration, for negative controls.
QSeries denominator_product(const RootSystemCtx& ctx, bool twisted, int H, int skip_factor = -1);

QSeries verma_character(const RootSystemCtx& ctx, const Weight& Lambda, int H);

Rational conformal_anomaly(const RootSystemCtx& ctx, const Weight& Lambda);

// Height budget under which all weights of L(Lambda) at q-depth <= D appear.
int character_height(const RootSystemCtx& ctx, const Weight& Lambda, int depth);

struct CharacterRequest {
    Weight lambda;  // dominant, even level
    Sharp sharp = Sharp::I;
    bool twisted = false;
    int depth = 8;
    int height = -1;  // -1: character_height(lambda, depth)
};

// chi_Lambda or chi^psi_Lambda; apex Lambda - c_Lambda delta, cut at the requested depth.
QSeries character(const RootSystemCtx& ctx, const CharacterRequest& req);

struct DenominatorReport {
    int rank = 0;
    int depth = 0;
    int height = 0;
    bool twisted = false;
    bool pass = false;
    std::size_t terms = 0;
    SeriesDiff diff;
};
DenominatorReport check_denominator_identity(int l, int depth, bool twisted, int skip_factor = -1);
nlohmann::json to_json(const DenominatorReport& r);

}  // namespace kacmod
