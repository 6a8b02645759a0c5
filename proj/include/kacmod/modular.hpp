#pragma once

#include "kacmod/characters.hpp"
#include "kacmod/root_system.hpp"
#include "kacmod/weyl.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace kacmod {

using SL2 = std::array<std::array<long, 2>, 2>;
inline constexpr SL2 kS{{{0, -1}, {1, 0}}};
inline constexpr SL2 kT{{{1, 1}, {0, 1}}};

// g.(tau, z, t); the t-shift uses the bilinear square of pr^(sharp)(y) / (2 pi i),
// which is sum z_i^2 in either frame.
YPoint sl2_act(const SL2& g, const YPoint& y, Sharp s = Sharp::I);

struct DegeneratePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lattice sum for a finite vector a (sharp-coordinates) of level K, tail bound below tol.
cplx eval_theta_coords(const std::vector<double>& a, double K, bool twisted, const YPoint& y, double tol);
cplx eval_theta(const Weight& lambda, Sharp s, bool twisted, const YPoint& y, double tol);
// Number of lattice points used for the given truncation (for reproducibility metadata).
double theta_radius(double K, const YPoint& y, double tol, int rank);

// A_{lambda+rho} / A^psi_{lambda+rho} on Y in the sharp frame; lambda dominant.
cplx eval_anti_invariant(const RootSystemCtx& ctx, const Weight& lambda, Sharp s, bool twisted, const YPoint& y,
                         double tol);
// Ratio A_{Lambda+rho}/A_rho; throws DegeneratePoint if |A_rho| < threshold.
cplx eval_character(const RootSystemCtx& ctx, const Weight& Lambda, Sharp s, bool twisted, const YPoint& y, double tol,
                    double threshold = 1e-10);

enum class SKind { aI, aI_II, aII_I, aII };
SKind parse_skind(const std::string& s);
std::string to_string(SKind k);

// Raw entry of one of the four displays, for arbitrary weights lambda, mu of level k.
cplx s_entry(const RootSystemCtx& ctx, SKind kind, int k, const Weight& lambda, const Weight& mu);
// a^(I)(lambda, mu) summed over W_{f;m}^(I) with the s_{alpha_l} companion term.
cplx s_entry_aI_ker_psi(const RootSystemCtx& ctx, int k, const Weight& lambda, const Weight& mu);

struct SMatrix {
    SKind kind;
    int k;
    std::vector<DominantWeight> index;
    std::vector<std::vector<cplx>> entries;
};
// Rows lambda, columns mu. For the mixed kinds the row weight is precomposed with phi,
// i.e. aI_II holds a^(I),(II)(phi(lambda), mu) and aII_I holds a^(II),(I)(phi(lambda), mu).
SMatrix smatrix(const RootSystemCtx& ctx, SKind kind, int k);
nlohmann::json to_json(const SMatrix& m);

struct VerificationReport {
    std::string id;
    cplx lhs{0.0}, rhs{0.0};
    double abs_err = 0, rel_err = 0, tol = 0;
    bool pass = false;
    nlohmann::json metadata;
};
VerificationReport make_report(std::string id, cplx lhs, cplx rhs, double tol, nlohmann::json meta = {});
nlohmann::json to_json(const VerificationReport& r);

struct SampleOptions {
    double theta_tol = 1e-10;
    int series_depth = 12;  // depth for the formal-series cross-check, 0 disables it
    double series_tol = 1e-6;
};

// The four transformation laws, by the frame and twist of the source invariant.
// S maps plain-I to twisted-II, twisted-I to itself, plain-II to itself and twisted-II to plain-I.
enum class LawCase { PlainI, TwistedI, PlainII, TwistedII };
LawCase parse_law_case(const std::string& s);
std::string to_string(LawCase c);

VerificationReport verify_S(const RootSystemCtx& ctx, LawCase c, const std::vector<int>& labels, int k,
                            const YPoint& y, double tol, const SampleOptions& opt = {});
// lambda = 0 case with the closed-form constant.
VerificationReport verify_S_corollary(const RootSystemCtx& ctx, LawCase c, const YPoint& y, double tol,
                                      const SampleOptions& opt = {});
VerificationReport verify_T(const RootSystemCtx& ctx, LawCase c, const std::vector<int>& labels, int k,
                            const YPoint& y, double tol, const SampleOptions& opt = {}, int power = 1);
// Same laws for the normalized characters.
VerificationReport verify_prop_S(const RootSystemCtx& ctx, LawCase c, const std::vector<int>& labels, int k,
                                 const YPoint& y, double tol, const SampleOptions& opt = {});
VerificationReport verify_prop_T(const RootSystemCtx& ctx, LawCase c, const std::vector<int>& labels, int k,
                                 const YPoint& y, double tol, const SampleOptions& opt = {});

// Closure of character families under S and T by least squares.
enum class Family { I, II, PsiII, PsiI };
std::string to_string(Family f);

struct ClosureArrow {
    std::string generator;
    Family from, to;
    double residual = 0;
    bool pass = false;
};
struct ClosureReport {
    int rank = 0, k = 0, samples = 0, dim = 0;
    std::vector<ClosureArrow> arrows;
    int gram_rank = 0, expected_rank = 0;
    bool degenerate = false;
    bool pass = false;
    double condition = 0;
};
std::vector<YPoint> sample_points(int rank, int n, unsigned long long seed);
ClosureReport verify_sl2_closure(const RootSystemCtx& ctx, int k, const std::vector<YPoint>& samples, double tol,
                                 double theta_tol = 1e-12);
// The twisted type-I family on its own (S and T arrows).
ClosureReport verify_twisted_I_closure(const RootSystemCtx& ctx, int k, const std::vector<YPoint>& samples, double tol,
                                       double theta_tol = 1e-12);
// Draws n generic samples (at least 2 per unknown) and resamples when a point is
// degenerate or the fit is ill-conditioned.
ClosureReport verify_closure_sampled(const RootSystemCtx& ctx, int k, bool twisted_I, int n, unsigned long long seed,
                                     double tol, double theta_tol = 1e-12, int attempts = 5);
nlohmann::json to_json(const ClosureReport& r);

VerificationReport poisson_check(int l, const std::vector<cplx>& a, cplx tau, double tol);
struct SinProduct {
    int N;
    double product, expected, rel_err;
};
SinProduct sin_product(int N);

// Default sample points, generic for small rank.
YPoint default_point(int rank);
std::vector<YPoint> acceptance_points(int rank);

}  // namespace kacmod
