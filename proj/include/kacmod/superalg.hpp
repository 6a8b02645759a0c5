#pragma once

#include "kacmod/characters.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kacmod {

enum class OspGen { E, H, F, e, f };
OspGen parse_osp_gen(const std::string& s);
std::string to_string(OspGen g);

using OspVector = std::vector<std::pair<int, Rational>>;  // sparse combination of w_i

// Action of a generator on w_i = f^i v / i! in the Verma module M(lambda).
OspVector osp_action(OspGen g, int i, const Rational& lambda_H);
OspVector osp_apply(OspGen g, const OspVector& v, const Rational& lambda_H);

// Dense operator on span{w_0..w_n} (columns are images; components beyond n are dropped).
std::vector<std::vector<Rational>> osp_matrix(OspGen g, int n, const Rational& lambda_H);

struct BracketReport {
    bool pass = true;
    std::vector<std::string> failures;
};
// Super-bracket relations checked on w_0..w_imax.
BracketReport osp_bracket_check(const Rational& lambda_H, int imax);

// Smallest i >= 1 with e.w_i = 0 (a singular vector), searched up to imax.
std::optional<int> osp_singular_index(const Rational& lambda_H, int imax);
bool osp_verma_reducible(const Rational& lambda_H, int imax);
int osp_irreducible_dim(int N);

bool integrable(const RootSystemCtx& ctx, const Weight& Lambda);

// Parity from the coefficient of the odd simple root alpha_l.
Parity super_parity(const Weight& root);

struct SuperRoot {
    Weight weight;
    Parity parity;
    int multiplicity;
};
// Positive roots of the non-reduced datum (doubles of odd roots included), height <= H.
std::vector<SuperRoot> super_positive_roots(const RootSystemCtx& ctx, int H);

// e^rho prod_even (1 - e^{-a})^mult / prod_odd (1 - e^{-a})^mult, apex rho.
QSeries super_denominator(const RootSystemCtx& ctx, int H);
// sum_w eps(w) psi(w) e^{w(Lambda+rho)} by walking the orbit down from Lambda+rho.
QSeries super_numerator(const RootSystemCtx& ctx, const Weight& Lambda, int H);
// sch L(Lambda), apex Lambda, cut at depth.
QSeries super_character(const RootSystemCtx& ctx, const Weight& Lambda, int depth, int H = -1);

struct SuperReport {
    std::string check;
    int rank = 0, level = 0, depth = 0, height = 0;
    std::vector<int> labels;
    bool pass = false;
    std::string detail;
};
SuperReport check_super_denominator(int l, int depth);
SuperReport check_super_character(int l, const std::vector<int>& labels, int depth);
nlohmann::json to_json(const SuperReport& r);

}  // namespace kacmod
