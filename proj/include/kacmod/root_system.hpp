#pragma once

#include "kacmod/lattice_forms.hpp"

#include <optional>
#include <vector>

namespace kacmod {

constexpr int kMaxRank = 6;

enum class RootLength { Short, Middle, Long, Imaginary };
enum class Parity { Even, Odd };
std::string to_string(RootLength r);

struct RootInfo {
    Weight weight;
    RootLength length_class;
    Parity parity;
    int multiplicity;
};

struct DominantWeight {
    std::vector<int> labels;  // type-I Dynkin labels (m_0, ..., m_l)
    Weight weight;            // canonical representative, delta = 0
};

struct SpecialIndex {
    int index;
    int p;          // delta - a_i alpha_i = p * root
    Weight root;
};

class RootSystemCtx {
public:
    explicit RootSystemCtx(int rank);

    int rank() const { return l_; }
    const std::vector<Weight>& simple_roots(Sharp s) const { return s == Sharp::I ? simple_I_ : simple_II_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<int>& colabels() const { return colabels_; }
    const std::vector<Weight>& fund_weights(Sharp s) const { return s == Sharp::I ? fund_I_ : fund_II_; }
    const Weight& rho() const { return rho_; }
    const Weight& rho_f(Sharp s) const { return s == Sharp::I ? rho_f_I_ : rho_f_II_; }
    // rho_f in its own frame: (2(l-i)+1)/2 for I and l-i+1 for II.
    std::vector<Rational> rho_f_coords(Sharp s) const { return finite_coords(rho_f(s), s); }

    // <alpha_i^vee, w> for the type-I numbering.
    Rational coroot_pairing(int i, const Weight& w) const;
    // Type-I Cartan matrix, a_{ij} = <alpha_i^vee, alpha_j>.
    std::vector<std::vector<int>> cartan_matrix(Sharp s) const;

    // Coefficients n_i of beta = sum n_i alpha_i^(I); beta must have lambda0 = 0.
    std::vector<Rational> height_vector(const Weight& beta) const;
    Rational height(const Weight& beta) const;

    std::optional<RootInfo> classify(const Weight& w) const;
    bool is_positive_root(const Weight& w) const;
    // Positive roots of total height <= max_height, sorted by height then weight.
    std::vector<RootInfo> positive_roots(int max_height) const;

    std::vector<SpecialIndex> special_indices() const;
    // Brute-force test of the defining property, p up to max_p.
    std::optional<SpecialIndex> check_special(int i, int max_p) const;

    std::vector<DominantWeight> enumerate_dominant(int k) const;
    Weight weight_from_labels(const std::vector<int>& m) const;
    bool is_dominant(const Weight& w) const;

    Weight reflect(int i, const Weight& w) const;  // s_{alpha_i^(I)}

private:
    int l_;
    std::vector<Weight> simple_I_, simple_II_, fund_I_, fund_II_;
    std::vector<int> labels_, colabels_;
    Weight rho_, rho_f_I_, rho_f_II_;
};

// Coefficients n_i of beta = sum n_i alpha_i^(I); beta must have lambda0 = 0.
std::vector<Rational> root_height_vector(const Weight& beta);
// sum n_i alpha_i^(I).
Weight root_lattice_element(int l, const std::vector<int>& n);

// Point (tau, z, t) of the domain H x C^l x C.
struct YPoint {
    cplx tau;
    std::vector<cplx> z;
    cplx t;
    int rank() const { return static_cast<int>(z.size()); }
};

CWeight point_to_weight(Sharp s, const YPoint& y);
// Throws std::domain_error when Re I(v, delta) <= 0.
YPoint weight_to_point(Sharp s, const CWeight& v);
YPoint transition(const YPoint& y);

Weight phi_involution(const Weight& w);
CWeight phi_involution(const CWeight& w);

// pi^(sharp) of the preimage of y, returned in type-I storage.
CWeight pr(Sharp s, const YPoint& y);
// Coefficients of pr^(sharp)(y) in the sharp-basis (2 pi i z).
std::vector<cplx> pr_coords(Sharp s, const YPoint& y);

nlohmann::json to_json(const YPoint& y);

}  // namespace kacmod
