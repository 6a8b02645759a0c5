#pragma once

#include "kacmod/lattice_forms.hpp"
#include "kacmod/root_system.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace kacmod {

// Packed height vector: total height in bits 56..63, n_i in bits 8*(6-i).
// Addition of keys is addition of height vectors as long as the total stays <= 255,
// and the integer order is a linear extension of the componentwise order.
using HKey = std::uint64_t;
constexpr int kMaxHeight = 255;

HKey make_key(const std::vector<int>& n);
std::vector<int> unpack_key(HKey k, int rank);
inline int key_height(HKey k) { return static_cast<int>(k >> 56); }

// q-depth D to a height budget: one delta costs 2l+1.
int default_height(int rank, int depth);

// Truncated element of the group algebra: sum c_n e^{apex - sum n_i alpha_i^(I)}.
class QSeries {
public:
    using Term = std::pair<HKey, std::int64_t>;

    QSeries() = default;
    QSeries(Weight apex, int max_height);
    static QSeries monomial(const Weight& apex, int max_height, std::int64_t c = 1);

    int rank() const { return apex_.rank(); }
    int max_height() const { return H_; }
    const Weight& apex() const { return apex_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool clipped() const { return clipped_; }
    std::size_t size() const { return terms_.size(); }

    std::int64_t coeff(HKey k) const;
    std::int64_t coeff_of(const Weight& w) const;  // 0 if w is not of the form apex - n.alpha
    Weight term_weight(HKey k) const;
    // Key of apex - w when it lies in the cone; nullopt otherwise.
    std::optional<HKey> key_of(const Weight& w) const;

    // Builders. add_term accumulates; finish() sorts and drops zeros.
    void add_term(HKey k, std::int64_t c);
    void finish();
    void mark_clipped() { clipped_ = true; }

    QSeries shifted_apex(const Weight& delta_shift) const;  // same terms, apex + shift
    QSeries truncated(int max_height) const;
    QSeries negated() const;

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.apex_ == b.apex_ && a.terms_ == b.terms_;
    }

private:
    Weight apex_;
    int H_ = 0;
    std::vector<Term> terms_;
    std::vector<Term> pending_;
    bool clipped_ = false;

    friend QSeries add(const QSeries&, const QSeries&);
    friend QSeries mul(const QSeries&, const QSeries&);
    friend QSeries mul_binomial(const QSeries&, const Weight&, std::int64_t, int);
    friend QSeries div_binomial(const QSeries&, const Weight&, int);
    friend QSeries divide(const QSeries&, const QSeries&);
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
// a * (1 + c e^{-beta})^power, beta a nonzero element of the positive root cone.
QSeries mul_binomial(const QSeries& a, const Weight& beta, std::int64_t c, int power = 1);
// a * (1 - e^{-beta})^{-power}.
QSeries div_binomial(const QSeries& a, const Weight& beta, int power = 1);
// n / d with d's apex coefficient a unit; result apex = apex(n) - apex(d).
QSeries divide(const QSeries& n, const QSeries& d);
QSeries invert_unit(const QSeries& a);

struct SeriesDiff {
    bool equal = true;
    std::string reason;
    std::optional<Rational> first_q_degree;
    std::optional<Weight> first_weight;
    std::int64_t lhs = 0, rhs = 0;
};
// Termwise comparison up to height min(H_a, H_b).
SeriesDiff compare(const QSeries& a, const QSeries& b);

// q-degree of a term is minus its delta coefficient (q = e^{-delta}).
struct DeltaSlice {
    Rational q_degree;
    std::vector<std::pair<Weight, std::int64_t>> terms;
};
std::vector<DeltaSlice> delta_expansion(const QSeries& a);
nlohmann::json to_json(const std::vector<DeltaSlice>& slices);

// Keep only the terms whose q-degree is at most apex q-degree + depth.
QSeries restrict_depth(const QSeries& a, int depth);

// Sum c e^{w}(v) with v the preimage of y in the sharp frame.
cplx evaluate(const QSeries& a, const YPoint& y, Sharp s);

}  // namespace kacmod
