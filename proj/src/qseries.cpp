#include "kacmod/qseries.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace kacmod {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
    return r;
}

int component_shift(int i) { return 8 * (6 - i); }

// Key of a nonzero element of the positive cone.
HKey cone_key(const Weight& beta) {
    if (beta.lambda0 != 0) throw std::invalid_argument("binomial factor must have level 0");
    std::vector<int> n;
    for (const auto& x : root_height_vector(beta)) {
        if (!is_integer(x) || x < 0) throw std::invalid_argument("binomial factor outside the positive cone");
        if (x > kMaxHeight) throw std::out_of_range("height budget exceeded");
        n.push_back(static_cast<int>(to_int64(x)));
    }
    HKey k = make_key(n);
    if (k == 0) throw std::invalid_argument("binomial factor must be nonzero");
    return k;
}

void check_compatible(const QSeries& a, const QSeries& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("rank mismatch");
    if (a.max_height() != b.max_height()) throw std::invalid_argument("truncation height mismatch");
}

}  // namespace

HKey make_key(const std::vector<int>& n) {
    if (n.size() > 7) throw std::out_of_range("rank too large for packed keys");
    int h = 0;
    HKey k = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < 0 || n[i] > kMaxHeight) throw std::out_of_range("height component out of range");
        h += n[i];
        k |= static_cast<HKey>(n[i]) << component_shift(static_cast<int>(i));
    }
    if (h > kMaxHeight) throw std::out_of_range("total height out of range");
    return k | (static_cast<HKey>(h) << 56);
}

std::vector<int> unpack_key(HKey k, int rank) {
    std::vector<int> n(static_cast<std::size_t>(rank + 1));
    for (int i = 0; i <= rank; ++i) n[static_cast<std::size_t>(i)] = static_cast<int>((k >> component_shift(i)) & 0xff);
    return n;
}

int default_height(int rank, int depth) {
    const int h = depth * (1 + 2 * rank) + 2 * rank;
    if (h > kMaxHeight) throw std::out_of_range("requested depth exceeds the height budget");
    return h;
}

QSeries::QSeries(Weight apex, int max_height) : apex_(std::move(apex)), H_(max_height) {
    if (max_height < 0 || max_height > kMaxHeight) throw std::out_of_range("truncation height out of range");
    if (apex_.rank() + 1 > 7) throw std::out_of_range("rank too large");
}

QSeries QSeries::monomial(const Weight& apex, int max_height, std::int64_t c) {
    QSeries s(apex, max_height);
    if (c != 0) s.terms_.push_back({0, c});
    return s;
}

std::int64_t QSeries::coeff(HKey k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{k, INT64_MIN});
    if (it != terms_.end() && it->first == k) return it->second;
    return 0;
}

std::optional<HKey> QSeries::key_of(const Weight& w) const {
    if (w.rank() != rank() || w.lambda0 != apex_.lambda0) return std::nullopt;
    std::vector<int> n;
    int h = 0;
    for (const auto& x : root_height_vector(apex_ - w)) {
        if (!is_integer(x) || x < 0 || x > kMaxHeight) return std::nullopt;
        n.push_back(static_cast<int>(to_int64(x)));
        h += n.back();
    }
    if (h > kMaxHeight) return std::nullopt;
    return make_key(n);
}

std::int64_t QSeries::coeff_of(const Weight& w) const {
    auto k = key_of(w);
    return k ? coeff(*k) : 0;
}

Weight QSeries::term_weight(HKey k) const {
    return apex_ - root_lattice_element(rank(), unpack_key(k, rank()));
}

void QSeries::add_term(HKey k, std::int64_t c) {
    if (c != 0) pending_.push_back({k, c});
}

void QSeries::finish() {
    if (pending_.empty()) return;
    std::vector<Term> all;
    all.reserve(terms_.size() + pending_.size());
    all.insert(all.end(), terms_.begin(), terms_.end());
    all.insert(all.end(), pending_.begin(), pending_.end());
    pending_.clear();
    std::sort(all.begin(), all.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    terms_.clear();
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        std::int64_t s = 0;
        while (j < all.size() && all[j].first == all[i].first) s = checked_add(s, all[j++].second);
        if (key_height(all[i].first) > H_) {
            clipped_ = true;
        } else if (s != 0) {
            terms_.push_back({all[i].first, s});
        }
        i = j;
    }
}

QSeries QSeries::shifted_apex(const Weight& shift) const {
    QSeries s = *this;
    s.apex_ += shift;
    return s;
}

QSeries QSeries::truncated(int max_height) const {
    QSeries s(apex_, std::min(max_height, H_));
    s.clipped_ = clipped_;
    for (const auto& t : terms_) {
        if (key_height(t.first) <= s.H_) s.terms_.push_back(t);
        else s.clipped_ = true;
    }
    return s;
}

QSeries QSeries::negated() const {
    QSeries s = *this;
    for (auto& t : s.terms_) t.second = checked_mul(t.second, -1);
    return s;
}

QSeries add(const QSeries& a, const QSeries& b) {
    check_compatible(a, b);
    if (a.apex().lambda0 != b.apex().lambda0) throw std::invalid_argument("apex difference not in the root lattice");
    const auto c = root_height_vector(a.apex() - b.apex());
    std::vector<int> sa, sb;
    for (const auto& x : c) {
        if (!is_integer(x)) throw std::invalid_argument("apex difference not in the root lattice");
        const auto v = to_int64(x);
        if (std::abs(v) > kMaxHeight) throw std::out_of_range("apex difference too large");
        sa.push_back(static_cast<int>(std::max<std::int64_t>(-v, 0)));
        sb.push_back(static_cast<int>(std::max<std::int64_t>(v, 0)));
    }
    // Common apex dominates both: apex = a.apex + sa.alpha = b.apex + sb.alpha.
    const Weight apex = b.apex() + root_lattice_element(a.rank(), sb);
    QSeries out(apex, a.max_height());
    out.clipped_ = a.clipped_ || b.clipped_;
    const HKey ka = make_key(sa), kb = make_key(sb);
    for (const auto& t : a.terms_) out.add_term(t.first + ka, t.second);
    for (const auto& t : b.terms_) out.add_term(t.first + kb, t.second);
    out.finish();
    return out;
}

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, b.negated()); }

QSeries mul(const QSeries& a, const QSeries& b) {
    check_compatible(a, b);
    const int H = a.max_height();
    std::unordered_map<HKey, std::int64_t> acc;
    bool clipped = a.clipped_ || b.clipped_;
    for (const auto& [ka, ca] : a.terms_) {
        const int ha = key_height(ka);
        for (const auto& [kb, cb] : b.terms_) {
            if (ha + key_height(kb) > H) {
                clipped = true;
                break;
            }
            auto& slot = acc[ka + kb];
            slot = checked_add(slot, checked_mul(ca, cb));
        }
    }
    QSeries out(a.apex() + b.apex(), H);
    out.clipped_ = clipped;
    out.terms_.reserve(acc.size());
    for (const auto& [k, c] : acc)
        if (c != 0) out.terms_.push_back({k, c});
    std::sort(out.terms_.begin(), out.terms_.end());
    return out;
}

QSeries mul_binomial(const QSeries& a, const Weight& beta, std::int64_t c, int power) {
    const HKey kb = cone_key(beta);
    const int hb = key_height(kb);
    QSeries cur = a;
    for (int p = 0; p < power; ++p) {
        QSeries out(cur.apex(), cur.max_height());
        out.clipped_ = cur.clipped_;
        out.terms_.reserve(cur.terms_.size() * 2);
        const auto& t = cur.terms_;
        const int lim = cur.max_height() - hb;
        // t is sorted with height as the leading key, so the shifted part is a prefix
        const auto jend = static_cast<std::size_t>(
            std::partition_point(t.begin(), t.end(), [&](const QSeries::Term& x) { return key_height(x.first) <= lim; }) - t.begin());
        if (jend < t.size()) out.clipped_ = true;
        std::size_t i = 0, j = 0;
        while (i < t.size() || j < jend) {
            if (j >= jend || (i < t.size() && t[i].first < t[j].first + kb)) {
                out.terms_.push_back(t[i++]);
                continue;
            }
            const HKey k = t[j].first + kb;
            std::int64_t v = checked_mul(c, t[j].second);
            ++j;
            if (i < t.size() && t[i].first == k) v = checked_add(v, t[i++].second);
            if (v != 0) out.terms_.push_back({k, v});
        }
        cur = std::move(out);
    }
    return cur;
}

QSeries div_binomial(const QSeries& a, const Weight& beta, int power) {
    const HKey kb = cone_key(beta);
    const int hb = key_height(kb);
    QSeries cur = a;
    for (int p = 0; p < power; ++p) {
        std::map<HKey, std::int64_t> m(cur.terms_.begin(), cur.terms_.end());
        for (auto it = m.begin(); it != m.end(); ++it) {
            if (it->second == 0) continue;
            if (key_height(it->first) + hb > cur.max_height()) continue;
            auto& slot = m[it->first + kb];
            slot = checked_add(slot, it->second);
        }
        QSeries out(cur.apex(), cur.max_height());
        out.clipped_ = true;  // a geometric series never terminates
        for (const auto& t : m)
            if (t.second != 0) out.terms_.push_back(t);
        cur = std::move(out);
    }
    return cur;
}

QSeries divide(const QSeries& n, const QSeries& d) {
    if (n.rank() != d.rank()) throw std::invalid_argument("rank mismatch");
    const std::int64_t d0 = d.coeff(0);
    if (d0 != 1 && d0 != -1) throw std::domain_error("divisor apex coefficient is not a unit");
    const int H = std::min(n.max_height(), d.max_height());
    std::map<HKey, std::int64_t> r;
    for (const auto& t : n.terms_)
        if (key_height(t.first) <= H) r.insert(t);
    QSeries q(n.apex() - d.apex(), H);
    q.clipped_ = n.clipped_ || d.clipped_;
    for (auto it = r.begin(); it != r.end(); ++it) {
        if (it->second == 0) continue;
        const HKey k = it->first;
        const std::int64_t qv = checked_mul(it->second, d0);
        q.terms_.push_back({k, qv});
        const int hk = key_height(k);
        for (const auto& [u, du] : d.terms_) {
            if (u == 0) continue;
            if (hk + key_height(u) > H) {
                q.clipped_ = true;
                break;
            }
            auto& slot = r[k + u];
            slot = checked_add(slot, -checked_mul(qv, du));
        }
    }
    return q;
}

QSeries invert_unit(const QSeries& a) {
    return divide(QSeries::monomial(Weight(a.rank()), a.max_height()), a);
}

SeriesDiff compare(const QSeries& a, const QSeries& b) {
    SeriesDiff d;
    if (a.rank() != b.rank()) {
        d.equal = false;
        d.reason = "rank mismatch";
        return d;
    }
    if (a.apex() != b.apex()) {
        d.equal = false;
        d.reason = "apex mismatch";
        return d;
    }
    const int H = std::min(a.max_height(), b.max_height());
    std::map<HKey, std::pair<std::int64_t, std::int64_t>> m;
    for (const auto& t : a.terms())
        if (key_height(t.first) <= H) m[t.first].first = t.second;
    for (const auto& t : b.terms())
        if (key_height(t.first) <= H) m[t.first].second = t.second;
    int best_n0 = -1;
    for (const auto& [k, v] : m) {
        if (v.first == v.second) continue;
        const int n0 = unpack_key(k, a.rank())[0];
        if (best_n0 < 0 || n0 < best_n0) {
            best_n0 = n0;
            d.equal = false;
            d.first_weight = a.term_weight(k);
            d.first_q_degree = -d.first_weight->delta;
            d.lhs = v.first;
            d.rhs = v.second;
        }
    }
    if (!d.equal) d.reason = "coefficient mismatch";
    return d;
}

std::vector<DeltaSlice> delta_expansion(const QSeries& a) {
    std::map<int, std::vector<std::pair<Weight, std::int64_t>>> by;
    for (const auto& [k, c] : a.terms()) by[unpack_key(k, a.rank())[0]].push_back({a.term_weight(k), c});
    std::vector<DeltaSlice> out;
    for (auto& [n0, v] : by) {
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        out.push_back({Rational(n0) - a.apex().delta, std::move(v)});
    }
    return out;
}

nlohmann::json to_json(const std::vector<DeltaSlice>& slices) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : slices) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [w, c] : s.terms) terms.push_back({{"weight", to_json(w)}, {"coeff", c}});
        arr.push_back({{"q_degree", to_string(s.q_degree)}, {"terms", terms}});
    }
    return arr;
}

QSeries restrict_depth(const QSeries& a, int depth) {
    QSeries out(a.apex(), a.max_height());
    for (const auto& [k, c] : a.terms())
        if (unpack_key(k, a.rank())[0] <= depth) out.add_term(k, c);
    out.finish();
    if (a.clipped()) out.mark_clipped();
    return out;
}

cplx evaluate(const QSeries& a, const YPoint& y, Sharp s) {
    const CWeight v = point_to_weight(s, y);
    cplx sum = 0;
    for (const auto& [k, c] : a.terms()) sum += static_cast<double>(c) * std::exp(inner(complexify(a.term_weight(k)), v));
    return sum;
}

}  // namespace kacmod
