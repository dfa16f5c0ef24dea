#pragma once

// Exact integer-set calculus for numerical semigroups and their relative
// ideals, plus the five single-ring classifiers for the semigroup ring of H.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "semifiber/errors.hpp"

namespace semifiber {

/// Cofinite additive submonoid of the naturals. Immutable after construction.
class NumericalSemigroup {
  public:
    static NumericalSemigroup from_generators(std::vector<int> gens) {
        if (gens.empty()) throw Error("empty generator list");
        for (int g : gens)
            if (g < 1) throw Error("generator " + std::to_string(g) + " is not positive");
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        int g = 0;
        for (int x : gens) g = std::gcd(g, x);
        if (g != 1) {
            std::string list;
            for (size_t i = 0; i < gens.size(); ++i)
                list += (i ? "," : "") + std::to_string(gens[i]);
            throw NotCofinite("gcd(" + list + ") = " + std::to_string(g) + " != 1");
        }
        return NumericalSemigroup(std::move(gens));
    }

    bool contains(long n) const {
        if (n < 0) return false;
        if (n >= static_cast<long>(member_.size())) return true;
        return member_[static_cast<size_t>(n)];
    }

    int frobenius() const { return frobenius_; }
    int genus() const { return static_cast<int>(gaps_.size()); }
    const std::vector<int>& gaps() const { return gaps_; }
    const std::vector<int>& generators() const { return gens_; }

    /// multiplicity e(R) = smallest nonzero member
    int multiplicity() const { return gens_.front(); }
    /// embedding dimension v(R) = number of minimal generators
    int embedding_dimension() const { return static_cast<int>(gens_.size()); }
    int max_generator() const { return gens_.back(); }
    bool is_full() const { return frobenius_ == -1; }

    /// x not in H with x + h in H for every nonzero member h
    std::vector<int> pseudo_frobenius() const {
        std::vector<int> pf;
        for (int x : gaps_) {
            bool ok = true;
            int limit = frobenius_ + max_generator() + 1;
            for (int h = 1; h <= limit && ok; ++h)
                if (contains(h) && !contains(x + h)) ok = false;
            if (ok) pf.push_back(x);
        }
        return pf;
    }

    /// Cohen-Macaulay type; 1 for the full monoid by convention.
    int type() const {
        if (is_full()) return 1;
        return static_cast<int>(pseudo_frobenius().size());
    }

    bool operator==(const NumericalSemigroup& o) const { return gens_ == o.gens_; }

    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < gens_.size(); ++i) s += (i ? "," : "") + std::to_string(gens_[i]);
        return s;
    }

  private:
    explicit NumericalSemigroup(std::vector<int> raw) {
        // additive-closure sieve; F(<a,b>) <= ab so mingen*maxgen is ample
        int lo = raw.front(), hi = raw.back();
        int bound = lo * hi + hi + 2;
        std::vector<bool> m(static_cast<size_t>(bound), false);
        m[0] = true;
        for (int n = 1; n < bound; ++n)
            for (int g : raw)
                if (n - g >= 0 && m[static_cast<size_t>(n - g)]) {
                    m[static_cast<size_t>(n)] = true;
                    break;
                }
        frobenius_ = -1;
        for (int n = bound - 1; n >= 1; --n)
            if (!m[static_cast<size_t>(n)]) {
                frobenius_ = n;
                break;
            }
        for (int n = 1; n <= frobenius_; ++n)
            if (!m[static_cast<size_t>(n)]) gaps_.push_back(n);
        // a member n is a minimal generator iff it is not a sum of two
        // nonzero members; every minimal generator is <= F + e
        int e = 0;
        for (int n = 1; n < bound; ++n)
            if (m[static_cast<size_t>(n)]) {
                e = n;
                break;
            }
        for (int n = 1; n <= frobenius_ + e; ++n) {
            if (!m[static_cast<size_t>(n)]) continue;
            bool decomposable = false;
            for (int a = e; a + e <= n && !decomposable; ++a)
                if (m[static_cast<size_t>(a)] && m[static_cast<size_t>(n - a)]) decomposable = true;
            if (!decomposable) gens_.push_back(n);
        }
        if (gens_.empty()) gens_.push_back(1);  // H = N
        member_.assign(static_cast<size_t>(frobenius_ + gens_.back() + 2), false);
        for (size_t i = 0; i < member_.size(); ++i) m[i] ? member_[i] = true : false;
    }

    std::vector<int> gens_;
    int frobenius_ = -1;
    std::vector<int> gaps_;
    std::vector<bool> member_;
};

/// Integer degree set E, bounded below, with E + H contained in E.
/// Normal form: offset is the least member, tail is the least t with
/// [t, infinity) contained in E, and the window covers [offset, tail).
class RelativeIdealZ {
  public:
    /// Build from membership over [lo, hi); everything >= hi must be a member.
    RelativeIdealZ(long lo, const std::vector<bool>& bits) {
        long hi = lo + static_cast<long>(bits.size());
        long m = hi;
        for (size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) {
                m = lo + static_cast<long>(i);
                break;
            }
        offset_ = m;
        tail_ = hi;
        while (tail_ > offset_ && bits[static_cast<size_t>(tail_ - 1 - lo)]) --tail_;
        win_.assign(static_cast<size_t>(tail_ - offset_), false);
        for (long z = offset_; z < tail_; ++z)
            win_[static_cast<size_t>(z - offset_)] = bits[static_cast<size_t>(z - lo)];
    }

    static RelativeIdealZ everything_from(long t) {
        return RelativeIdealZ(t, std::vector<bool>{});
    }

    bool contains(long z) const {
        if (z >= tail_) return true;
        if (z < offset_) return false;
        return win_[static_cast<size_t>(z - offset_)];
    }

    long offset() const { return offset_; }
    long tail() const { return tail_; }

    std::vector<long> members_below_tail() const {
        std::vector<long> out;
        for (long z = offset_; z < tail_; ++z)
            if (contains(z)) out.push_back(z);
        return out;
    }

    bool operator==(const RelativeIdealZ& o) const {
        return offset_ == o.offset_ && tail_ == o.tail_ && win_ == o.win_;
    }

    bool is_closed_under(const NumericalSemigroup& H) const {
        for (long z = offset_; z < tail_; ++z) {
            if (!contains(z)) continue;
            for (int g : H.generators())
                if (!contains(z + g)) return false;
        }
        return true;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (long z = offset_; z < tail_; ++z)
            if (contains(z)) {
                if (!first) s += ",";
                s += std::to_string(z);
                first = false;
            }
        if (!first) s += ",";
        s += ">=" + std::to_string(tail_) + "}";
        return s;
    }

  private:
    long offset_ = 0;
    long tail_ = 0;
    std::vector<bool> win_;  // membership on [offset_, tail_)
};

namespace relideal {

template <class Pred>
inline RelativeIdealZ from_predicate(long lo, long hi, Pred member) {
    std::vector<bool> bits(static_cast<size_t>(hi - lo), false);
    for (long z = lo; z < hi; ++z) bits[static_cast<size_t>(z - lo)] = member(z);
    return RelativeIdealZ(lo, bits);
}

/// Degree set of the ring itself: H as a relative ideal.
inline RelativeIdealZ ring_ideal(const NumericalSemigroup& H) {
    return from_predicate(0, H.frobenius() + 1, [&](long z) { return H.contains(z); });
}

/// Degrees of the maximal ideal: nonzero members of H.
inline RelativeIdealZ maximal_ideal(const NumericalSemigroup& H) {
    return from_predicate(0, H.frobenius() + 2,
                          [&](long z) { return z > 0 && H.contains(z); });
}

/// Degree set of the fractional canonical ideal: z with F - z not in H.
inline RelativeIdealZ canonical_ideal(const NumericalSemigroup& H) {
    long F = H.frobenius();
    return from_predicate(0, F + 1, [&](long z) { return !H.contains(F - z); });
}

inline RelativeIdealZ sum(const RelativeIdealZ& a, const RelativeIdealZ& b) {
    long lo = std::min(a.offset(), b.offset());
    long hi = std::max(a.tail(), b.tail());
    return from_predicate(lo, hi, [&](long z) { return a.contains(z) || b.contains(z); });
}

/// Minkowski sum {e + f}; the degree set of the product of monomial modules.
inline RelativeIdealZ product(const RelativeIdealZ& a, const RelativeIdealZ& b) {
    long lo = a.offset() + b.offset();
    long hi = std::min(a.tail() + b.offset(), b.tail() + a.offset());
    return from_predicate(lo, hi, [&](long z) {
        for (long e = a.offset(); e <= z - b.offset(); ++e)
            if (a.contains(e) && b.contains(z - e)) return true;
        return false;
    });
}

/// colon(E, F) = { z : z + F is contained in E }.
inline RelativeIdealZ colon(const RelativeIdealZ& e, const RelativeIdealZ& f) {
    long lo = e.tail() - f.tail();  // z + [f.tail, inf) in E forces z >= this
    long hi = e.tail() - f.offset();
    return from_predicate(lo, hi, [&](long z) {
        for (long w = f.offset(); w < f.tail(); ++w)
            if (f.contains(w) && !e.contains(z + w)) return false;
        return true;
    });
}

inline RelativeIdealZ shift(const RelativeIdealZ& e, long c) {
    return from_predicate(e.offset() + c, e.tail() + c,
                          [&](long z) { return e.contains(z - c); });
}

inline bool subset(const RelativeIdealZ& inner, const RelativeIdealZ& outer) {
    for (long z = inner.offset(); z < inner.tail(); ++z)
        if (inner.contains(z) && !outer.contains(z)) return false;
    // degrees in inner's tail but below outer's tail still need membership
    for (long z = inner.tail(); z < outer.tail(); ++z)
        if (!outer.contains(z)) return false;
    return true;
}

/// Number of degrees in E \ F; the length of the quotient module.
inline long length_between(const RelativeIdealZ& e, const RelativeIdealZ& f) {
    if (!subset(f, e)) throw NotContained("length_between: second ideal not inside first");
    long n = 0;
    long hi = std::max(e.tail(), f.tail());
    for (long z = e.offset(); z < hi; ++z)
        if (e.contains(z) && !f.contains(z)) ++n;
    return n;
}

/// Degree set of the blow-up ring R[K]: stabilized union of powers of K.
inline RelativeIdealZ blowup(const NumericalSemigroup& H) {
    RelativeIdealZ k = canonical_ideal(H);
    RelativeIdealZ b = k;
    for (int i = 0; i <= H.frobenius() + 1; ++i) {
        RelativeIdealZ next = sum(b, product(b, k));
        if (next == b) return b;
        b = next;
    }
    throw Error("blowup of canonical ideal failed to stabilize");
}

}  // namespace relideal

struct RingFlags {
    bool gorenstein = false;
    bool almost_gorenstein = false;
    bool generalized_gorenstein = false;
    bool two_almost_gorenstein = false;
    bool nearly_gorenstein = false;
    bool is_dvr = false;

    bool operator==(const RingFlags&) const = default;
};

struct RingClassification {
    int e = 0;       // multiplicity
    int v = 0;       // embedding dimension
    int r = 0;       // Cohen-Macaulay type
    long len_K_mod_R = 0;
    long len_R_mod_c = 0;
    RingFlags flags;
};

/// All five classifiers for the semigroup ring of H, by exact set arithmetic.
inline RingClassification classify_ring(const NumericalSemigroup& H) {
    using namespace relideal;
    RingClassification c;
    c.e = H.multiplicity();
    c.v = H.embedding_dimension();
    c.r = H.type();
    if (H.is_full()) {
        c.flags = RingFlags{true, true, true, false, true, true};
        return c;
    }
    RelativeIdealZ R = ring_ideal(H);
    RelativeIdealZ M = maximal_ideal(H);
    RelativeIdealZ K = canonical_ideal(H);
    c.len_K_mod_R = length_between(K, R);
    c.flags.gorenstein = (c.len_K_mod_R == 0);
    c.flags.almost_gorenstein = (sum(M, product(M, K)) == M);
    RelativeIdealZ B = blowup(H);
    RelativeIdealZ cond = colon(R, B);
    c.len_R_mod_c = length_between(R, cond);
    c.flags.two_almost_gorenstein = (c.len_R_mod_c == 2);
    long mu = length_between(K, sum(R, product(M, K)));  // minimal generators of K/R
    c.flags.generalized_gorenstein =
        c.flags.gorenstein || (c.len_K_mod_R == mu * c.len_R_mod_c);
    RelativeIdealZ trace = product(colon(R, K), K);
    c.flags.nearly_gorenstein = subset(M, trace);
    return c;
}

inline std::vector<int> parse_generators(const std::string& text) {
    std::vector<int> gens;
    std::string tok;
    auto flush = [&]() {
        if (tok.empty()) throw Error("empty token in generator list '" + text + "'");
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw Error("bad generator token '" + tok + "'");
        }
        if (pos != tok.size()) throw Error("bad generator token '" + tok + "'");
        gens.push_back(v);
        tok.clear();
    };
    for (char ch : text) {
        if (ch == ',') {
            flush();
        } else if (ch != ' ') {
            tok += ch;
        }
    }
    flush();
    return gens;
}

}  // namespace semifiber
