#pragma once

// Exact linear algebra over a truncated two-branch Laurent algebra
// k((t)) x k((s)). Submodules of the total quotient ring are represented by
// a reduced echelon basis on a finite degree window plus per-branch tail
// thresholds: every pure monomial of degree >= tail in that branch is a
// member, and basis rows carry no support there. All operations reduce
// results modulo the tail span, which keeps truncation exact as long as the
// tail claims hold; the claims are forced by how each operation derives its
// result tails, and are re-checked by the canonicalization pass.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semifiber/errors.hpp"
#include "semifiber/linalg.hpp"
#include "semifiber/semigroup.hpp"

namespace semifiber {

struct WindowOverrides {
    std::optional<int> bound;       // N
    std::optional<int> neg_offset;  // D
};

template <class K>
class BranchWindow {
  public:
    using V = typename K::value_type;
    using Row = std::vector<V>;

    BranchWindow(NumericalSemigroup left, NumericalSemigroup right,
                 WindowOverrides ov = {})
        : left_(std::move(left)), right_(std::move(right)) {
        int maxF = std::max(left_.frobenius(), right_.frobenius());
        int maxgen = std::max(left_.max_generator(), right_.max_generator());
        int minN = 2 * (maxF + 2) + maxgen + 8;
        int minD = maxF + 2;
        // Defaults are roomier than the hard minima: duals of probe modules
        // can sit a few degrees lower than any input module.
        N_ = ov.bound.value_or(minN + 4);
        D_ = ov.neg_offset.value_or(minD + 4);
        if (N_ < minN)
            throw BadOverride("window bound " + std::to_string(N_) + " below minimum " +
                              std::to_string(minN));
        if (D_ < minD)
            throw BadOverride("negative offset " + std::to_string(D_) + " below minimum " +
                              std::to_string(minD));
        width_ = N_ + 2 * D_;
    }

    const NumericalSemigroup& branch(int b) const { return b == 0 ? left_ : right_; }
    const NumericalSemigroup& left() const { return left_; }
    const NumericalSemigroup& right() const { return right_; }
    int bound() const { return N_; }
    int neg_offset() const { return D_; }
    long lowest() const { return -2L * D_; }
    int cols() const { return 2 * width_; }

    int col(int b, long deg) const { return b * width_ + static_cast<int>(deg + 2 * D_); }
    int branch_of_col(int c) const { return c / width_; }
    long deg_of_col(int c) const { return (c % width_) - 2L * D_; }

    bool representable(int /*b*/, long deg) const { return deg >= lowest() && deg < N_; }

    Row zero_elem() const { return Row(static_cast<size_t>(cols()), K::zero()); }

    Row monomial(int b, long deg) const {
        if (!representable(b, deg))
            throw PrecisionExhausted("monomial degree " + std::to_string(deg) +
                                     " outside window");
        Row r = zero_elem();
        r[static_cast<size_t>(col(b, deg))] = K::one();
        return r;
    }

    Row unit() const {
        Row r = zero_elem();
        r[static_cast<size_t>(col(0, 0))] = K::one();
        r[static_cast<size_t>(col(1, 0))] = K::one();
        return r;
    }

    /// Branchwise valuation; nullopt when the branch component vanishes.
    std::optional<long> valuation(const Row& x, int b) const {
        for (int c = b * width_; c < (b + 1) * width_; ++c)
            if (!K::is_zero(x[static_cast<size_t>(c)])) return deg_of_col(c);
        return std::nullopt;
    }

    bool is_regular(const Row& x) const {
        return valuation(x, 0).has_value() && valuation(x, 1).has_value();
    }

    /// Exact product, truncated at degree bound(); coefficients that would
    /// land below the window raise PrecisionExhausted (that information
    /// cannot be absorbed by any tail).
    Row mul(const Row& a, const Row& b) const {
        Row out = zero_elem();
        for (int br = 0; br < 2; ++br) {
            for (int i = br * width_; i < (br + 1) * width_; ++i) {
                if (K::is_zero(a[static_cast<size_t>(i)])) continue;
                long da = deg_of_col(i);
                for (int j = br * width_; j < (br + 1) * width_; ++j) {
                    if (K::is_zero(b[static_cast<size_t>(j)])) continue;
                    long d = da + deg_of_col(j);
                    if (d >= N_) continue;  // absorbed by the consumer's tail
                    if (d < lowest())
                        throw PrecisionExhausted("product degree " + std::to_string(d) +
                                                 " below window");
                    out[static_cast<size_t>(col(br, d))] +=
                        a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
                }
            }
        }
        return out;
    }

    /// Branch-b part of x shifted up by deg (i.e. the product with a pure
    /// monomial); the other branch vanishes.
    Row shifted(const Row& x, int b, long deg) const {
        Row out = zero_elem();
        for (int c = b * width_; c < (b + 1) * width_; ++c) {
            if (K::is_zero(x[static_cast<size_t>(c)])) continue;
            long d = deg_of_col(c) + deg;
            if (d >= N_) continue;
            if (d < lowest())
                throw PrecisionExhausted("shifted degree below window");
            out[static_cast<size_t>(col(b, d))] = x[static_cast<size_t>(c)];
        }
        return out;
    }

    /// Inverse of a branch-regular element as a Laurent series, exact on all
    /// representable degrees.
    Row inverse(const Row& x) const {
        Row out = zero_elem();
        for (int b = 0; b < 2; ++b) {
            auto v = valuation(x, b);
            if (!v) throw Error("inverse of a zero-divisor");
            long lo = -*v;
            if (!representable(b, lo))
                throw PrecisionExhausted("inverse valuation outside window");
            V lead = x[static_cast<size_t>(col(b, *v))];
            V ilead = K::inverse(lead);
            // out coefficients c_k at degree lo + k via the convolution
            // recurrence against x
            std::vector<V> c;
            long maxk = N_ - 1 - lo;
            for (long k = 0; k <= maxk; ++k) {
                V acc = (k == 0) ? K::one() : K::zero();
                for (long m = 1; m <= k; ++m) {
                    long dx = *v + m;
                    if (dx >= N_) break;
                    const V& xm = x[static_cast<size_t>(col(b, dx))];
                    if (K::is_zero(xm)) continue;
                    acc -= xm * c[static_cast<size_t>(k - m)];
                }
                c.push_back(ilead * acc);
            }
            for (long k = 0; k <= maxk; ++k)
                out[static_cast<size_t>(col(b, lo + k))] = c[static_cast<size_t>(k)];
        }
        return out;
    }

    bool operator==(const BranchWindow& o) const {
        return left_ == o.left_ && right_ == o.right_ && N_ == o.N_ && D_ == o.D_;
    }

  private:
    NumericalSemigroup left_, right_;
    int N_ = 0, D_ = 0, width_ = 0;
};

/// Submodule of the two-branch quotient algebra: echelon basis + tails.
/// Canonical after normalize(): tails are minimal, rows have no support at or
/// above them, so equality of submodules is equality of the representation.
template <class K>
class Submodule {
  public:
    using V = typename K::value_type;
    using Row = std::vector<V>;

    Submodule(const BranchWindow<K>* w, std::vector<Row> rows, long tail_left,
              long tail_right)
        : W_(w), basis_(w->cols()), tail_{tail_left, tail_right} {
        for (int b = 0; b < 2; ++b) {
            if (tail_[b] > w->bound())
                throw PrecisionExhausted("tail " + std::to_string(tail_[b]) +
                                         " beyond window bound");
            tail_[b] = std::max(tail_[b], w->lowest());
        }
        for (auto& r : rows) {
            clip(r);
            basis_.insert(std::move(r));
        }
        normalize();
    }

    const BranchWindow<K>& window() const { return *W_; }
    const EchelonBasis<K>& basis() const { return basis_; }
    long tail(int b) const { return tail_[b]; }

    /// Minimal degree with nonzero coefficient in branch b over the module.
    long min_valuation(int b) const {
        long v = tail_[b];
        for (const auto& r : basis_.rows()) {
            auto rv = W_->valuation(r, b);
            if (rv && *rv < v) v = *rv;
        }
        return v;
    }

    bool contains(Row x) const {
        clip(x);
        return basis_.contains(std::move(x));
    }

    bool contains_module(const Submodule& m) const {
        for (int b = 0; b < 2; ++b) {
            if (m.tail_[b] < tail_[b]) {
                for (long d = m.tail_[b]; d < tail_[b]; ++d)
                    if (!contains(W_->monomial(b, d))) return false;
            }
        }
        for (const auto& r : m.basis_.rows())
            if (!contains(r)) return false;
        return true;
    }

    bool operator==(const Submodule& o) const {
        return tail_[0] == o.tail_[0] && tail_[1] == o.tail_[1] && basis_ == o.basis_;
    }

    /// Dimension of the image in the truncation at degree T (T >= tails).
    long dim_below(long T) const {
        return basis_.rank() + (T - tail_[0]) + (T - tail_[1]);
    }

    /// All module generators relevant on the window: basis rows plus tail
    /// monomials up to the given per-branch horizon.
    std::vector<Row> spanning_rows(long horizon_left, long horizon_right) const {
        std::vector<Row> out = basis_.rows();
        for (long d = tail_[0]; d < horizon_left; ++d) out.push_back(W_->monomial(0, d));
        for (long d = tail_[1]; d < horizon_right; ++d) out.push_back(W_->monomial(1, d));
        return out;
    }

  private:
    void clip(Row& r) const {
        for (int b = 0; b < 2; ++b)
            for (long d = tail_[b]; d < W_->bound(); ++d)
                r[static_cast<size_t>(W_->col(b, d))] = K::zero();
    }

    /// Lower each tail while the boundary monomial already lies in the span,
    /// rebuilding the reduced representation. Yields the canonical form.
    void normalize() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int b = 0; b < 2; ++b) {
                while (tail_[b] > W_->lowest()) {
                    Row m = W_->monomial(b, tail_[b] - 1);
                    if (!basis_.contains(m)) break;
                    tail_[b] -= 1;
                    rebuild();
                    changed = true;
                }
            }
        }
    }

    void rebuild() {
        std::vector<Row> rows = basis_.rows();
        basis_ = EchelonBasis<K>(W_->cols());
        for (auto& r : rows) {
            clip(r);
            basis_.insert(std::move(r));
        }
    }

    const BranchWindow<K>* W_;
    EchelonBasis<K> basis_;
    long tail_[2];
};

namespace window_ops {

/// Module of a product of monomial relative ideals E1 x E2.
template <class K>
Submodule<K> decoupled_module(const BranchWindow<K>& W, const RelativeIdealZ& e1,
                              const RelativeIdealZ& e2) {
    std::vector<typename BranchWindow<K>::Row> rows;
    for (long d : e1.members_below_tail()) rows.push_back(W.monomial(0, d));
    for (long d : e2.members_below_tail()) rows.push_back(W.monomial(1, d));
    return Submodule<K>(&W, std::move(rows), e1.tail(), e2.tail());
}

template <class K>
Submodule<K> mod_sum(const Submodule<K>& a, const Submodule<K>& b) {
    std::vector<typename Submodule<K>::Row> rows = a.basis().rows();
    for (const auto& r : b.basis().rows()) rows.push_back(r);
    long tl = std::min(a.tail(0), b.tail(0));
    long tr = std::min(a.tail(1), b.tail(1));
    // monomials of the module with the higher tail, down to the joint tail
    for (long d = std::min(a.tail(0), b.tail(0)); d < std::max(a.tail(0), b.tail(0)); ++d)
        rows.push_back(a.window().monomial(0, d));
    for (long d = std::min(a.tail(1), b.tail(1)); d < std::max(a.tail(1), b.tail(1)); ++d)
        rows.push_back(a.window().monomial(1, d));
    return Submodule<K>(&a.window(), std::move(rows), tl, tr);
}

/// Product of submodules. Result tails follow from each factor's tail plus
/// the other factor's minimal valuation; products against tail monomials are
/// absorbed by exactly those tails, so only row-by-row products are needed.
template <class K>
Submodule<K> mod_product(const Submodule<K>& a, const Submodule<K>& b) {
    const BranchWindow<K>& W = a.window();
    long tl = std::min(a.tail(0) + b.min_valuation(0), b.tail(0) + a.min_valuation(0));
    long tr = std::min(a.tail(1) + b.min_valuation(1), b.tail(1) + a.min_valuation(1));
    if (tl >= W.bound() || tr >= W.bound())
        throw PrecisionExhausted("product tails exceed window bound");
    std::vector<typename Submodule<K>::Row> rows;
    for (const auto& x : a.basis().rows())
        for (const auto& y : b.basis().rows()) rows.push_back(W.mul(x, y));
    return Submodule<K>(&W, std::move(rows), tl, tr);
}

/// q * M for a branch-regular element q.
template <class K>
Submodule<K> mod_scale(const typename Submodule<K>::Row& q, const Submodule<K>& m) {
    const BranchWindow<K>& W = m.window();
    auto vl = W.valuation(q, 0), vr = W.valuation(q, 1);
    if (!vl || !vr) throw Error("scaling by a zero-divisor");
    std::vector<typename Submodule<K>::Row> rows;
    for (const auto& x : m.basis().rows()) rows.push_back(W.mul(q, x));
    return Submodule<K>(&W, std::move(rows), m.tail(0) + *vl, m.tail(1) + *vr);
}

template <class K>
long length_quotient(const Submodule<K>& outer, const Submodule<K>& inner) {
    if (!outer.contains_module(inner))
        throw NotContained("length_quotient: inner module not contained in outer");
    long T = std::max({outer.tail(0), outer.tail(1), inner.tail(0), inner.tail(1)});
    return outer.dim_below(T) - inner.dim_below(T);
}

/// Minimal A-module generators of M: coset representatives of M / J*M.
template <class K>
std::vector<typename Submodule<K>::Row> minimal_generators(const Submodule<K>& m,
                                                           const Submodule<K>& max_ideal) {
    Submodule<K> jm = mod_product(max_ideal, m);
    EchelonBasis<K> acc = jm.basis();
    // rows of jm are clipped at jm's tails; extend the tail span difference
    std::vector<typename Submodule<K>::Row> gens;
    auto consider = [&](typename Submodule<K>::Row r) {
        // reduce modulo jm's tails so membership is tested in the quotient
        for (int b = 0; b < 2; ++b)
            for (long d = jm.tail(b); d < m.window().bound(); ++d)
                r[static_cast<size_t>(m.window().col(b, d))] = K::zero();
        if (acc.insert(r)) gens.push_back(r);
    };
    for (int b = 0; b < 2; ++b)
        for (long d = m.tail(b); d < jm.tail(b); ++d) consider(m.window().monomial(b, d));
    for (const auto& r : m.basis().rows()) consider(r);
    return gens;
}

/// colon(M, M') = { q : q M' is contained in M }, exact.
template <class K>
Submodule<K> mod_colon(const Submodule<K>& m, const Submodule<K>& mp,
                       const Submodule<K>& max_ideal) {
    const BranchWindow<K>& W = m.window();
    auto gens = minimal_generators(mp, max_ideal);
    long lo[2], hi[2];
    for (int b = 0; b < 2; ++b) {
        long v = mp.min_valuation(b);
        lo[b] = m.min_valuation(b) - v;
        hi[b] = m.tail(b) - v;  // tail of the colon
        if (lo[b] < W.lowest())
            throw PrecisionExhausted("colon support below window");
        if (hi[b] > W.bound()) throw PrecisionExhausted("colon tail beyond window bound");
        if (hi[b] < lo[b]) hi[b] = lo[b];
    }
    // unknowns: one coefficient per representable degree of q below its tail
    struct Coord {
        int b;
        long d;
    };
    std::vector<Coord> coords;
    for (int b = 0; b < 2; ++b)
        for (long d = lo[b]; d < hi[b]; ++d) coords.push_back({b, d});
    int U = static_cast<int>(coords.size());
    EchelonBasis<K> constraints(U);
    std::vector<typename Submodule<K>::Row> residuals(static_cast<size_t>(U));
    for (const auto& g : gens) {
        std::set<int> nz;
        for (int u = 0; u < U; ++u) {
            auto r = W.shifted(g, coords[static_cast<size_t>(u)].b,
                               coords[static_cast<size_t>(u)].d);
            // clip to m's tails, then take the residual against m's basis
            for (int b = 0; b < 2; ++b)
                for (long d = m.tail(b); d < W.bound(); ++d)
                    r[static_cast<size_t>(W.col(b, d))] = K::zero();
            m.basis().reduce(r);
            for (int c = 0; c < W.cols(); ++c)
                if (!K::is_zero(r[static_cast<size_t>(c)])) nz.insert(c);
            residuals[static_cast<size_t>(u)] = std::move(r);
        }
        for (int c : nz) {
            std::vector<typename K::value_type> row(static_cast<size_t>(U), K::zero());
            bool any = false;
            for (int u = 0; u < U; ++u) {
                const auto& val = residuals[static_cast<size_t>(u)][static_cast<size_t>(c)];
                if (!K::is_zero(val)) {
                    row[static_cast<size_t>(u)] = val;
                    any = true;
                }
            }
            if (any) constraints.insert(std::move(row));
        }
    }
    std::vector<std::vector<typename K::value_type>> sols;
    for (int c = 0; c < U; ++c) {
        if (constraints.pivot_row(c) >= 0) continue;
        std::vector<typename K::value_type> v(static_cast<size_t>(U), K::zero());
        v[static_cast<size_t>(c)] = K::one();
        for (size_t i = 0; i < constraints.rows().size(); ++i) {
            const auto& row = constraints.rows()[i];
            if (!K::is_zero(row[static_cast<size_t>(c)]))
                v[static_cast<size_t>(constraints.pivots()[i])] = -row[static_cast<size_t>(c)];
        }
        sols.push_back(std::move(v));
    }
    std::vector<typename Submodule<K>::Row> rows;
    for (const auto& s : sols) {
        auto r = W.zero_elem();
        for (int u = 0; u < U; ++u)
            r[static_cast<size_t>(W.col(coords[static_cast<size_t>(u)].b,
                                        coords[static_cast<size_t>(u)].d))] =
                s[static_cast<size_t>(u)];
        rows.push_back(std::move(r));
    }
    return Submodule<K>(&W, std::move(rows), hi[0], hi[1]);
}

/// Intersection via the standard two-block elimination.
template <class K>
Submodule<K> mod_intersect(const Submodule<K>& a, const Submodule<K>& b) {
    const BranchWindow<K>& W = a.window();
    int C = W.cols();
    long Tl = std::max(a.tail(0), b.tail(0));
    long Tr = std::max(a.tail(1), b.tail(1));
    EchelonBasis<K> ech(2 * C);
    auto widen = [&](const typename Submodule<K>::Row& r, bool mirror) {
        std::vector<typename K::value_type> v(static_cast<size_t>(2 * C), K::zero());
        for (int c = 0; c < C; ++c) {
            v[static_cast<size_t>(c)] = r[static_cast<size_t>(c)];
            if (mirror) v[static_cast<size_t>(C + c)] = r[static_cast<size_t>(c)];
        }
        ech.insert(std::move(v));
    };
    for (const auto& r : a.spanning_rows(Tl, Tr)) widen(r, true);
    for (const auto& r : b.spanning_rows(Tl, Tr)) widen(r, false);
    std::vector<typename Submodule<K>::Row> rows;
    for (const auto& r : ech.rows()) {
        bool left_zero = true;
        for (int c = 0; c < C && left_zero; ++c)
            if (!K::is_zero(r[static_cast<size_t>(c)])) left_zero = false;
        if (!left_zero) continue;
        typename Submodule<K>::Row v(static_cast<size_t>(C), K::zero());
        for (int c = 0; c < C; ++c) v[static_cast<size_t>(c)] = r[static_cast<size_t>(C + c)];
        rows.push_back(std::move(v));
    }
    return Submodule<K>(&W, std::move(rows), Tl, Tr);
}

/// Every basis row times every multiplier stays inside the module.
template <class K>
bool is_closed_under(const Submodule<K>& m,
                     const std::vector<typename Submodule<K>::Row>& multipliers) {
    for (const auto& r : m.basis().rows())
        for (const auto& g : multipliers)
            if (!m.contains(m.window().mul(r, g))) return false;
    return true;
}

/// Smallest subspace containing the seeds and closed under the multipliers,
/// with the stated result tails (derived by the caller).
template <class K>
Submodule<K> saturate(const BranchWindow<K>& W,
                      std::vector<typename Submodule<K>::Row> seeds,
                      const std::vector<typename Submodule<K>::Row>& multipliers,
                      long tail_left, long tail_right) {
    Submodule<K> cur(&W, seeds, tail_left, tail_right);
    for (int round = 0; round < 4 * W.bound(); ++round) {
        std::vector<typename Submodule<K>::Row> fresh;
        for (const auto& r : cur.basis().rows())
            for (const auto& g : multipliers) {
                auto p = W.mul(r, g);
                if (!cur.contains(p)) fresh.push_back(std::move(p));
            }
        if (fresh.empty()) return cur;
        std::vector<typename Submodule<K>::Row> rows = cur.basis().rows();
        for (auto& r : fresh) rows.push_back(std::move(r));
        cur = Submodule<K>(&W, std::move(rows), cur.tail(0), cur.tail(1));
    }
    throw ClosureOverflow("module closure failed to stabilize");
}

}  // namespace window_ops

}  // namespace semifiber
