#pragma once

// Reduced row echelon bases over an exact field. Rows are dense vectors but
// the data in this calculus is near-monomial, so elimination touches few
// entries. The echelon form is canonical: equal subspaces compare equal.

#include <utility>
#include <vector>

namespace semifiber {

template <class K>
class EchelonBasis {
  public:
    using V = typename K::value_type;
    using Row = std::vector<V>;

    explicit EchelonBasis(int cols = 0) : cols_(cols), row_of_pivot_(cols, -1) {}

    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<Row>& rows() const { return rows_; }
    int pivot_row(int col) const { return row_of_pivot_[static_cast<size_t>(col)]; }

    /// Eliminate v against the basis in place; afterwards v has no support on
    /// pivot columns. Returns the first nonzero column of the residual (or
    /// cols() when v reduced to zero).
    int reduce(Row& v) const {
        int lead = cols_;
        for (int c = 0; c < cols_; ++c) {
            if (K::is_zero(v[static_cast<size_t>(c)])) continue;
            int r = row_of_pivot_[static_cast<size_t>(c)];
            if (r < 0) {
                if (lead == cols_) lead = c;
                continue;
            }
            V coef = v[static_cast<size_t>(c)];
            const Row& p = rows_[static_cast<size_t>(r)];
            for (int j = c; j < cols_; ++j)
                if (!K::is_zero(p[static_cast<size_t>(j)]))
                    v[static_cast<size_t>(j)] -= coef * p[static_cast<size_t>(j)];
        }
        return lead;
    }

    bool contains(Row v) const { return reduce(v) == cols_; }

    /// Insert a vector, keeping reduced echelon form. Returns true when the
    /// rank grew.
    bool insert(Row v) {
        int lead = reduce(v);
        if (lead == cols_) return false;
        V inv = K::inverse(v[static_cast<size_t>(lead)]);
        for (int j = lead; j < cols_; ++j)
            if (!K::is_zero(v[static_cast<size_t>(j)])) v[static_cast<size_t>(j)] = inv * v[static_cast<size_t>(j)];
        // clear the new pivot column in existing rows
        for (auto& row : rows_) {
            V coef = row[static_cast<size_t>(lead)];
            if (K::is_zero(coef)) continue;
            for (int j = lead; j < cols_; ++j)
                if (!K::is_zero(v[static_cast<size_t>(j)]))
                    row[static_cast<size_t>(j)] -= coef * v[static_cast<size_t>(j)];
        }
        // keep rows sorted by pivot column
        size_t at = rows_.size();
        for (size_t i = 0; i < rows_.size(); ++i)
            if (pivots_[i] > lead) {
                at = i;
                break;
            }
        rows_.insert(rows_.begin() + static_cast<long>(at), std::move(v));
        pivots_.insert(pivots_.begin() + static_cast<long>(at), lead);
        for (int c = 0; c < cols_; ++c)
            if (row_of_pivot_[static_cast<size_t>(c)] >= static_cast<int>(at))
                ++row_of_pivot_[static_cast<size_t>(c)];
        row_of_pivot_[static_cast<size_t>(lead)] = static_cast<int>(at);
        return true;
    }

    bool operator==(const EchelonBasis& o) const {
        return cols_ == o.cols_ && pivots_ == o.pivots_ && rows_ == o.rows_;
    }

    const std::vector<int>& pivots() const { return pivots_; }

  private:
    int cols_;
    std::vector<Row> rows_;
    std::vector<int> pivots_;
    std::vector<int> row_of_pivot_;
};

/// Basis of the solution space of M x = 0 (rows of constraints are the rows
/// of M, each of length n).
template <class K>
std::vector<std::vector<typename K::value_type>> kernel_basis(
    const std::vector<std::vector<typename K::value_type>>& constraints, int n) {
    EchelonBasis<K> ech(n);
    for (const auto& row : constraints) ech.insert(row);
    std::vector<std::vector<typename K::value_type>> out;
    for (int c = 0; c < n; ++c) {
        if (ech.pivot_row(c) >= 0) continue;
        std::vector<typename K::value_type> v(static_cast<size_t>(n), K::zero());
        v[static_cast<size_t>(c)] = K::one();
        for (size_t i = 0; i < ech.rows().size(); ++i) {
            const auto& row = ech.rows()[i];
            if (!K::is_zero(row[static_cast<size_t>(c)]))
                v[static_cast<size_t>(ech.pivots()[i])] = -row[static_cast<size_t>(c)];
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace semifiber
