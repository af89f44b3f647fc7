/*
 * Copyright 2026 The srt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace srt {

/**
 * Column-by-column Householder QR of a tall N x j least-squares system.
 *
 * Q is never formed. Each appended column is pushed through the stored
 * reflectors, a new reflector zeroes its tail, and the same transform is
 * applied to the right-hand side. The diagonal of R is kept nonnegative.
 *
 * The most recent append keeps a snapshot of the right-hand-side entries it
 * touched, so drop_last() directly after append_column() restores the prior
 * state bit for bit. Older columns are removed by re-applying their reflector.
 */
class IncrementalQr {
public:
    explicit IncrementalQr(std::span<const double> rhs);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return reflectors_.size(); }

    /// Throws ColumnLimit when cols() == rows().
    void append_column(std::span<const double> column);
    void drop_last();

    /// R^{-1} Q^T rhs by back substitution. Throws RankDeficient on a zero diagonal.
    std::vector<double> solve() const;
    /// Same factorization, fresh right-hand side of length rows().
    std::vector<double> solve(std::span<const double> rhs) const;

    /// max |R_ll| / min |R_ll|; +inf if some diagonal entry is zero.
    double condition_estimate() const;

    /// Entry (i, j) of R, zero below the diagonal.
    double r(std::size_t i, std::size_t j) const;
    double diagonal(std::size_t l) const { return r_cols_[l][l]; }

    /// Leading cols() entries of Q^T rhs.
    std::span<const double> qty() const { return {transformed_rhs_.data(), cols()}; }

    /// Squared norm of the part of rhs orthogonal to the column span.
    double rhs_tail_sq() const { return tail_sq_; }

    double rhs_norm_sq() const { return rhs_norm_sq_; }

    /// Compares the factorization and transformed right-hand side; rollback snapshots are ignored.
    bool operator==(const IncrementalQr& other) const;

private:
    struct Reflector {
        std::vector<double> v; ///< v[0] == 1 implicitly stored; length rows - k
        double tau = 0.0;
        bool flip = false;     ///< row k negated after the reflection

        bool operator==(const Reflector&) const = default;
    };
    struct Snapshot {
        std::vector<double> rhs_tail;
        double tail_sq = 0.0;
    };

    void apply(const Reflector& h, std::size_t k, std::span<double> y) const;
    void unapply(const Reflector& h, std::size_t k, std::span<double> y) const;
    double tail_norm_sq(std::size_t from) const;

    std::size_t rows_ = 0;
    std::vector<double> transformed_rhs_;
    std::vector<Reflector> reflectors_;
    std::vector<std::vector<double>> r_cols_; ///< column l holds R(0..l, l)
    double tail_sq_ = 0.0;
    double rhs_norm_sq_ = 0.0;
    std::optional<Snapshot> pending_;
};

} // namespace srt
