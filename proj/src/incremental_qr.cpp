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

#include "srt/incremental_qr.hpp"

#include <cmath>
#include <limits>

#include "srt/errors.hpp"

namespace srt {

IncrementalQr::IncrementalQr(std::span<const double> rhs)
    : rows_(rhs.size()), transformed_rhs_(rhs.begin(), rhs.end()) {
    if (rhs.empty()) throw InvalidArgument("IncrementalQr: empty right-hand side");
    tail_sq_ = tail_norm_sq(0);
    rhs_norm_sq_ = tail_sq_;
}

double IncrementalQr::tail_norm_sq(std::size_t from) const {
    double s = 0.0;
    for (std::size_t i = from; i < rows_; ++i) s += transformed_rhs_[i] * transformed_rhs_[i];
    return s;
}

void IncrementalQr::apply(const Reflector& h, std::size_t k, std::span<double> y) const {
    if (h.tau != 0.0) {
        double s = y[k];
        for (std::size_t i = 1; i < h.v.size(); ++i) s += h.v[i] * y[k + i];
        s *= h.tau;
        y[k] -= s;
        for (std::size_t i = 1; i < h.v.size(); ++i) y[k + i] -= s * h.v[i];
    }
    if (h.flip) y[k] = -y[k];
}

void IncrementalQr::unapply(const Reflector& h, std::size_t k, std::span<double> y) const {
    // (S H)^{-1} = H S: H is an involution.
    if (h.flip) y[k] = -y[k];
    if (h.tau != 0.0) {
        double s = y[k];
        for (std::size_t i = 1; i < h.v.size(); ++i) s += h.v[i] * y[k + i];
        s *= h.tau;
        y[k] -= s;
        for (std::size_t i = 1; i < h.v.size(); ++i) y[k + i] -= s * h.v[i];
    }
}

void IncrementalQr::append_column(std::span<const double> column) {
    const std::size_t k = cols();
    if (column.size() != rows_) throw InvalidArgument("IncrementalQr: column length mismatch");
    if (k == rows_) throw ColumnLimit("IncrementalQr: column count reached the row count");

    std::vector<double> a(column.begin(), column.end());
    for (std::size_t l = 0; l < k; ++l) apply(reflectors_[l], l, a);

    Reflector h;
    h.v.assign(a.begin() + static_cast<std::ptrdiff_t>(k), a.end());
    const double alpha = h.v[0];
    double tail = 0.0;
    for (std::size_t i = 1; i < h.v.size(); ++i) tail += h.v[i] * h.v[i];
    const double sigma = std::sqrt(alpha * alpha + tail);

    double diag = 0.0;
    if (tail == 0.0) {
        // Already upper triangular; only the sign may need fixing.
        h.tau = 0.0;
        h.flip = alpha < 0.0;
        diag = std::abs(alpha);
    } else {
        const double beta = -std::copysign(sigma, alpha);
        const double scale = 1.0 / (alpha - beta);
        for (std::size_t i = 1; i < h.v.size(); ++i) h.v[i] *= scale;
        h.v[0] = 1.0;
        h.tau = (beta - alpha) / beta;
        h.flip = beta < 0.0;
        diag = std::abs(beta);
    }

    std::vector<double> rcol(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k));
    rcol.push_back(diag);

    pending_ = Snapshot{{transformed_rhs_.begin() + static_cast<std::ptrdiff_t>(k), transformed_rhs_.end()},
                        tail_sq_};
    apply(h, k, transformed_rhs_);
    reflectors_.push_back(std::move(h));
    r_cols_.push_back(std::move(rcol));
    tail_sq_ = tail_norm_sq(k + 1);
}

void IncrementalQr::drop_last() {
    if (reflectors_.empty()) throw InvalidArgument("IncrementalQr::drop_last: no columns");
    const std::size_t k = cols() - 1;
    if (pending_) {
        std::copy(pending_->rhs_tail.begin(), pending_->rhs_tail.end(),
                  transformed_rhs_.begin() + static_cast<std::ptrdiff_t>(k));
        tail_sq_ = pending_->tail_sq;
        pending_.reset();
    } else {
        unapply(reflectors_.back(), k, transformed_rhs_);
        tail_sq_ = tail_norm_sq(k);
    }
    reflectors_.pop_back();
    r_cols_.pop_back();
}

namespace {

void back_substitute(const std::vector<std::vector<double>>& r_cols, std::vector<double>& x) {
    for (std::size_t ii = x.size(); ii-- > 0;) {
        const double d = r_cols[ii][ii];
        if (d == 0.0) throw RankDeficient("IncrementalQr::solve: zero diagonal entry in R");
        x[ii] /= d;
        const double xi = x[ii];
        const auto& col = r_cols[ii];
        for (std::size_t i = 0; i < ii; ++i) x[i] -= col[i] * xi;
    }
}

} // namespace

std::vector<double> IncrementalQr::solve() const {
    const std::size_t n = cols();
    if (n == 0) throw InvalidArgument("IncrementalQr::solve: no columns");
    std::vector<double> x(transformed_rhs_.begin(), transformed_rhs_.begin() + static_cast<std::ptrdiff_t>(n));
    back_substitute(r_cols_, x);
    return x;
}

std::vector<double> IncrementalQr::solve(std::span<const double> rhs) const {
    const std::size_t n = cols();
    if (n == 0) throw InvalidArgument("IncrementalQr::solve: no columns");
    if (rhs.size() != rows_) throw InvalidArgument("IncrementalQr::solve: rhs length mismatch");
    std::vector<double> y(rhs.begin(), rhs.end());
    for (std::size_t k = 0; k < n; ++k) apply(reflectors_[k], k, y);
    y.resize(n);
    back_substitute(r_cols_, y);
    return y;
}

double IncrementalQr::condition_estimate() const {
    if (r_cols_.empty()) throw InvalidArgument("IncrementalQr::condition_estimate: no columns");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t l = 0; l < r_cols_.size(); ++l) {
        const double d = std::abs(r_cols_[l][l]);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

double IncrementalQr::r(std::size_t i, std::size_t j) const {
    if (j >= cols() || i >= cols()) throw InvalidArgument("IncrementalQr::r: index out of range");
    return i <= j ? r_cols_[j][i] : 0.0;
}

bool IncrementalQr::operator==(const IncrementalQr& other) const {
    return rows_ == other.rows_ && transformed_rhs_ == other.transformed_rhs_ &&
           reflectors_ == other.reflectors_ && r_cols_ == other.r_cols_ && tail_sq_ == other.tail_sq_ &&
           rhs_norm_sq_ == other.rhs_norm_sq_;
}

} // namespace srt
