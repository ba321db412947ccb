#pragma once

#include <vector>

#include "netsched/types.hpp"

namespace netsched {

/// Incrementally computed matrix powers A^0, A^1, ..., grown on demand and
/// shared across Gramian assembly, communicability profiles and schedule
/// construction within one analysis run. Not thread-safe; confine one cache
/// per worker.
class PowerCache {
public:
    explicit PowerCache(Matrix a) : a_(std::move(a)) {
        powers_.push_back(Matrix::Identity(a_.rows(), a_.cols()));
    }

    const Matrix& base() const { return a_; }

    /// A^k, computed as A * A^{k-1} on first request.
    const Matrix& power(int k) {
        while (static_cast<int>(powers_.size()) <= k) powers_.push_back(a_ * powers_.back());
        return powers_[k];
    }

private:
    Matrix a_;
    std::vector<Matrix> powers_;
};

}  // namespace netsched
