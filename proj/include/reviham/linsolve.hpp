#pragma once

#include "reviham/rational.hpp"

#include <optional>
#include <vector>

namespace reviham {

/// Reduced row echelon form of an exact matrix with a caller-chosen column
/// priority. Columns are considered for pivoting in priority order; a column
/// that gets no pivot is a free unknown and is set to zero by solve(). This
/// makes the selected solution deterministic and prefers the earliest columns.
class PrioritizedRref {
public:
    PrioritizedRref() = default;
    PrioritizedRref(const MatrixXr& a, std::vector<Eigen::Index> priority) { compute(a, std::move(priority)); }

    /// Natural column order when priority is empty.
    PrioritizedRref& compute(const MatrixXr& a, std::vector<Eigen::Index> priority = {});

    Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_cols_.size()); }
    const std::vector<Eigen::Index>& pivot_columns() const { return pivot_cols_; }

    /// A solution of A x = b, or nullopt when the system is inconsistent.
    std::optional<VectorXr> solve(const VectorXr& b) const;

private:
    MatrixXr reduced_;      // R = E A
    MatrixXr transform_;    // E, accumulated row operations
    std::vector<Eigen::Index> pivot_cols_;
};

Eigen::Index exact_rank(const MatrixXr& a);

}  // namespace reviham
