#include "reviham/linsolve.hpp"

#include <numeric>
#include <stdexcept>

namespace reviham {

PrioritizedRref& PrioritizedRref::compute(const MatrixXr& a, std::vector<Eigen::Index> priority) {
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    if (priority.empty()) {
        priority.resize(static_cast<std::size_t>(cols));
        std::iota(priority.begin(), priority.end(), Eigen::Index{0});
    }
    if (static_cast<Eigen::Index>(priority.size()) != cols) {
        throw std::invalid_argument("column priority must list every column once");
    }
    reduced_ = a;
    transform_ = MatrixXr::Identity(rows, rows);
    pivot_cols_.clear();

    Eigen::Index next_row = 0;
    for (const Eigen::Index col : priority) {
        if (next_row == rows) break;
        Eigen::Index pivot = -1;
        for (Eigen::Index r = next_row; r < rows; ++r) {
            if (reduced_(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != next_row) {
            reduced_.row(pivot).swap(reduced_.row(next_row));
            transform_.row(pivot).swap(transform_.row(next_row));
        }
        const Rational inv = 1 / reduced_(next_row, col);
        reduced_.row(next_row) *= inv;
        transform_.row(next_row) *= inv;
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (r == next_row || reduced_(r, col) == 0) continue;
            const Rational f = reduced_(r, col);
            reduced_.row(r) -= f * reduced_.row(next_row);
            transform_.row(r) -= f * transform_.row(next_row);
        }
        pivot_cols_.push_back(col);
        ++next_row;
    }
    return *this;
}

std::optional<VectorXr> PrioritizedRref::solve(const VectorXr& b) const {
    if (b.size() != transform_.rows()) throw std::invalid_argument("right-hand side has the wrong length");
    const VectorXr eb = transform_ * b;
    for (Eigen::Index r = rank(); r < eb.size(); ++r) {
        if (eb(r) != 0) return std::nullopt;
    }
    VectorXr x = VectorXr::Zero(reduced_.cols());
    for (std::size_t i = 0; i < pivot_cols_.size(); ++i) x(pivot_cols_[i]) = eb(static_cast<Eigen::Index>(i));
    return x;
}

Eigen::Index exact_rank(const MatrixXr& a) { return PrioritizedRref(a, {}).rank(); }

}  // namespace reviham
