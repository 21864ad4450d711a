#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hyperb {

/// Dense bit-packed matrix over GF(2), 64 columns per word.
///
/// reduce() brings the matrix into row-echelon form in place (row space
/// preserved) and returns the rank. Pivot selection always takes the lowest
/// available column. Large matrices go through a Four-Russians style window
/// elimination; the result is the same echelon form either way.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_(cols == 0 ? 1 : (cols + 63) / 64),
          data_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_; }

    void set(std::size_t r, std::size_t c, bool v = true) {
        uint64_t m = uint64_t(1) << (c & 63);
        if (v)
            data_[r * words_ + c / 64] |= m;
        else
            data_[r * words_ + c / 64] &= ~m;
    }
    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * words_ + c / 64] >> (c & 63)) & 1;
    }
    void flip(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] ^= uint64_t(1) << (c & 63); }

    uint64_t* row(std::size_t r) { return data_.data() + r * words_; }
    const uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }

    void append_row(const std::vector<uint64_t>& w);

    /// Echelon reduction in place. Returns the rank; pivot columns are
    /// available from pivot_cols() afterwards (strictly increasing).
    std::size_t reduce();

    std::size_t rank() const { return pivots_.size(); }
    const std::vector<std::size_t>& pivot_cols() const { return pivots_; }

    /// Membership of v (bit-packed, words_per_row() words) in the row space.
    /// Requires reduce() to have run.
    bool in_span(std::vector<uint64_t> v) const;

    /// Reduce v against the echelon rows in place; returns true iff v ends up zero.
    bool reduce_vector(std::vector<uint64_t>& v) const;

private:
    std::size_t reduce_plain();
    std::size_t reduce_windowed();
    void swap_rows(std::size_t a, std::size_t b);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 1;
    std::vector<uint64_t> data_;
    std::vector<std::size_t> pivots_;
};

} // namespace hyperb
