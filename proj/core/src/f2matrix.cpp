#include "hyperb/f2matrix.hpp"

#include <cassert>
#include <stdexcept>

namespace hyperb {

namespace {
// Window width for the Four-Russians pass: 2^8 table rows per window.
constexpr std::size_t kWindow = 8;
// Estimated word-XOR budget above which the windowed pass pays off.
constexpr std::size_t kWindowThreshold = std::size_t(1) << 28;
} // namespace

void F2Matrix::append_row(const std::vector<uint64_t>& w) {
    if (w.size() != words_)
        throw std::invalid_argument("F2Matrix::append_row: width mismatch");
    data_.insert(data_.end(), w.begin(), w.end());
    ++rows_;
}

void F2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    uint64_t* ra = row(a);
    uint64_t* rb = row(b);
    for (std::size_t w = 0; w < words_; ++w) std::swap(ra[w], rb[w]);
}

std::size_t F2Matrix::reduce() {
    pivots_.clear();
    if (rows_ == 0 || cols_ == 0) return 0;
    if (rows_ / 2 * rows_ * words_ >= kWindowThreshold && rows_ > 2 * kWindow)
        return reduce_windowed();
    return reduce_plain();
}

std::size_t F2Matrix::reduce_plain() {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        std::size_t pivot = rows_;
        for (std::size_t r = rank; r < rows_; ++r) {
            if (get(r, c)) { pivot = r; break; }
        }
        if (pivot == rows_) continue;
        swap_rows(rank, pivot);
        const uint64_t* pr = row(rank);
        for (std::size_t r = rank + 1; r < rows_; ++r) {
            if (!get(r, c)) continue;
            uint64_t* rr = row(r);
            for (std::size_t w = c / 64; w < words_; ++w) rr[w] ^= pr[w];
        }
        pivots_.push_back(c);
        ++rank;
    }
    return rank;
}

// Window elimination: collect up to kWindow pivots from a column window with
// a small Gauss pass over per-row window bytes, then clear the window in all
// remaining rows with one table lookup (all 2^k combinations of the reduced
// pivot rows) and one full-row XOR each.
std::size_t F2Matrix::reduce_windowed() {
    std::size_t rank = 0;
    std::vector<uint8_t> win;    // window byte per remaining row
    std::vector<uint8_t> combo;  // which local pivots were applied
    std::vector<uint64_t> table; // 2^k combination rows
    std::vector<uint64_t> reduced_pivot(kWindow * words_);

    std::size_t c0 = 0;
    while (c0 < cols_ && rank < rows_) {
        const std::size_t kw = std::min(kWindow, cols_ - c0);
        const std::size_t nrem = rows_ - rank;

        // Extract window bits [c0, c0+kw) of every remaining row.
        win.assign(nrem, 0);
        combo.assign(nrem, 0);
        const std::size_t w0 = c0 / 64, sh = c0 & 63;
        for (std::size_t i = 0; i < nrem; ++i) {
            const uint64_t* r = row(rank + i);
            uint64_t bits = r[w0] >> sh;
            if (sh != 0 && w0 + 1 < words_) bits |= r[w0 + 1] << (64 - sh);
            win[i] = uint8_t(bits & ((kw == 64 ? ~uint64_t(0) : (uint64_t(1) << kw) - 1)));
        }

        // Mini-Gauss on the byte column, tracking combinations.
        struct LocalPivot {
            std::size_t srow;  // physical row index after swaps
            uint8_t col;       // bit within window
        };
        std::vector<LocalPivot> local;
        for (uint8_t bit = 0; bit < kw && local.size() < kw; ++bit) {
            std::size_t found = nrem;
            for (std::size_t i = local.size(); i < nrem; ++i) {
                if ((win[i] >> bit) & 1) { found = i; break; }
            }
            if (found == nrem) continue;
            const std::size_t j = local.size();
            std::swap(win[found], win[j]);
            std::swap(combo[found], combo[j]);
            swap_rows(rank + found, rank + j);
            const uint8_t pattern = win[j];
            for (std::size_t i = j + 1; i < nrem; ++i) {
                if ((win[i] >> bit) & 1) {
                    win[i] ^= pattern;
                    combo[i] ^= uint8_t(1) << j;
                }
            }
            local.push_back({rank + j, bit});
        }
        const std::size_t k = local.size();
        if (k == 0) { c0 += kw; continue; }

        // Reduced pivot rows: pivot j minus the earlier pivots recorded in its
        // combo byte (combo bits refer to reduced rows, so build in order).
        for (std::size_t j = 0; j < k; ++j) {
            uint64_t* dst = reduced_pivot.data() + j * words_;
            const uint64_t* src = row(local[j].srow);
            for (std::size_t w = 0; w < words_; ++w) dst[w] = src[w];
            uint8_t cb = combo[j];
            for (std::size_t i = 0; i < j; ++i) {
                if ((cb >> i) & 1) {
                    const uint64_t* pi = reduced_pivot.data() + i * words_;
                    for (std::size_t w = 0; w < words_; ++w) dst[w] ^= pi[w];
                }
            }
        }
        // Store reduced pivots back so the echelon rows are the reduced ones.
        for (std::size_t j = 0; j < k; ++j) {
            uint64_t* dst = row(local[j].srow);
            const uint64_t* src = reduced_pivot.data() + j * words_;
            for (std::size_t w = 0; w < words_; ++w) dst[w] = src[w];
        }

        // Combination table over the reduced pivot rows, Gray-code order.
        const std::size_t tsize = std::size_t(1) << k;
        table.assign(tsize * words_, 0);
        for (std::size_t g = 1; g < tsize; ++g) {
            const unsigned low = __builtin_ctzll(g);
            const uint64_t* prev = table.data() + (g ^ (std::size_t(1) << low)) * words_;
            const uint64_t* piv = reduced_pivot.data() + low * words_;
            uint64_t* dst = table.data() + g * words_;
            for (std::size_t w = 0; w < words_; ++w) dst[w] = prev[w] ^ piv[w];
        }

        // Clear the window of every non-pivot row with one table XOR.
        for (std::size_t i = k; i < nrem; ++i) {
            assert(win[i] == 0);
            const uint8_t cb = combo[i];
            if (cb == 0) continue;
            uint64_t* rr = row(rank + i);
            const uint64_t* t = table.data() + std::size_t(cb) * words_;
            for (std::size_t w = 0; w < words_; ++w) rr[w] ^= t[w];
        }

        for (std::size_t j = 0; j < k; ++j) pivots_.push_back(c0 + local[j].col);
        rank += k;
        c0 += kw;
    }
    return rank;
}

bool F2Matrix::reduce_vector(std::vector<uint64_t>& v) const {
    if (v.size() != words_)
        throw std::invalid_argument("F2Matrix::reduce_vector: width mismatch");
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const std::size_t c = pivots_[i];
        if ((v[c / 64] >> (c & 63)) & 1) {
            const uint64_t* pr = row(i);
            for (std::size_t w = 0; w < words_; ++w) v[w] ^= pr[w];
        }
    }
    for (uint64_t w : v)
        if (w != 0) return false;
    return true;
}

bool F2Matrix::in_span(std::vector<uint64_t> v) const { return reduce_vector(v); }

} // namespace hyperb
