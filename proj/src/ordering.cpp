#include "modie/ordering.hpp"

#include <bit>
#include <numeric>

namespace modie {

BitRow::BitRow(std::string label, std::size_t length)
    : label_(std::move(label)), length_(length), words_((length + 63) / 64, 0) {}

std::size_t BitRow::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<BitRow> binarize(const OccupancyMatrix& matrix) {
  const auto& grid = matrix.counts();
  std::vector<BitRow> rows;
  rows.reserve(static_cast<std::size_t>(grid.rows()));
  for (Eigen::Index r = 0; r < grid.rows(); ++r) {
    BitRow row(matrix.row_labels()[static_cast<std::size_t>(r)], static_cast<std::size_t>(grid.cols()));
    for (Eigen::Index c = 0; c < grid.cols(); ++c)
      if (grid(r, c) > 0) row.set(static_cast<std::size_t>(c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t hamming(const BitRow& u, const BitRow& v) {
  if (u.size() != v.size())
    throw OrderingError(OrderingErrorCode::LengthMismatch,
                        "hamming: lengths " + std::to_string(u.size()) + " and " + std::to_string(v.size()) + " differ");
  const auto& a = u.words();
  const auto& b = v.words();
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  return d;
}

std::vector<std::size_t> seriate_rows(const OccupancyMatrix& matrix) {
  if (matrix.rows() == 0) throw OrderingError(OrderingErrorCode::EmptyMatrix, "seriate_rows: matrix has no rows");
  const std::vector<BitRow> rows = binarize(matrix);
  const std::size_t n = rows.size();

  std::size_t seed = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const auto ci = rows[i].count();
    const auto cs = rows[seed].count();
    if (ci > cs || (ci == cs && rows[i].label() < rows[seed].label())) seed = i;
  }

  std::vector<std::size_t> to_seed(n);
  for (std::size_t i = 0; i < n; ++i) to_seed[i] = hamming(rows[i], rows[seed]);

  std::vector<std::size_t> order{seed};
  std::vector<bool> placed(n, false);
  placed[seed] = true;
  order.reserve(n);
  while (order.size() < n) {
    const BitRow& last = rows[order.back()];
    std::size_t best = n;
    std::size_t best_d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      const std::size_t d = hamming(last, rows[i]);
      if (best == n || d < best_d ||
          (d == best_d && (to_seed[i] < to_seed[best] ||
                           (to_seed[i] == to_seed[best] && rows[i].label() < rows[best].label())))) {
        best = i;
        best_d = d;
      }
    }
    placed[best] = true;
    order.push_back(best);
  }
  return order;
}

std::vector<std::size_t> identity_order(std::size_t rows) {
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

}  // namespace modie
