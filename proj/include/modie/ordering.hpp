#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modie/error.hpp"
#include "modie/model.hpp"

namespace modie {

/// Presence/absence row of an occupancy matrix, packed into 64-bit words.
class BitRow {
 public:
  BitRow() = default;
  BitRow(std::string label, std::size_t length);

  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return length_; }
  bool test(std::size_t bit) const noexcept { return (words_[bit >> 6] >> (bit & 63)) & 1u; }
  void set(std::size_t bit) noexcept { words_[bit >> 6] |= std::uint64_t{1} << (bit & 63); }
  std::size_t count() const noexcept;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  std::string label_;
  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class OrderingErrorCode { LengthMismatch, EmptyMatrix };

using OrderingError = CodedError<OrderingErrorCode>;

/// Bit c of each row is set iff the count in column c is positive.
std::vector<BitRow> binarize(const OccupancyMatrix& matrix);

/// Number of differing positions; throws LengthMismatch on unequal lengths.
std::size_t hamming(const BitRow& u, const BitRow& v);

/// Greedy nearest-neighbour chain over the binarized rows.
///
/// The seed is the row with the most set bits (ties: smallest label). Each
/// step appends the unplaced row closest to the last placed one; ties go to
/// the row closer to the seed, then to the smallest label. Returns source
/// row indices in display order.
std::vector<std::size_t> seriate_rows(const OccupancyMatrix& matrix);

/// Identity order, for callers that keep first-appearance order.
std::vector<std::size_t> identity_order(std::size_t rows);

}  // namespace modie
