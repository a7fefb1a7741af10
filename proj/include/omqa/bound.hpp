#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace omqa {

/// A bound function ℓ with ℓ(n) >= n, either affine (a*n + b, a >= 1,
/// b >= 0) or an explicit table ℓ(0), ℓ(1), ... followed by an affine tail.
/// Tables must be monotone and must not exceed their tail.
class BoundFunction {
 public:
  static BoundFunction affine(std::size_t slope, std::size_t offset);
  static BoundFunction table(std::vector<std::size_t> values, std::size_t slope,
                             std::size_t offset);
  static BoundFunction identity() { return affine(1, 0); }

  std::size_t operator()(std::size_t n) const;

  const std::vector<std::size_t>& tableValues() const { return table_; }
  std::size_t slope() const { return slope_; }
  std::size_t offset() const { return offset_; }

  bool operator==(const BoundFunction&) const = default;

 private:
  BoundFunction(std::vector<std::size_t> table, std::size_t slope, std::size_t offset);

  std::vector<std::size_t> table_;
  std::size_t slope_ = 1;
  std::size_t offset_ = 0;
};

std::string toString(const BoundFunction& bound);

}  // namespace omqa
