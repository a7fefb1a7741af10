#include "omqa/bound.hpp"

#include "omqa/error.hpp"

namespace omqa {

BoundFunction::BoundFunction(std::vector<std::size_t> table, std::size_t slope, std::size_t offset)
    : table_(std::move(table)), slope_(slope), offset_(offset) {
  if (slope_ < 1) throw Error("bound function slope must be >= 1");
  for (std::size_t n = 0; n < table_.size(); ++n) {
    if (table_[n] < n) throw Error("bound function table violates l(n) >= n at n = " + std::to_string(n));
    if (n > 0 && table_[n] < table_[n - 1])
      throw Error("bound function table must be non-decreasing");
  }
  if (!table_.empty() && slope_ * table_.size() + offset_ < table_.back())
    throw Error("bound function tail drops below the last table entry");
}

BoundFunction BoundFunction::affine(std::size_t slope, std::size_t offset) {
  return BoundFunction({}, slope, offset);
}

BoundFunction BoundFunction::table(std::vector<std::size_t> values, std::size_t slope,
                                   std::size_t offset) {
  return BoundFunction(std::move(values), slope, offset);
}

std::size_t BoundFunction::operator()(std::size_t n) const {
  if (n < table_.size()) return table_[n];
  return slope_ * n + offset_;
}

std::string toString(const BoundFunction& bound) {
  std::string out;
  if (!bound.tableValues().empty()) {
    out += "table";
    for (auto v : bound.tableValues()) out += " " + std::to_string(v);
    out += " ; ";
  }
  return out + "affine " + std::to_string(bound.slope()) + " " + std::to_string(bound.offset());
}

}  // namespace omqa
