#include "hoffman/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hoffman {

std::string norm_name(NormKind k) {
  switch (k) {
    case NormKind::L1:
      return "l1";
    case NormKind::LInf:
      return "linf";
    default:
      return "l2";
  }
}

NormKind norm_from_name(const std::string& s) {
  if (s == "l1") return NormKind::L1;
  if (s == "l2") return NormKind::L2;
  if (s == "linf") return NormKind::LInf;
  throw ValidationError("unknown norm '" + s + "' (expected l1, l2 or linf)");
}

bool IndexSubset::contains(int t) const {
  return std::binary_search(indices.begin(), indices.end(), t);
}

void IndexSubset::validate(int row_count) const {
  int prev = -1;
  for (int t : indices) {
    if (t <= prev || t < 0 || t >= row_count)
      throw ValidationError("IndexSubset must be strictly increasing and within the row count");
    prev = t;
  }
}

bool operator==(const IndexSubset& a, const IndexSubset& b) {
  return a.indices == b.indices;
}

FiniteSystem::FiniteSystem(int n, std::vector<SystemRow> rows, NormKind norm)
    : n_(n), rows_(std::move(rows)), norm_(norm) {
  if (n_ <= 0) throw ValidationError("ambient dimension must be positive");
  if (rows_.empty()) throw ValidationError("a system needs at least one row");
  std::set<std::string> labels;
  for (const auto& r : rows_) {
    if (r.a.size() != n_)
      throw DimensionMismatch("row '" + r.label + "' has length " +
                              std::to_string(r.a.size()) + ", expected " +
                              std::to_string(n_));
    if (!r.a.allFinite())
      throw ValidationError("row '" + r.label + "' has non-finite entries");
    if (!labels.insert(r.label).second)
      throw ValidationError("duplicate row label '" + r.label + "'");
  }
  A_.resize(rows_.size(), n_);
  zero_row_.resize(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    A_.row(i) = rows_[i].a.transpose();
    zero_row_[i] = rows_[i].a.isZero(0.0);
  }
}

void Rhs::validate() const {
  if (!b.allFinite()) throw ValidationError("right-hand side has non-finite entries");
}

void Rhs::check_matches(const FiniteSystem& sys) const {
  if (b.size() != sys.row_count())
    throw DimensionMismatch("right-hand side has " + std::to_string(b.size()) +
                            " entries, system has " +
                            std::to_string(sys.row_count()) + " rows");
}

}  // namespace hoffman
