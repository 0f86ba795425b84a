#ifndef HOFFMAN_TYPES_HPP
#define HOFFMAN_TYPES_HPP

#include <Eigen/Dense>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hoffman {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};
struct DimensionMismatch : ValidationError {
  using ValidationError::ValidationError;
};
struct InfeasiblePoint : Error {
  using Error::Error;
};
struct Infeasible : Error {
  using Error::Error;
};
struct SizeLimitExceeded : Error {
  using Error::Error;
};
struct NumericalFailure : Error {
  using Error::Error;
};
struct UnknownBuiltin : Error {
  using Error::Error;
};
struct UnknownFixture : Error {
  using Error::Error;
};
struct ChainViolation : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

enum class NormKind { L1, L2, LInf };

/// The dual pairing: dual(L1)=LInf, dual(L2)=L2, dual(LInf)=L1.
constexpr NormKind dual(NormKind k) {
  switch (k) {
    case NormKind::L1:
      return NormKind::LInf;
    case NormKind::LInf:
      return NormKind::L1;
    default:
      return NormKind::L2;
  }
}

inline double norm_of(const Vector& v, NormKind k) {
  switch (k) {
    case NormKind::L1:
      return v.lpNorm<1>();
    case NormKind::LInf:
      return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
    default:
      return v.norm();
  }
}

std::string norm_name(NormKind k);
NormKind norm_from_name(const std::string& s);

// ---------------------------------------------------------------------------
// ModulusValue: a nonnegative extended real. +infinity is an explicit state,
// never a sentinel double, since the moduli genuinely take the value +inf.
// ---------------------------------------------------------------------------

class ModulusValue {
 public:
  ModulusValue() : finite_(0.0), infinite_(false) {}

  static ModulusValue of(double v) {
    if (!(v >= 0.0)) throw ValidationError("ModulusValue must be nonnegative");
    ModulusValue m;
    m.finite_ = v;
    return m;
  }
  static ModulusValue infinity() {
    ModulusValue m;
    m.infinite_ = true;
    return m;
  }

  bool is_infinite() const { return infinite_; }
  /// Finite value; throws when infinite.
  double value() const {
    if (infinite_) throw Error("ModulusValue is +infinity");
    return finite_;
  }
  /// Value as a double, +inf maps to the IEEE infinity (for printing only).
  double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : finite_;
  }

  friend bool operator<(const ModulusValue& a, const ModulusValue& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.finite_ < b.finite_;
  }
  friend bool operator==(const ModulusValue& a, const ModulusValue& b) {
    return a.infinite_ == b.infinite_ &&
           (a.infinite_ || a.finite_ == b.finite_);
  }

  static ModulusValue max(const ModulusValue& a, const ModulusValue& b) {
    return a < b ? b : a;
  }

 private:
  double finite_;
  bool infinite_;
};

// ---------------------------------------------------------------------------
// Index subsets with optional numeric certificate (a witness direction d or
// simplex weights, depending on the producing operation).
// ---------------------------------------------------------------------------

struct IndexSubset {
  std::vector<int> indices;  // strictly increasing
  std::optional<Vector> certificate;

  IndexSubset() = default;
  explicit IndexSubset(std::vector<int> idx) : indices(std::move(idx)) {}

  bool empty() const { return indices.empty(); }
  std::size_t size() const { return indices.size(); }
  bool contains(int t) const;
  void validate(int row_count) const;
};

bool operator==(const IndexSubset& a, const IndexSubset& b);

// ---------------------------------------------------------------------------
// The system sigma(b): rows a_t' x <= b_t with a fixed left-hand side and a
// perturbable right-hand side.
// ---------------------------------------------------------------------------

struct SystemRow {
  std::string label;
  Vector a;
};

class FiniteSystem {
 public:
  FiniteSystem(int n, std::vector<SystemRow> rows, NormKind norm);

  int dimension() const { return n_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const std::vector<SystemRow>& rows() const { return rows_; }
  const SystemRow& row(int t) const { return rows_.at(t); }
  NormKind norm() const { return norm_; }
  NormKind dual_norm() const { return dual(norm_); }

  /// Rows stacked as an m x n matrix.
  const Matrix& row_matrix() const { return A_; }
  bool is_zero_row(int t) const { return zero_row_[t]; }

 private:
  int n_;
  std::vector<SystemRow> rows_;
  NormKind norm_;
  Matrix A_;
  std::vector<bool> zero_row_;
};

struct Rhs {
  Vector b;

  Rhs() = default;
  explicit Rhs(Vector v) : b(std::move(v)) { validate(); }

  void validate() const;
  void check_matches(const FiniteSystem& sys) const;
};

// ---------------------------------------------------------------------------
// Tolerances shared across the computation modules. All of them are
// overridable from the CLI and echoed in reports.
// ---------------------------------------------------------------------------

struct Tolerances {
  double tol_active = 1e-9;  // relative activity threshold
  double tol_strict = 1e-8;  // absolute slack defining a "strict" inequality
  double tol_rank = 1e-9;    // relative singular-value cutoff
  double tol_feas = 1e-8;    // feasibility slack for computed points
  double dedupe = 1e-7;      // vertex deduplication radius (relative)
};

}  // namespace hoffman

#endif  // HOFFMAN_TYPES_HPP
