#ifndef LIE2KIT_TENSOR_HPP
#define LIE2KIT_TENSOR_HPP

#include "lie2kit/poly.hpp"

#include <map>
#include <optional>
#include <vector>

namespace lie2kit {

using Section = std::vector<Poly>;

/// Row-major matrix of polynomials; a bundle map sends the j-th source frame
/// element to sum_k M(k, j) times the k-th target frame element.
class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(int dim, int rows, int cols);

  static PolyMatrix identity(int dim, int n);
  static PolyMatrix from_rationals(int dim, const std::vector<std::vector<Rational>> &rows);

  int dim() const { return dim_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Poly &operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Poly &operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  Section apply(const Section &s) const;
  PolyMatrix transpose() const;
  PolyMatrix operator*(const PolyMatrix &o) const;
  PolyMatrix operator+(const PolyMatrix &o) const;
  PolyMatrix operator-(const PolyMatrix &o) const;
  PolyMatrix scale(const Rational &r) const;
  bool is_zero() const;
  bool is_constant() const;
  bool operator==(const PolyMatrix &o) const;
  bool operator!=(const PolyMatrix &o) const { return !(*this == o); }

  Poly det() const;
  /// Inverse of a square matrix whose determinant is a nonzero constant.
  std::optional<PolyMatrix> inverse() const;
  /// Column j as a section of the target bundle.
  Section column(int j) const;

private:
  int dim_ = 0, rows_ = 0, cols_ = 0;
  std::vector<Poly> data_;
};

/// Polynomial tensor with antisymmetric index groups. Only strictly increasing
/// tuples inside each group are stored; all other reads are derived.
class PolyTensor {
public:
  struct Group {
    int start;
    int len;
    bool operator==(const Group &o) const { return start == o.start && len == o.len; }
  };

  PolyTensor() = default;
  PolyTensor(int dim, std::vector<int> shape, std::vector<Group> groups = {});

  int dim() const { return dim_; }
  const std::vector<int> &shape() const { return shape_; }
  const std::vector<Group> &groups() const { return groups_; }
  int rank() const { return static_cast<int>(shape_.size()); }

  Poly get(const std::vector<int> &idx) const;
  void set(const std::vector<int> &idx, const Poly &v);
  void add(const std::vector<int> &idx, const Poly &v);

  /// Stored (canonical, nonzero) entries.
  const std::map<std::vector<int>, Poly> &entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  bool same_shape(const PolyTensor &o) const;
  bool operator==(const PolyTensor &o) const;
  bool operator!=(const PolyTensor &o) const { return !(*this == o); }
  PolyTensor operator+(const PolyTensor &o) const;
  PolyTensor operator-() const;

  /// Visit every index tuple of the full shape.
  template <class F> void for_each_index(F &&f) const {
    std::vector<int> idx(shape_.size(), 0);
    for (int s : shape_)
      if (s == 0)
        return;
    while (true) {
      f(static_cast<const std::vector<int> &>(idx));
      int k = static_cast<int>(idx.size()) - 1;
      while (k >= 0 && ++idx[k] == shape_[k])
        idx[k--] = 0;
      if (k < 0)
        return;
    }
  }

  /// Returns the sign (0, 1, -1) and canonical tuple of idx.
  int canonical(std::vector<int> &idx) const;

private:
  void check_index(const std::vector<int> &idx) const;

  int dim_ = 0;
  std::vector<int> shape_;
  std::vector<Group> groups_;
  std::map<std::vector<int>, Poly> entries_;
};

/// Constant rational matrices for subspace bookkeeping.
using RatMatrix = std::vector<std::vector<Rational>>;

int rat_rank(const RatMatrix &m, int cols);
/// Basis (as rows) of {v : m v = 0}, with cols = length of v.
RatMatrix rat_nullspace(const RatMatrix &m, int cols);
RatMatrix rat_transpose(const RatMatrix &m, int rows, int cols);
/// Inverse of a square nonsingular matrix.
RatMatrix rat_inverse(const RatMatrix &m);

} // namespace lie2kit

#endif
