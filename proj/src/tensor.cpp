#include "lie2kit/tensor.hpp"

#include <algorithm>

namespace lie2kit {

PolyMatrix::PolyMatrix(int dim, int rows, int cols)
    : dim_(dim), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, Poly(dim)) {
  if (rows < 0 || cols < 0)
    throw StructuralError("negative matrix shape");
}

PolyMatrix PolyMatrix::identity(int dim, int n) {
  PolyMatrix m(dim, n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = Poly::constant(dim, 1);
  return m;
}

PolyMatrix PolyMatrix::from_rationals(int dim, const std::vector<std::vector<Rational>> &rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  PolyMatrix m(dim, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw StructuralError("ragged matrix");
    for (int j = 0; j < c; ++j)
      m(i, j) = Poly::constant(dim, rows[i][j]);
  }
  return m;
}

Section PolyMatrix::apply(const Section &s) const {
  if (static_cast<int>(s.size()) != cols_)
    throw StructuralError("bundle map applied to section of rank " + std::to_string(s.size()) +
                          ", expected " + std::to_string(cols_));
  Section out(rows_, Poly(dim_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero() && !s[j].is_zero())
        out[i] += (*this)(i, j) * s[j];
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(dim_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix &o) const {
  if (cols_ != o.rows_)
    throw StructuralError("matrix product shape mismatch");
  PolyMatrix r(dim_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k)
      if (!(*this)(i, k).is_zero())
        for (int j = 0; j < o.cols_; ++j)
          r(i, j) += (*this)(i, k) * o(k, j);
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw StructuralError("matrix sum shape mismatch");
  PolyMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k)
    r.data_[k] += o.data_[k];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix &o) const { return *this + o.scale(-1); }

PolyMatrix PolyMatrix::scale(const Rational &r) const {
  PolyMatrix m = *this;
  for (auto &p : m.data_)
    p = p.scale(r);
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly &p) { return p.is_zero(); });
}

bool PolyMatrix::is_constant() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly &p) { return p.is_constant(); });
}

bool PolyMatrix::operator==(const PolyMatrix &o) const {
  return dim_ == o.dim_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Poly PolyMatrix::det() const {
  if (rows_ != cols_)
    throw StructuralError("determinant of non-square matrix");
  // Laplace expansion along the first row; sizes here are tiny.
  if (rows_ == 0)
    return Poly::constant(dim_, 1);
  if (rows_ == 1)
    return (*this)(0, 0);
  Poly d(dim_);
  for (int j = 0; j < cols_; ++j) {
    if ((*this)(0, j).is_zero())
      continue;
    PolyMatrix minor(dim_, rows_ - 1, cols_ - 1);
    for (int i = 1; i < rows_; ++i)
      for (int k = 0, kk = 0; k < cols_; ++k)
        if (k != j)
          minor(i - 1, kk++) = (*this)(i, k);
    Poly t = (*this)(0, j) * minor.det();
    d += (j % 2 == 0) ? t : -t;
  }
  return d;
}

std::optional<PolyMatrix> PolyMatrix::inverse() const {
  if (rows_ != cols_)
    return std::nullopt;
  Poly d = det();
  if (!d.is_constant() || d.is_zero())
    return std::nullopt;
  Rational inv = 1 / d.constant_term();
  PolyMatrix r(dim_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      PolyMatrix minor(dim_, rows_ - 1, cols_ - 1);
      for (int a = 0, aa = 0; a < rows_; ++a) {
        if (a == j)
          continue;
        for (int b = 0, bb = 0; b < cols_; ++b)
          if (b != i)
            minor(aa, bb++) = (*this)(a, b);
        ++aa;
      }
      Poly c = minor.det().scale(inv);
      r(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  return r;
}

Section PolyMatrix::column(int j) const {
  Section s(rows_, Poly(dim_));
  for (int i = 0; i < rows_; ++i)
    s[i] = (*this)(i, j);
  return s;
}

PolyTensor::PolyTensor(int dim, std::vector<int> shape, std::vector<Group> groups)
    : dim_(dim), shape_(std::move(shape)), groups_(std::move(groups)) {
  for (auto &g : groups_) {
    if (g.start < 0 || g.len < 2 || g.start + g.len > rank())
      throw StructuralError("bad antisymmetric group");
    for (int k = g.start + 1; k < g.start + g.len; ++k)
      if (shape_[k] != shape_[g.start])
        throw StructuralError("antisymmetric group over unequal index ranges");
  }
}

void PolyTensor::check_index(const std::vector<int> &idx) const {
  if (idx.size() != shape_.size())
    throw StructuralError("tensor index has wrong length");
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (idx[k] < 0 || idx[k] >= shape_[k])
      throw StructuralError("tensor index out of range");
}

int PolyTensor::canonical(std::vector<int> &idx) const {
  int sign = 1;
  for (auto &g : groups_) {
    auto b = idx.begin() + g.start, e = b + g.len;
    // Insertion sort counting transpositions.
    for (auto i = b + 1; i < e; ++i)
      for (auto j = i; j > b && *(j - 1) > *j; --j) {
        std::iter_swap(j - 1, j);
        sign = -sign;
      }
    if (std::adjacent_find(b, e) != e)
      return 0;
  }
  return sign;
}

Poly PolyTensor::get(const std::vector<int> &idx) const {
  check_index(idx);
  std::vector<int> c = idx;
  int s = canonical(c);
  if (s == 0)
    return Poly(dim_);
  auto it = entries_.find(c);
  if (it == entries_.end())
    return Poly(dim_);
  return s > 0 ? it->second : -it->second;
}

void PolyTensor::set(const std::vector<int> &idx, const Poly &v) {
  check_index(idx);
  std::vector<int> c = idx;
  int s = canonical(c);
  if (s == 0) {
    if (!v.is_zero())
      throw StructuralError("nonzero value on a repeated antisymmetric index");
    return;
  }
  if (v.is_zero())
    entries_.erase(c);
  else
    entries_[c] = s > 0 ? v : -v;
}

void PolyTensor::add(const std::vector<int> &idx, const Poly &v) {
  if (v.is_zero())
    return;
  set(idx, get(idx) + v);
}

bool PolyTensor::same_shape(const PolyTensor &o) const {
  return dim_ == o.dim_ && shape_ == o.shape_ && groups_ == o.groups_;
}

bool PolyTensor::operator==(const PolyTensor &o) const {
  return same_shape(o) && entries_ == o.entries_;
}

PolyTensor PolyTensor::operator+(const PolyTensor &o) const {
  if (!same_shape(o))
    throw StructuralError("tensor sum shape mismatch");
  PolyTensor r = *this;
  for (auto &[k, v] : o.entries_)
    r.add(k, v);
  return r;
}

PolyTensor PolyTensor::operator-() const {
  PolyTensor r = *this;
  for (auto &[k, v] : r.entries_)
    v = -v;
  return r;
}

namespace {
// Row echelon form in place; returns pivot columns.
std::vector<int> echelon(RatMatrix &m, int cols) {
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < cols && row < static_cast<int>(m.size()); ++c) {
    int p = -1;
    for (int r = row; r < static_cast<int>(m.size()); ++r)
      if (sgn(m[r][c]) != 0) {
        p = r;
        break;
      }
    if (p < 0)
      continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][c];
    for (auto &x : m[row])
      x *= inv;
    for (int r = 0; r < static_cast<int>(m.size()); ++r)
      if (r != row && sgn(m[r][c]) != 0) {
        Rational f = m[r][c];
        for (int k = 0; k < cols; ++k)
          m[r][k] -= f * m[row][k];
      }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}
} // namespace

int rat_rank(const RatMatrix &m, int cols) {
  RatMatrix a = m;
  return static_cast<int>(echelon(a, cols).size());
}

RatMatrix rat_nullspace(const RatMatrix &m, int cols) {
  RatMatrix a = m;
  auto piv = echelon(a, cols);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv)
    is_piv[c] = true;
  RatMatrix basis;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f])
      continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      v[piv[r]] = -a[r][f];
    basis.push_back(v);
  }
  return basis;
}

RatMatrix rat_transpose(const RatMatrix &m, int rows, int cols) {
  RatMatrix t(cols, std::vector<Rational>(rows));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      t[j][i] = m[i][j];
  return t;
}

RatMatrix rat_inverse(const RatMatrix &m) {
  int n = static_cast<int>(m.size());
  RatMatrix a(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  auto piv = echelon(a, n);
  if (static_cast<int>(piv.size()) != n)
    throw StructuralError("singular matrix");
  RatMatrix inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      inv[i][j] = a[i][n + j];
  return inv;
}

} // namespace lie2kit
