// SPDX-License-Identifier: Apache-2.0
#include "tmds/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tmds {
namespace {

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
  if (a.field() != b.field() && a.field() && b.field() &&
      a.field()->q() != b.field()->q())
    throw DimensionError(std::string(op) + ": field mismatch");
}

// Row-reduces m in place, optionally mirroring operations on aug. Returns
// the pivot column of each pivot row, in order.
std::vector<std::size_t> eliminate(Matrix& m, Matrix* aug, bool full) {
  const Field& f = *m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t r = prow; r < rows; ++r)
      if (m(r, c)) {
        sel = r;
        break;
      }
    if (sel == rows) continue;
    if (sel != prow) {
      std::swap_ranges(m.row(sel), m.row(sel) + cols, m.row(prow));
      if (aug) std::swap_ranges(aug->row(sel), aug->row(sel) + aug->cols(), aug->row(prow));
    }
    const Elem iv = f.inv(m(prow, c));
    f.scale(m.row(prow) + c, cols - c, iv);
    if (aug) f.scale(aug->row(prow), aug->cols(), iv);
    const std::size_t start = full ? 0 : prow + 1;
    for (std::size_t r = start; r < rows; ++r) {
      if (r == prow) continue;
      const Elem factor = m(r, c);
      if (!factor) continue;
      const Elem nf = f.neg(factor);
      f.axpy(m.row(r) + c, m.row(prow) + c, cols - c, nf);
      if (aug) f.axpy(aug->row(r), aug->row(prow), aug->cols(), nf);
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

Matrix Matrix::identity(FieldPtr f, std::size_t n) {
  Matrix m(std::move(f), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr f, const std::vector<std::vector<Elem>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(f, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw DimensionError("ragged rows");
    for (std::size_t c = 0; c < nc; ++c) {
      if (rows[r][c] >= f->q()) throw DimensionError("element outside field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

std::size_t Matrix::nonzeros() const {
  return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](Elem e) { return e != 0; }));
}

Matrix Matrix::transpose() const {
  Matrix t(f_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Matrix b(f_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) std::copy_n(row(r0 + r) + c0, nc, b.row(r));
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("set_block out of range");
  for (std::size_t r = 0; r < b.rows(); ++r) std::copy_n(b.row(r), b.cols(), row(r0 + r) + c0);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("add_block out of range");
  for (std::size_t r = 0; r < b.rows(); ++r) f_->axpy(row(r0 + r) + c0, b.row(r), b.cols(), 1);
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix m(f_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= rows_) throw DimensionError("row index out of range");
    std::copy_n(row(idx[i]), cols_, m.row(i));
  }
  return m;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix m(f_, rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= cols_) throw DimensionError("column index out of range");
      m(r, i) = (*this)(r, idx[i]);
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_field(*this, o, "add");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("add: dimension mismatch");
  Matrix m = *this;
  f_->axpy(m.data_.data(), o.data_.data(), data_.size(), 1);
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.negated(); }

Matrix Matrix::operator*(const Matrix& o) const { return matmul(*this, o); }

Matrix Matrix::scaled(Elem c) const {
  Matrix m = *this;
  if (c == 0) {
    std::fill(m.data_.begin(), m.data_.end(), 0);
    return m;
  }
  f_->scale(m.data_.data(), m.data_.size(), c);
  return m;
}

Matrix Matrix::negated() const {
  Matrix m = *this;
  for (auto& e : m.data_) e = f_->neg(e);
  return m;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
    os << "\n";
  }
  return os.str();
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "matmul");
  if (a.cols() != b.rows())
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  Matrix c(a.field() ? a.field() : b.field(), a.rows(), b.cols());
  if (!c.field()) return c;
  const Field& f = *c.field();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem* out = c.row(i);
    const Elem* ar = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (ar[k]) f.axpy(out, b.row(k), b.cols(), ar[k]);
  }
  return c;
}

void mul_add_block(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc,
                   const Matrix& x, std::size_t x_r0, Matrix& out, std::size_t out_r0) {
  if (r0 + nr > a.rows() || c0 + nc > a.cols() || x_r0 + nc > x.rows() || out_r0 + nr > out.rows() ||
      x.cols() != out.cols())
    throw DimensionError("mul_add_block: range out of bounds");
  const Field& f = *a.field();
  for (std::size_t i = 0; i < nr; ++i) {
    Elem* dst = out.row(out_r0 + i);
    const Elem* ar = a.row(r0 + i) + c0;
    for (std::size_t k = 0; k < nc; ++k)
      if (ar[k]) f.axpy(dst, x.row(x_r0 + k), x.cols(), ar[k]);
  }
}

std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  Matrix m = a;
  return eliminate(m, nullptr, false).size();
}

std::size_t rank_sparse(const Matrix& a) {
  if (a.empty()) return 0;
  const std::size_t R = a.rows(), C = a.cols();
  UnionFind uf(R + C);
  for (std::size_t r = 0; r < R; ++r) {
    const Elem* row = a.row(r);
    for (std::size_t c = 0; c < C; ++c)
      if (row[c]) uf.unite(r, R + c);
  }
  std::vector<std::vector<std::size_t>> comp_rows(R + C), comp_cols(R + C);
  for (std::size_t r = 0; r < R; ++r) comp_rows[uf.find(r)].push_back(r);
  for (std::size_t c = 0; c < C; ++c) comp_cols[uf.find(R + c)].push_back(c);
  std::size_t total = 0;
  for (std::size_t g = 0; g < R + C; ++g) {
    if (comp_rows[g].empty() || comp_cols[g].empty()) continue;
    total += rank(a.select_rows(comp_rows[g]).select_cols(comp_cols[g]));
  }
  return total;
}

bool nonsingular(const Matrix& a) {
  return a.rows() == a.cols() && rank_sparse(a) == a.rows();
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse: matrix not square");
  Matrix m = a;
  Matrix inv = Matrix::identity(a.field(), a.rows());
  auto piv = eliminate(m, &inv, true);
  if (piv.size() != a.rows()) throw SingularMatrix(piv.size(), piv.size());
  return inv;
}

Matrix solve(const Matrix& a, const Matrix& rhs) {
  if (a.rows() != a.cols()) throw DimensionError("solve: matrix not square");
  if (rhs.rows() != a.rows()) throw DimensionError("solve: rhs row mismatch");
  Matrix m = a;
  Matrix x = rhs;
  auto piv = eliminate(m, &x, true);
  if (piv.size() != a.rows()) throw SingularMatrix(piv.size(), piv.size());
  return x;
}

Matrix blkdiag(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw DimensionError("blkdiag: no blocks");
  std::size_t nr = 0, nc = 0;
  for (const auto& b : blocks) {
    require_same_field(blocks[0], b, "blkdiag");
    nr += b.rows();
    nc += b.cols();
  }
  Matrix m(blocks[0].field(), nr, nc);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Matrix blkdiag_repeat(const Matrix& q, std::size_t times) {
  return blkdiag(std::vector<Matrix>(times, q));
}

Matrix hstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw DimensionError("hstack: no blocks");
  std::size_t nc = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks[0].rows()) throw DimensionError("hstack: row mismatch");
    require_same_field(blocks[0], b, "hstack");
    nc += b.cols();
  }
  Matrix m(blocks[0].field(), blocks[0].rows(), nc);
  std::size_t c = 0;
  for (const auto& b : blocks) {
    m.set_block(0, c, b);
    c += b.cols();
  }
  return m;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw DimensionError("vstack: no blocks");
  std::size_t nr = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks[0].cols()) throw DimensionError("vstack: column mismatch");
    require_same_field(blocks[0], b, "vstack");
    nr += b.rows();
  }
  Matrix m(blocks[0].field(), nr, blocks[0].cols());
  std::size_t r = 0;
  for (const auto& b : blocks) {
    m.set_block(r, 0, b);
    r += b.rows();
  }
  return m;
}

std::vector<std::size_t> pivot_columns(const Matrix& a) {
  Matrix m = a;
  return eliminate(m, nullptr, false);
}

}  // namespace tmds
