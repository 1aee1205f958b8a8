#include "ivp/snf.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace ivp {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix");
    for (long v : r) a_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<mpz_class> SnfResult::invariants() const {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < S.rows() && i < S.cols(); ++i) {
    if (S(i, i) != 0) out.push_back(S(i, i));
  }
  return out;
}

namespace {

struct Reducer {
  IntegerMatrix& a;
  IntegerMatrix& u;
  IntegerMatrix& v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const mpz_class& k) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += k * a(j, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) += k * u(j, c);
  }
  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const mpz_class& k) {
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) += k * a(r, j);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, i) += k * v(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
  }

  // Moves the smallest nonzero entry of the trailing block to (t, t).
  bool pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (a(i, j) == 0) continue;
        if (!found || abs(a(i, j)) < abs(a(bi, bj))) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void run() {
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < n; ++t) {
      if (!pivot(t)) break;
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < a.rows(); ++i) {
          if (a(i, t) == 0) continue;
          mpz_class q = a(i, t) / a(t, t);
          add_row(i, t, -q);
          if (a(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
          if (a(t, j) == 0) continue;
          mpz_class q = a(t, j) / a(t, t);
          add_col(j, t, -q);
          if (a(t, j) != 0) clean = false;
        }
        if (!clean) {
          pivot(t);
          continue;
        }
        // Enforce divisibility of the trailing block by the pivot.
        bool divides = true;
        for (std::size_t i = t + 1; i < a.rows() && divides; ++i)
          for (std::size_t j = t + 1; j < a.cols(); ++j) {
            if (a(i, j) % a(t, t) != 0) {
              add_row(t, i, 1);
              divides = false;
              break;
            }
          }
        if (divides) break;
      }
      if (a(t, t) < 0) negate_row(t);
    }
  }
};

}  // namespace

SnfResult smith_normal_form(const IntegerMatrix& a) {
  SnfResult r{IntegerMatrix::identity(a.rows()), a, IntegerMatrix::identity(a.cols())};
  Reducer{r.S, r.U, r.V}.run();
  return r;
}

}  // namespace ivp
