#include "friezekit/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace friezekit {

namespace {

BigInt exact_quotient(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw InternalError("fraction-free elimination lost exactness");
  return q;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

IntMatrix clear_row_denominators(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rat v = m(i, j) * l;
      r(i, j) = v.get_num();
    }
  }
  return r;
}

template <class T>
std::string matrix_string(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

IntMatrix int_matrix(const std::vector<std::vector<int>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw UsageError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string to_string(const IntMatrix& m) { return matrix_string(m); }
std::string to_string(const RatMatrix& m) { return matrix_string(m); }

BigInt determinant(const IntMatrix& m0) {
  if (m0.rows() != m0.cols()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = m0.rows();
  if (n == 0) return 1;
  IntMatrix m = m0;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = exact_quotient(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m) {
  BigInt scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    scale *= l;
  }
  return make_rat(determinant(clear_row_denominators(m)), scale);
}

RatMatrix inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw UsageError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  IntMatrix m(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n + i) = 1;
  }
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) throw UsageError("matrix is singular");
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(m(k, j), m(p, j));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        m(i, j) = exact_quotient(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  // The left block is now diagonal; each pivot row divides through.
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = make_rat(m(i, n + j), m(i, i));
  return inv;
}

RatMatrix inverse(const RatMatrix& a) {
  // Row scaling D*A = A_int gives A^{-1} = A_int^{-1} * D.
  IntMatrix ai = clear_row_denominators(a);
  RatMatrix inv = inverse(ai);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t r = 0; r < inv.rows(); ++r) inv(r, i) *= l;
  }
  return inv;
}

std::size_t rank(const RatMatrix& a) {
  IntMatrix m = clear_row_denominators(a);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(p, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m(i, j) = exact_quotient(m(r, c) * m(i, j) - m(i, c) * m(r, j), prev);
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

HermiteForm hermite_normal_form(const IntMatrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  HermiteForm f{a, IntMatrix::identity(rows), 0};
  IntMatrix& H = f.H;
  IntMatrix& U = f.U;
  auto combine = [&](IntMatrix& M, std::size_t r, std::size_t i, const BigInt& s, const BigInt& t, const BigInt& u,
                     const BigInt& v) {
    // (row r, row i) <- (s*r + t*i, u*r + v*i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      BigInt x = M(r, j), y = M(i, j);
      M(r, j) = s * x + t * y;
      M(i, j) = u * x + v * y;
    }
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (H(i, c) == 0) continue;
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), H(r, c).get_mpz_t(), H(i, c).get_mpz_t());
      BigInt u = -exact_quotient(H(i, c), g), v = exact_quotient(H(r, c), g);
      combine(H, r, i, s, t, u, v);
      combine(U, r, i, s, t, u, v);
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) H(r, j) = -H(r, j);
      for (std::size_t j = 0; j < rows; ++j) U(r, j) = -U(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = floor_div(H(i, c), H(r, c));
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) H(i, j) -= q * H(r, j);
      for (std::size_t j = 0; j < rows; ++j) U(i, j) -= q * U(r, j);
    }
    ++r;
  }
  f.rank = r;
  return f;
}

IntMatrix lattice_basis(const IntMatrix& rows) {
  HermiteForm f = hermite_normal_form(rows);
  return f.H.block(0, 0, f.rank, rows.cols());
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return false;
  return lattice_basis(a) == lattice_basis(b);
}

}  // namespace friezekit
