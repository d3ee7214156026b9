#include "clustercat/linalg.hpp"

#include <cstdlib>

#include "clustercat/error.hpp"

namespace clustercat {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidWeightVector: return "InvalidWeightVector";
    case ErrorCode::InvalidWeightType: return "InvalidWeightType";
    case ErrorCode::ZeroClassSlope: return "ZeroClassSlope";
    case ErrorCode::NotTubular: return "NotTubular";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::NotInSet: return "NotInSet";
    case ErrorCode::AmbiguousComplement: return "AmbiguousComplement";
    case ErrorCode::NotDomestic: return "NotDomestic";
    case ErrorCode::DepthExhausted: return "DepthExhausted";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::NodeCapExceeded: return "NodeCapExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("integer lattice: 64-bit overflow");
  return static_cast<std::int64_t>(v);
}

// a <- a - q*b, column-wise over all rows of m.
void col_axpy(IntMatrix& m, std::size_t a, std::size_t b, std::int64_t q) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, a) = narrow(static_cast<__int128>(m(r, a)) - static_cast<__int128>(q) * m(r, b));
}

void row_axpy(IntMatrix& m, std::size_t a, std::size_t b, std::int64_t q) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(a, c) = narrow(static_cast<__int128>(m(a, c)) - static_cast<__int128>(q) * m(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

// Floor-free quotient that makes |a - q b| < |b|.
std::int64_t quot(std::int64_t a, std::int64_t b) { return a / b; }

}  // namespace

QMatrix to_rational(const IntMatrix& m) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

IntMatrix to_integer(const QMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integer()) throw std::domain_error("to_integer: non-integral entry " + m(i, j).str());
      out(i, j) = m(i, j).num();
    }
  return out;
}

std::vector<std::int64_t> smith_invariants(const IntMatrix& input) {
  IntMatrix m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::int64_t> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry in the trailing block becomes the pivot.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (pr == rows || std::llabs(m(i, j)) < std::llabs(m(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    swap_rows(m, t, pr);
    swap_cols(m, t, pc);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        row_axpy(m, i, t, quot(m(i, t), m(t, t)));
        if (m(i, t) != 0) {
          swap_rows(m, t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        col_axpy(m, j, t, quot(m(t, j), m(t, t)));
        if (m(t, j) != 0) {
          swap_cols(m, t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide every trailing entry.
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            row_axpy(m, t, i, -1);
            clean = false;
            break;
          }
    }
    diag.push_back(std::llabs(m(t, t)));
    ++t;
  }
  return diag;
}

std::vector<std::vector<std::int64_t>> integer_kernel(const IntMatrix& matrix) {
  const std::size_t rows = matrix.rows(), cols = matrix.cols();
  // Stack [matrix; I] and column-reduce the top block.
  IntMatrix m(rows + cols, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = matrix(i, j);
  for (std::size_t j = 0; j < cols; ++j) m(rows + j, j) = 1;

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < rows && pivot < cols; ++r) {
    while (true) {
      std::size_t best = cols;
      for (std::size_t j = pivot; j < cols; ++j)
        if (m(r, j) != 0 && (best == cols || std::llabs(m(r, j)) < std::llabs(m(r, best)))) best = j;
      if (best == cols) break;
      swap_cols(m, pivot, best);
      bool done = true;
      for (std::size_t j = pivot + 1; j < cols; ++j) {
        if (m(r, j) == 0) continue;
        col_axpy(m, j, pivot, quot(m(r, j), m(r, pivot)));
        if (m(r, j) != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t j = pivot; j < cols; ++j) {
    std::vector<std::int64_t> v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = m(rows + i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace clustercat
