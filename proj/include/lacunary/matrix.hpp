#ifndef LACUNARY_MATRIX_HPP
#define LACUNARY_MATRIX_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "lacunary/error.hpp"
#include "lacunary/sequence.hpp"

namespace lacunary {

namespace matrix {

struct Identity {};

/// Row n averages x_1..x_n.
struct CesaroC1 {};

/// Row n picks x_{n+offset}; rows pointing before index 1 are zero rows.
struct Shift {
  std::ptrdiff_t offset = 1;
};

struct RowEntry {
  std::size_t column;
  double coefficient;
};

/// Explicit finite-support rows; rows[n-1] holds row n.
struct RowTable {
  std::vector<std::vector<RowEntry>> rows;
};

/// Infinite rows described by a coefficient rule plus a certified tail bound.
/// tail_bound(n, j) must dominate sum_{k>j} |a_{nk} x_k| for every sequence
/// obeying the declared bound |x_k| <= x_bound, and be nonincreasing in j.
struct RowGenerator {
  std::string name;
  double x_bound = 1.0;
  std::function<double(std::size_t n, std::size_t k)> coefficient;
  std::function<double(std::size_t n, std::size_t j)> tail_bound;
};

}  // namespace matrix

using MatrixOperator = std::variant<matrix::Identity, matrix::CesaroC1, matrix::Shift,
                                    matrix::RowTable, matrix::RowGenerator>;

/// Abel-type means: a_{nk} = (1 - q_n) q_n^{k-1} with q_n = n / (n + 1).
/// The tail after column j is bounded by x_bound * q_n^j.
inline matrix::RowGenerator abel_means(double x_bound) {
  if (!(x_bound >= 0.0) || !std::isfinite(x_bound)) {
    throw Error(Errc::InvalidArgument, "abel means need a finite nonnegative bound on |x_k|");
  }
  matrix::RowGenerator g;
  g.name = "abel";
  g.x_bound = x_bound;
  g.coefficient = [](std::size_t n, std::size_t k) {
    const double q = static_cast<double>(n) / static_cast<double>(n + 1);
    return (1.0 - q) * std::pow(q, static_cast<double>(k - 1));
  };
  g.tail_bound = [x_bound](std::size_t n, std::size_t j) {
    const double q = static_cast<double>(n) / static_cast<double>(n + 1);
    return x_bound * std::pow(q, static_cast<double>(j));
  };
  return g;
}

inline std::string describe(const MatrixOperator& a) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, matrix::Identity>) return "identity";
        else if constexpr (std::is_same_v<T, matrix::CesaroC1>) return "cesaro";
        else if constexpr (std::is_same_v<T, matrix::Shift>) return "shift(" + std::to_string(m.offset) + ")";
        else if constexpr (std::is_same_v<T, matrix::RowTable>) return "rows(" + std::to_string(m.rows.size()) + ")";
        else return "generator(" + m.name + ")";
      },
      a);
}

namespace detail {

inline double apply_generator(const matrix::RowGenerator& g, const Sequence& x, std::size_t n,
                              double tol) {
  if (!g.coefficient || !g.tail_bound) {
    throw Error(Errc::InvalidArgument, "row generator '" + g.name + "' is missing a rule");
  }
  const std::size_t horizon = x.horizon();
  if (!(g.tail_bound(n, horizon) < tol)) {
    throw Error(Errc::TailBoundUnsatisfiable,
                "row " + std::to_string(n) + " of '" + g.name + "': tail bound " +
                    std::to_string(g.tail_bound(n, horizon)) + " at horizon " +
                    std::to_string(horizon) + " is not below tol");
  }
  // Smallest truncation column whose certified tail is below tol.
  std::size_t lo = 1, hi = horizon;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (g.tail_bound(n, mid) < tol) hi = mid;
    else lo = mid + 1;
  }
  double sum = 0.0;
  for (std::size_t k = 1; k <= lo; ++k) sum += g.coefficient(n, k) * x[k];
  return sum;
}

}  // namespace detail

/// A_n(x) = sum_k a_{nk} x_k. Finite rows are exact; generator rows are
/// truncated where the certified tail drops below tol.
inline double apply_matrix(const MatrixOperator& a, const Sequence& x, std::size_t n, double tol) {
  if (n == 0) throw Error(Errc::InvalidArgument, "matrix rows are 1-based");
  const std::size_t horizon = x.horizon();
  auto need = [&](std::size_t k) {
    if (k > horizon) {
      throw Error(Errc::SupportExceedsHorizon, "row " + std::to_string(n) + " needs x_" +
                                                   std::to_string(k) + " beyond horizon " +
                                                   std::to_string(horizon));
    }
  };
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, matrix::Identity>) {
          need(n);
          return x[n];
        } else if constexpr (std::is_same_v<T, matrix::CesaroC1>) {
          need(n);
          double sum = 0.0;
          for (std::size_t k = 1; k <= n; ++k) sum += x[k];
          return sum / static_cast<double>(n);
        } else if constexpr (std::is_same_v<T, matrix::Shift>) {
          const auto target = static_cast<std::ptrdiff_t>(n) + m.offset;
          if (target < 1) return 0.0;
          need(static_cast<std::size_t>(target));
          return x[static_cast<std::size_t>(target)];
        } else if constexpr (std::is_same_v<T, matrix::RowTable>) {
          if (n > m.rows.size()) {
            throw Error(Errc::InvalidArgument, "row table has no row " + std::to_string(n));
          }
          double sum = 0.0;
          for (const auto& e : m.rows[n - 1]) {
            if (e.column == 0) throw Error(Errc::InvalidArgument, "row table columns are 1-based");
            if (!std::isfinite(e.coefficient)) {
              throw Error(Errc::InvalidArgument, "non-finite coefficient in row " + std::to_string(n));
            }
            need(e.column);
            sum += e.coefficient * x[e.column];
          }
          return sum;
        } else {
          if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "truncation tolerance must be positive");
          return detail::apply_generator(m, x, n, tol);
        }
      },
      a);
}

/// (A_1(x), ..., A_{out_len}(x)). Errors carry the failing row.
inline Sequence transform_sequence(const MatrixOperator& a, const Sequence& x, std::size_t out_len,
                                   double tol) {
  if (out_len == 0) throw Error(Errc::InvalidArgument, "transform length must be positive");
  std::vector<double> z(out_len);
  if (std::holds_alternative<matrix::CesaroC1>(a)) {
    // Running sum reproduces apply_matrix's ascending summation bit for bit.
    if (out_len > x.horizon()) {
      throw Error(Errc::SupportExceedsHorizon,
                  "transform row " + std::to_string(x.horizon() + 1) + ": cesaro row needs x_" +
                      std::to_string(x.horizon() + 1) + " beyond horizon " +
                      std::to_string(x.horizon()));
    }
    double sum = 0.0;
    for (std::size_t n = 1; n <= out_len; ++n) {
      sum += x[n];
      z[n - 1] = sum / static_cast<double>(n);
    }
    return Sequence(std::move(z));
  }
  for (std::size_t n = 1; n <= out_len; ++n) {
    try {
      z[n - 1] = apply_matrix(a, x, n, tol);
    } catch (const Error& e) {
      throw Error(e.code(), "transform row " + std::to_string(n) + ": " + e.detail());
    }
  }
  return Sequence(std::move(z));
}

}  // namespace lacunary

#endif  // LACUNARY_MATRIX_HPP
