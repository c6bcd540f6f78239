#pragma once

// Young diagrams surviving the even-power expansion: lambda_j - j + M even and
// nonnegative for j = 1..M, which forces strictly decreasing rows.

#include <slavkp/partition.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slavkp {

inline bool parity_admissible(const Partition& lambda, int M) {
  if (M < 1 || lambda.length() > M) return false;
  auto rows = lambda.padded(M);
  for (int j = 1; j <= M; ++j) {
    const int ell = rows[static_cast<std::size_t>(j - 1)] - j + M;
    if (ell < 0 || ell % 2 != 0) return false;
    if (j > 1 && rows[static_cast<std::size_t>(j - 1)] >= rows[static_cast<std::size_t>(j - 2)]) return false;
  }
  return true;
}

/// All admissible diagrams with lambda_1 <= lambda1_max, lexicographically
/// ascending on the zero-padded row tuples.
inline std::vector<Partition> enumerate_admissible(int M, int lambda1_max) {
  if (M < 1) throw std::invalid_argument("M must be positive");
  std::vector<Partition> out;
  if (lambda1_max < 0) return out;
  std::vector<int> rows(static_cast<std::size_t>(M), 0);
  // row j (1-based) has parity M - j; build from the top row down
  auto rec = [&](auto&& self, int j, int upper) -> void {
    if (j > M) {
      out.emplace_back(rows);
      return;
    }
    const int parity = (M - j) % 2;
    for (int v = parity; v <= upper; v += 2) {
      rows[static_cast<std::size_t>(j - 1)] = v;
      self(self, j + 1, v - 1);
    }
  };
  rec(rec, 1, lambda1_max);
  return out;
}

/// The nested sum
///   sum_{k_1=M-1}^{lambda1_max} sum_{k_2=M-2}^{k_1} ... sum_{k_{M-1}=1}^{k_{M-2}} (k_{M-1}+1)/2
/// with k_j stepping through values of parity M - j. M = 1 counts the even
/// one-row diagrams, (lambda1_max + 2)/2 for even lambda1_max.
inline std::int64_t count_nested(int M, int lambda1_max) {
  if (M < 1) throw std::invalid_argument("M must be positive");
  if (lambda1_max < 0) return 0;
  if (M == 1) return lambda1_max / 2 + 1;
  auto rec = [&](auto&& self, int j, int upper) -> std::int64_t {
    std::int64_t total = 0;
    for (int k = M - j; k <= upper; k += 2) total += j == M - 1 ? (k + 1) / 2 : self(self, j + 1, k);
    return total;
  };
  return rec(rec, 1, lambda1_max);
}

/// Closed forms: M=1 (l+2)/2 (l even), M=2 (l+1)(l+3)/8 (l odd),
/// M=3 l(l^2+6l+8)/48 (l even); larger M falls back to the nested sum.
inline std::int64_t count_closed(int M, int lambda1_max) {
  const std::int64_t l = lambda1_max;
  auto need = [&](bool ok, const char* parity) {
    if (!ok)
      throw std::domain_error("closed form for M=" + std::to_string(M) + " needs " + parity + " lambda1_max, got " +
                              std::to_string(lambda1_max));
  };
  switch (M) {
    case 1:
      need(l >= 0 && l % 2 == 0, "even nonnegative");
      return (l + 2) / 2;
    case 2:
      need(l >= 1 && l % 2 == 1, "odd positive");
      return (l + 1) * (l + 3) / 8;
    case 3:
      need(l >= 2 && l % 2 == 0, "even");
      return l * (l * l + 6 * l + 8) / 48;
    default:
      if (M < 1) throw std::invalid_argument("M must be positive");
      need(l >= M - 1, "at least M-1");
      return count_nested(M, lambda1_max);
  }
}

}  // namespace slavkp
