#pragma once

// Integer partitions with Frobenius coordinates.

#include <algorithm>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace slavkp {

class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> parts) : parts_(std::move(parts)) {  // NOLINT(google-explicit-constructor)
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw std::invalid_argument("partition parts must be nonnegative");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  bool empty() const { return parts_.empty(); }
  /// lambda_i with 1-based i; zero beyond the length.
  int operator[](int i) const { return i >= 1 && i <= length() ? parts_[static_cast<std::size_t>(i - 1)] : 0; }

  std::vector<int> padded(int M) const {
    if (length() > M) throw std::invalid_argument("partition longer than requested padding");
    std::vector<int> out = parts_;
    out.resize(static_cast<std::size_t>(M), 0);
    return out;
  }

  Partition conjugate() const {
    std::vector<int> out(static_cast<std::size_t>(parts_.empty() ? 0 : parts_.front()), 0);
    for (int p : parts_)
      for (int j = 0; j < p; ++j) ++out[static_cast<std::size_t>(j)];
    return Partition(std::move(out));
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// (alpha_1..alpha_d | beta_1..beta_d) with alpha_i = lambda_i - i,
/// beta_i = lambda'_i - i, and flat = sum (beta_i + 1).
struct Frobenius {
  std::vector<int> alpha;
  std::vector<int> beta;
  int flat = 0;
};

inline Frobenius frobenius(const Partition& lambda) {
  Frobenius f;
  Partition conj = lambda.conjugate();
  for (int i = 1; i <= lambda.length() && lambda[i] >= i; ++i) {
    f.alpha.push_back(lambda[i] - i);
    f.beta.push_back(conj[i] - i);
    f.flat += conj[i] - i + 1;
  }
  return f;
}

/// l_j = lambda_j - j + M, j = 1..M.
inline std::vector<int> ell_transform(const Partition& lambda, int M) {
  auto rows = lambda.padded(M);
  for (int j = 1; j <= M; ++j) rows[static_cast<std::size_t>(j - 1)] += M - j;
  return rows;
}

/// All partitions of n with at most max_length parts, in decreasing lexicographic order.
inline std::vector<Partition> partitions_of(int n, int max_length) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int largest) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_length) return;
    for (int p = std::min(remaining, largest); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Partitions with |lambda| <= D and length <= max_length, grouped by size.
inline std::vector<Partition> partitions_up_to(int D, int max_length) {
  std::vector<Partition> out;
  for (int n = 0; n <= D; ++n)
    for (auto& p : partitions_of(n, max_length)) out.push_back(std::move(p));
  return out;
}

}  // namespace slavkp
