#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using i64 = std::int64_t;
using Vec = std::vector<i64>;
using Vec2 = std::array<i64, 2>;

// Every failure carries a short machine-readable kind, e.g. "not-contractible".
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

// x(x-1)/2 for every integer x, negatives included.
constexpr i64 binom2(i64 x) { return x * (x - 1) / 2; }

constexpr i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

constexpr i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

constexpr i64 det2(const Vec2 &u, const Vec2 &v) {
  return u[0] * v[1] - u[1] * v[0];
}

inline i64 gcd_abs(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline Vec add(const Vec &a, const Vec &b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec &a, const Vec &b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] - b[i];
  return r;
}

inline Vec neg(const Vec &a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = -a[i];
  return r;
}

inline Vec scale(i64 k, const Vec &a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = k * a[i];
  return r;
}

inline void axpy(i64 k, const Vec &x, Vec &y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] += k * x[i];
}

inline i64 dot(const Vec &a, const Vec &b) {
  i64 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

inline i64 total(const Vec &a) { return std::accumulate(a.begin(), a.end(), i64{0}); }

inline bool is_zero(const Vec &a) {
  for (i64 x : a)
    if (x != 0)
      return false;
  return true;
}

inline std::string to_string(const Vec &v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

} // namespace toric
