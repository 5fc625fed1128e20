#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace allhops {

namespace detail {
inline std::atomic<std::uint64_t>& saturation_counter() noexcept {
  static std::atomic<std::uint64_t> counter{0};
  return counter;
}
}  // namespace detail

/// Number of finite + finite additions that overflowed and were clamped since
/// process start (or the last reset). Nonzero means some input exceeded the
/// magnitude the caller promised.
inline std::uint64_t saturation_events() noexcept {
  return detail::saturation_counter().load(std::memory_order_relaxed);
}

inline void reset_saturation_events() noexcept {
  detail::saturation_counter().store(0, std::memory_order_relaxed);
}

/// Extended integer distance: a finite 64-bit value or +infinity.
///
/// +infinity is stored as the maximum int64 value, so the natural ordering of
/// the raw representation is the ordering of distances and min() needs no
/// special case. Addition saturates: inf absorbs, and a finite overflow clamps
/// (toward +inf for positive overflow, toward the minimum for negative) and
/// bumps the saturation counter.
class ExtInt {
 public:
  static constexpr std::int64_t kInfRaw = std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kMinRaw = std::numeric_limits<std::int64_t>::min();

  constexpr ExtInt() noexcept = default;
  constexpr ExtInt(std::int64_t value) noexcept : raw_(value) {}  // NOLINT: implicit by design of the tables

  static constexpr ExtInt inf() noexcept { return ExtInt(kInfRaw); }
  static constexpr ExtInt zero() noexcept { return ExtInt(0); }

  constexpr bool is_inf() const noexcept { return raw_ == kInfRaw; }
  constexpr bool is_finite() const noexcept { return raw_ != kInfRaw; }
  constexpr std::int64_t raw() const noexcept { return raw_; }
  /// Finite value; meaningless for inf.
  constexpr std::int64_t value() const noexcept { return raw_; }

  friend constexpr ExtInt operator+(ExtInt a, ExtInt b) noexcept {
    if (a.is_inf() || b.is_inf()) return inf();
    std::int64_t sum = 0;
    if (__builtin_add_overflow(a.raw_, b.raw_, &sum) || sum == kInfRaw) {
      if (!std::is_constant_evaluated()) {
        detail::saturation_counter().fetch_add(1, std::memory_order_relaxed);
      }
      return a.raw_ > 0 ? inf() : ExtInt(kMinRaw);
    }
    return ExtInt(sum);
  }

  ExtInt& operator+=(ExtInt other) noexcept { return *this = *this + other; }

  friend constexpr auto operator<=>(ExtInt, ExtInt) noexcept = default;
  friend constexpr bool operator==(ExtInt, ExtInt) noexcept = default;

  std::string to_string() const { return is_inf() ? std::string("inf") : std::to_string(raw_); }

  friend std::ostream& operator<<(std::ostream& os, ExtInt x) { return os << x.to_string(); }

 private:
  std::int64_t raw_ = kInfRaw;
};

inline constexpr ExtInt kInf = ExtInt::inf();

constexpr ExtInt min(ExtInt a, ExtInt b) noexcept { return b < a ? b : a; }

}  // namespace allhops
