#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>

namespace omegalab {

// Minimal value-or-error return type for operations whose failure carries data
// (parse errors with positions, decode errors, prefix witnesses).
template <class T, class E>
class Expected {
  static_assert(!std::is_same_v<T, E>, "value and error types must differ");

 public:
  Expected(T v) : v_(std::move(v)) {}
  Expected(E e) : v_(std::move(e)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw std::logic_error("Expected: value() on error state");
    return std::get<T>(v_);
  }
  T& value() & {
    if (!ok()) throw std::logic_error("Expected: value() on error state");
    return std::get<T>(v_);
  }
  const E& error() const& {
    if (ok()) throw std::logic_error("Expected: error() on value state");
    return std::get<E>(v_);
  }

  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

 private:
  std::variant<T, E> v_;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Worker count for parallel sweeps. requested == 0 means "pick for me";
// the OMEGALAB_THREADS environment variable caps whatever is chosen.
// Every parallel path in the library is required to produce results identical
// to the sequential schedule, so this only affects wall time.
inline int worker_count(int requested = 0) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("OMEGALAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && n > cap) n = cap;
  }
  return n;
}

}  // namespace omegalab
