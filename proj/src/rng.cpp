#include "stabledp/rng.hpp"

#include "stabledp/errors.hpp"

namespace stabledp {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed)
    : key_(mix64(seed ^ 0x5deece66dULL)) {}

RandomStream RandomStream::child(std::uint64_t tag) const {
  return RandomStream(mix64(key_ ^ mix64(tag + 0x632be59bd9b4e019ULL)), true);
}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * 0xd1b54a32d192ed03ULL);
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::int64_t RandomStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidArgument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = max() - max() % span;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit && limit != 0);
  return lo + static_cast<std::int64_t>(x % span);
}

}  // namespace stabledp
