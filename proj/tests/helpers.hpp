#ifndef QFANO_TESTS_HELPERS_HPP
#define QFANO_TESTS_HELPERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qfano/contraction.hpp"
#include "qfano/profile.hpp"

namespace qfano::testing {

inline std::string source_dir() { return QFANO_SOURCE_DIR; }
inline std::string fixture_dir() { return source_dir() + "/fixtures"; }

// Small deterministic generator for property tests.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  // uniform in [lo, hi]
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational rational(long long max_num = 40, long long max_den = 6) {
    long long d = range(1, max_den);
    long long n = range(-max_num, max_num);
    return Rational(n, d);
  }
  Rational positive_rational(long long max_num = 40, long long max_den = 6) {
    long long d = range(1, max_den);
    long long n = range(1, max_num);
    return Rational(n, d);
  }
};

// A run with valid shape: r = 2, alpha = 1, e >= 0, ratios even and strictly
// decreasing, degree drops positive half-integers.
inline BirationalRun random_run(Rng& rng, int max_flips = 3) {
  BirationalRun run;
  run.kx3 = Rational(rng.range(1, 60), 2);
  run.r = 2;
  run.alpha = Rational(1);
  run.flop_e = Rational(rng.range(0, 20));
  int flips = static_cast<int>(rng.range(0, max_flips));
  int a = static_cast<int>(rng.range(2, 6)) * 2;
  for (int i = 0; i < flips && a >= 2; ++i) {
    FlipDatum f;
    f.a = Rational(a);
    f.aw = static_cast<int>(rng.range(1, 5));
    f.d = Rational(f.aw, 2);
    run.flips.push_back(f);
    a -= static_cast<int>(rng.range(1, 2)) * 2;
  }
  return run;
}

}  // namespace qfano::testing

#endif
