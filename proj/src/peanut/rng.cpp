#include "peanut/rng.hpp"

#include <cmath>

namespace peanut {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t master, uint64_t index) {
  uint64_t state = master;
  uint64_t a = splitmix64(state);
  state = a ^ (index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  return splitmix64(state);
}

double RngStream::uniform01() {
  return double(gen_() >> 11) * 0x1.0p-53;
}

uint64_t RngStream::below(uint64_t n) {
  // rejection above the largest multiple of n
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

double RngStream::normal(double mean, double sd) {
  // u1 in (0, 1] so the log is finite
  double u1 = 1.0 - uniform01();
  double u2 = uniform01();
  double z = std::sqrt(-2.0 * std::log(u1)) *
             std::cos(2.0 * 3.14159265358979323846 * u2);
  return mean + sd * z;
}

}  // namespace peanut
