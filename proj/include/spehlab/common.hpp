#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace spehlab {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kDefaultTol = 1e-8;

// Thrown when a request exceeds the desk-scale envelope (q, group order,
// model dimension). CLI maps this to exit code 2.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid mathematical input (inverting 0, singular matrix, element outside
// the required subgroup).
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Internal contradiction: a construction that the theory guarantees failed
// numerically after retries.
struct DiagnosticError : std::runtime_error {
  explicit DiagnosticError(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic RNG. mt19937_64 is fully specified by the standard; the
// Gaussian is hand-rolled (Box-Muller) so streams do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0,1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  cd cgauss() { return cd(gauss(), gauss()); }

  // uniform integer in [0, n)
  uint64_t below(uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline cd unit_root(double turns) {  // e^{2 pi i * turns}
  return std::polar(1.0, 2.0 * kPi * turns);
}

}  // namespace spehlab
