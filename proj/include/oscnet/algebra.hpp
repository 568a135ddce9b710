// The anti-commuting 2x2 coefficients of the fermion-type equation, kept in
// exact rational arithmetic so the algebra is checked at compile time.
//
//   a = 1/2 [[+1, +1], [-1, -1]]     b = 1/2 [[+1, -1], [+1, -1]]
//   ab + ba = e,   a^2 = b^2 = o

#pragma once

#include <array>
#include <cstdint>
#include <numeric>

#include <Eigen/Dense>

namespace oscnet {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  constexpr void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  constexpr double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend constexpr Rational operator+(Rational a, Rational b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend constexpr Rational operator*(Rational a, Rational b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend constexpr bool operator==(Rational a, Rational b) {
    return a.num == b.num && a.den == b.den;
  }
};

using RationalMatrix2 = std::array<std::array<Rational, 2>, 2>;

constexpr RationalMatrix2 operator*(const RationalMatrix2& x, const RationalMatrix2& y) {
  RationalMatrix2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return out;
}

constexpr RationalMatrix2 operator+(const RationalMatrix2& x, const RationalMatrix2& y) {
  RationalMatrix2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = x[i][j] + y[i][j];
  return out;
}

inline Eigen::Matrix2d to_eigen(const RationalMatrix2& m) {
  Eigen::Matrix2d out;
  out << m[0][0].to_double(), m[0][1].to_double(), m[1][0].to_double(), m[1][1].to_double();
  return out;
}

struct PauliPair {
  static constexpr RationalMatrix2 a_hat{{{Rational(1, 2), Rational(1, 2)},
                                          {Rational(-1, 2), Rational(-1, 2)}}};
  static constexpr RationalMatrix2 b_hat{{{Rational(1, 2), Rational(-1, 2)},
                                          {Rational(1, 2), Rational(-1, 2)}}};
  static constexpr RationalMatrix2 e_hat{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
  static constexpr RationalMatrix2 o_hat{{{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}};

  // Halves are exact in binary floating point.
  static Eigen::Matrix2d a() { return to_eigen(a_hat); }
  static Eigen::Matrix2d b() { return to_eigen(b_hat); }
};

struct AnticommutationReport {
  RationalMatrix2 ab;
  RationalMatrix2 ba;
  RationalMatrix2 anticommutator;
  RationalMatrix2 a_squared;
  RationalMatrix2 b_squared;
  bool holds = false;
};

constexpr AnticommutationReport verify_anticommutation() {
  AnticommutationReport rep;
  rep.ab = PauliPair::a_hat * PauliPair::b_hat;
  rep.ba = PauliPair::b_hat * PauliPair::a_hat;
  rep.anticommutator = rep.ab + rep.ba;
  rep.a_squared = PauliPair::a_hat * PauliPair::a_hat;
  rep.b_squared = PauliPair::b_hat * PauliPair::b_hat;
  rep.holds = rep.anticommutator == PauliPair::e_hat && rep.a_squared == PauliPair::o_hat &&
              rep.b_squared == PauliPair::o_hat;
  return rep;
}

static_assert(verify_anticommutation().holds,
              "fermion coefficients must satisfy {a, b} = e and a^2 = b^2 = o");

}  // namespace oscnet
