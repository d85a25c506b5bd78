#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace pathlap {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// Default cap on the number of enumerated paths per degree. Overridable per
// call; the CLI also honors the PATHLAP_MAX_PATHS environment variable.
inline constexpr std::size_t kDefaultMaxPaths = 200000;

// Degree cap for Euler-characteristic style iteration: if the Omega sequence
// has not died out by this degree we refuse to keep going.
inline constexpr int kMaxOmegaDegree = 64;

// Numeric policy, shared by the eigensolver and the multiset algebra.
inline constexpr double kJacobiTol = 1e-12;    // off-diagonal threshold, relative to ||A||_F
inline constexpr double kClampTol = 1e-9;      // eigenvalues in [-kClampTol, 0) become 0
inline constexpr double kClusterTol = 1e-7;    // relative clustering of raw eigenvalues
inline constexpr double kMatchEps = 1e-6;      // default multiset comparison tolerance
inline constexpr double kSymmetryTol = 1e-9;   // allowed asymmetry of the symmetrized operator
inline constexpr double kZeroTol = 1e-8;       // threshold separating zero from positive spectrum

// Malformed textual input: edge lists, graph expressions, CLI arguments.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A size or degree cap was exceeded. Deliberately loud: this tool targets
// desk-scale graphs and should fail fast instead of thrashing.
struct GuardrailError : std::runtime_error {
  explicit GuardrailError(const std::string& what) : std::runtime_error(what) {}
};

// A theorem's precondition does not hold for the given input.
struct HypothesisError : std::runtime_error {
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// A spectral identity that must hold mathematically failed numerically:
// multiset subtraction underflow, asymmetric symmetrized operator, or a
// significantly negative eigenvalue of a positive semi-definite operator.
struct SpectralIdentityError : std::runtime_error {
  explicit SpectralIdentityError(const std::string& what) : std::runtime_error(what) {}
};

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

BigInt factorial(long n);
BigInt binomial(long n, long k);  // 0 when k < 0 or k > n or n < 0

// n! / (k_1! ... k_s! (n - sum k_i)!). Requires sum k_i <= n.
BigInt multinomial(long n, const std::vector<long>& ks);

// b^e with the convention 0^0 = 1. Requires e >= 0.
BigInt int_pow(const BigInt& b, long e);

}  // namespace pathlap
