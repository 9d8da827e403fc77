#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fuslim {

using BigInt = boost::multiprecision::cpp_int;
using BigMat = std::vector<std::vector<BigInt>>;  // dense, row major

BigMat bigmat_identity(int n);
BigMat bigmat_mul(const BigMat& a, const BigMat& b);

// s * a * t = d with s, t unimodular and d diagonal with a divisibility chain
// d_1 | d_2 | ... Transform tracking is opt-in since s/t/tinv can dominate the
// cost on large inputs.
struct SmithResult {
  BigMat d;
  BigMat s;     // if requested
  BigMat t;     // if requested
  BigMat tinv;  // if requested
  int rank = 0;
  std::vector<BigInt> invariants;  // nonzero diagonal entries, in chain order
};

inline constexpr unsigned kNeedS = 1;
inline constexpr unsigned kNeedT = 2;
inline constexpr unsigned kNeedTinv = 4;

SmithResult smith_normal_form(BigMat a, unsigned flags = 0);

// Basis (as rows) of {v : v * a = 0}.
BigMat kernel_basis(const BigMat& a);

// Solves x * a = g for one factorization and many right-hand sides.
class LeftSolver {
 public:
  explicit LeftSolver(BigMat a);
  std::optional<std::vector<BigInt>> solve(const std::vector<BigInt>& g) const;

 private:
  SmithResult f_;
  int rows_, cols_;
};

// Z^m modulo the row span of `relations`: invariant factors > 1 together with
// witness rows generating the corresponding cyclic summands. A zero invariant
// marks a free summand (infinite quotient).
struct LatticeQuotient {
  std::vector<BigInt> invariants;
  BigMat witnesses;
};
LatticeQuotient lattice_quotient(const BigMat& relations, int m);

}  // namespace fuslim
