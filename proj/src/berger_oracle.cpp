// Brute-force check of the Berger-sphere mode structure.
//
// Degree-k harmonic polynomials on R^4 restrict to the k(k+2) eigenspace of
// the round S^3. Writing R^4 = C^2 with coordinates (z1, z2, zb1, zb2), the
// Hopf Killing field is xi = i sum_j (z_j d/dz_j - zb_j d/dzb_j). We build the
// Laplacian 4 sum_j d^2/dz_j dzb_j on the monomial basis, take its kernel,
// and diagonalize the Hermitian generator -i xi (and -xi xi) on that kernel.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "steklov/boundary_modes.hpp"
#include "steklov/errors.hpp"

namespace steklov {

namespace {

using Exponent = std::array<int, 4>;  // powers of z1, z2, zb1, zb2

std::vector<Exponent> monomials(int degree) {
  std::vector<Exponent> out;
  if (degree < 0) return out;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c) out.push_back({a, b, c, degree - a - b - c});
  return out;
}

std::map<Exponent, int> index_of(const std::vector<Exponent>& basis) {
  std::map<Exponent, int> idx;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) idx[basis[i]] = i;
  return idx;
}

// Flat Laplacian: degree k -> degree k-2.
Eigen::MatrixXd laplacian_matrix(const std::vector<Exponent>& from, const std::vector<Exponent>& to) {
  const auto to_idx = index_of(to);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(to.size()),
                                            static_cast<Eigen::Index>(from.size()));
  for (int col = 0; col < static_cast<int>(from.size()); ++col) {
    const Exponent& e = from[col];
    for (int j = 0; j < 2; ++j) {
      const int zp = e[j];
      const int zbp = e[j + 2];
      if (zp == 0 || zbp == 0) continue;
      Exponent r = e;
      --r[j];
      --r[j + 2];
      L(to_idx.at(r), col) += 4.0 * zp * zbp;
    }
  }
  return L;
}

// -i xi on monomials: z_j d/dz_j - zb_j d/dzb_j applied term by term.
Eigen::MatrixXd hopf_generator(const std::vector<Exponent>& basis) {
  const auto idx = index_of(basis);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (int col = 0; col < static_cast<int>(basis.size()); ++col) {
    const Exponent& e = basis[col];
    for (int j = 0; j < 2; ++j) {
      // z_j d/dz_j multiplies by the z_j power and returns the same monomial.
      if (e[j] > 0) G(idx.at(e), col) += e[j];
      if (e[j + 2] > 0) G(idx.at(e), col) -= e[j + 2];
    }
  }
  return G;
}

int round_checked(double v, const char* what) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-8) {
    std::ostringstream os;
    os << "berger oracle: " << what << " eigenvalue " << v << " is not an integer";
    throw NumericError(os.str());
  }
  return static_cast<int>(r);
}

}  // namespace

std::vector<BergerOracleRow> berger_oracle(int k_max) {
  if (k_max < 0) throw DomainError("berger oracle needs k_max >= 0");
  if (k_max > kBergerOracleMaxDegree) {
    std::ostringstream os;
    os << "berger oracle is limited to k_max <= " << kBergerOracleMaxDegree << " (dense computation)";
    throw ResourceError(os.str());
  }

  std::vector<BergerOracleRow> rows;
  for (int k = 0; k <= k_max; ++k) {
    const auto basis = monomials(k);
    const auto lower = monomials(k - 2);
    const auto n = static_cast<Eigen::Index>(basis.size());

    // Orthonormal basis of the harmonic subspace.
    Eigen::MatrixXd harmonic;
    if (lower.empty()) {
      harmonic = Eigen::MatrixXd::Identity(n, n);
    } else {
      const Eigen::MatrixXd L = laplacian_matrix(basis, lower);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullV);
      const double tol = 1e-10 * std::max(1.0, svd.singularValues()(0));
      Eigen::Index rank = 0;
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++rank;
      harmonic = svd.matrixV().rightCols(n - rank);
    }

    const Eigen::MatrixXd G = hopf_generator(basis);
    const Eigen::MatrixXd restricted = harmonic.transpose() * G * harmonic;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> weights(restricted);
    const Eigen::MatrixXd casimir = harmonic.transpose() * (G * G) * harmonic;  // -xi xi
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> squares(casimir, Eigen::EigenvaluesOnly);

    std::map<int, int> multiplicity;
    for (Eigen::Index i = 0; i < weights.eigenvalues().size(); ++i)
      ++multiplicity[round_checked(weights.eigenvalues()(i), "Hopf weight")];

    // -xi xi must carry exactly the squared weights.
    std::map<int, int> square_mult;
    for (Eigen::Index i = 0; i < squares.eigenvalues().size(); ++i)
      ++square_mult[round_checked(squares.eigenvalues()(i), "-xi xi")];
    std::map<int, int> expected_squares;
    for (const auto& [m, mult] : multiplicity) expected_squares[m * m] += mult;
    if (square_mult != expected_squares)
      throw NumericError("berger oracle: -xi xi spectrum disagrees with squared Hopf weights");

    for (const auto& [m, mult] : multiplicity)
      rows.push_back({k, m, mult, static_cast<double>(k) * (k + 2)});
  }
  return rows;
}

}  // namespace steklov
