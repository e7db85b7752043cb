#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "entdist/error.hpp"

// Dense two-qubit kernel: pure/mixed fidelities, the Bell-state entanglement
// fidelity and a Jacobi eigensolver for 4x4 Hermitian matrices. Basis order
// is |00>, |01>, |10>, |11>.

namespace entdist::quantum {

using Complex = std::complex<double>;
inline constexpr std::size_t kDim = 4;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kJacobiOffDiagonal = 1e-13;
inline constexpr double kEigenvalueFloor = 1e-14;

/// Row-major 4x4 complex matrix.
class Matrix4 {
 public:
  Matrix4() { data_.fill(Complex{}); }

  static Matrix4 identity() {
    Matrix4 m;
    for (std::size_t i = 0; i < kDim; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix4 diagonal(const std::array<double, kDim>& d) {
    Matrix4 m;
    for (std::size_t i = 0; i < kDim; ++i) m(i, i) = d[i];
    return m;
  }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * kDim + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * kDim + c]; }

  Matrix4 adjoint() const {
    Matrix4 out;
    for (std::size_t r = 0; r < kDim; ++r)
      for (std::size_t c = 0; c < kDim; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
  }

  Complex trace() const {
    Complex t{};
    for (std::size_t i = 0; i < kDim; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  friend Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
    Matrix4 out;
    for (std::size_t r = 0; r < kDim; ++r)
      for (std::size_t k = 0; k < kDim; ++k) {
        const Complex ark = a(r, k);
        for (std::size_t c = 0; c < kDim; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  friend Matrix4 operator+(Matrix4 a, const Matrix4& b) {
    for (std::size_t i = 0; i < kDim * kDim; ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix4 operator-(Matrix4 a, const Matrix4& b) {
    for (std::size_t i = 0; i < kDim * kDim; ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix4 operator*(double s, Matrix4 a) {
    for (auto& z : a.data_) z *= s;
    return a;
  }

 private:
  std::array<Complex, kDim * kDim> data_;
};

struct PureState {
  std::array<Complex, kDim> amplitudes{};

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
  }

  /// |psi><psi|
  Matrix4 projector() const {
    Matrix4 m;
    for (std::size_t r = 0; r < kDim; ++r)
      for (std::size_t c = 0; c < kDim; ++c) m(r, c) = amplitudes[r] * std::conj(amplitudes[c]);
    return m;
  }
};

inline void require_normalized(const PureState& s, const char* op) {
  if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
    throw InvalidInput(std::string(op) + ": state is not normalized");
  }
}

/// Largest |m - m^dagger| entry.
inline double hermiticity_defect(const Matrix4& m) {
  double worst = 0.0;
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t c = r; c < kDim; ++c) worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

struct Eigensystem {
  std::array<double, kDim> values{};
  Matrix4 vectors;  // column k is the eigenvector of values[k]
  int sweeps = 0;
};

/// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
/// and then applies a real Givens rotation, so V stays unitary throughout.
inline Eigensystem eigendecompose_hermitian(const Matrix4& m) {
  if (hermiticity_defect(m) > kHermitianTolerance * std::max(1.0, m.frobenius_norm())) {
    throw InvalidInput("eigendecompose_hermitian: matrix is not Hermitian");
  }
  Matrix4 a = m;
  Matrix4 v = Matrix4::identity();

  auto off_norm = [&a] {
    double s = 0.0;
    for (std::size_t r = 0; r < kDim; ++r)
      for (std::size_t c = 0; c < kDim; ++c)
        if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
  };

  int sweeps = 0;
  constexpr int kMaxSweeps = 64;
  while (off_norm() >= kJacobiOffDiagonal && sweeps < kMaxSweeps) {
    ++sweeps;
    for (std::size_t p = 0; p + 1 < kDim; ++p) {
      for (std::size_t q = p + 1; q < kDim; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i theta}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G restricted to (p,q): [[c, s], [-s e^{-i theta}, c e^{-i theta}]]
        const Complex g_pp = c;
        const Complex g_pq = s;
        const Complex g_qp = -s * std::conj(phase);
        const Complex g_qq = c * std::conj(phase);

        // a <- a G, v <- v G
        for (std::size_t r = 0; r < kDim; ++r) {
          const Complex arp = a(r, p), arq = a(r, q);
          a(r, p) = arp * g_pp + arq * g_qp;
          a(r, q) = arp * g_pq + arq * g_qq;
          const Complex vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp * g_pp + vrq * g_qp;
          v(r, q) = vrp * g_pq + vrq * g_qq;
        }
        // a <- G^dagger a
        for (std::size_t c2 = 0; c2 < kDim; ++c2) {
          const Complex apc = a(p, c2), aqc = a(q, c2);
          a(p, c2) = std::conj(g_pp) * apc + std::conj(g_qp) * aqc;
          a(q, c2) = std::conj(g_pq) * apc + std::conj(g_qq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  Eigensystem out;
  out.vectors = v;
  out.sweeps = sweeps;
  for (std::size_t i = 0; i < kDim; ++i) out.values[i] = a(i, i).real();
  return out;
}

/// V diag(values) V^dagger
inline Matrix4 reconstruct(const Eigensystem& es) {
  return es.vectors * Matrix4::diagonal(es.values) * es.vectors.adjoint();
}

/// Validated two-qubit density matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix4& m) : m_(m) {
    if (hermiticity_defect(m) > kHermitianTolerance) throw InvalidInput("density matrix: not Hermitian");
    const Complex tr = m.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) throw InvalidInput("density matrix: trace != 1");
    const auto es = eigendecompose_hermitian(m);
    for (double lambda : es.values) {
      if (lambda < -kPsdTolerance) throw InvalidInput("density matrix: not positive semidefinite");
    }
  }

  static DensityMatrix from_pure(const PureState& psi) {
    require_normalized(psi, "DensityMatrix::from_pure");
    return DensityMatrix(psi.projector());
  }

  const Matrix4& matrix() const noexcept { return m_; }

 private:
  Matrix4 m_;
};

/// (|00> + |11>) / sqrt(2)
inline PureState bell_state() {
  PureState s;
  s.amplitudes = {std::numbers::sqrt2 / 2.0, 0.0, 0.0, std::numbers::sqrt2 / 2.0};
  return s;
}

inline PureState basis_state(std::size_t k) {
  if (k >= kDim) throw InvalidInput("basis_state: index out of range");
  PureState s;
  s.amplitudes[k] = 1.0;
  return s;
}

/// |<a|b>|^2
inline double fidelity_pure(const PureState& a, const PureState& b) {
  require_normalized(a, "fidelity_pure");
  require_normalized(b, "fidelity_pure");
  Complex overlap{};
  for (std::size_t k = 0; k < kDim; ++k) overlap += std::conj(a.amplitudes[k]) * b.amplitudes[k];
  return std::norm(overlap);
}

/// <psi|sigma|psi>
inline double fidelity_pure_mixed(const PureState& psi, const DensityMatrix& sigma) {
  require_normalized(psi, "fidelity_pure_mixed");
  const Matrix4& s = sigma.matrix();
  Complex acc{};
  for (std::size_t r = 0; r < kDim; ++r)
    for (std::size_t c = 0; c < kDim; ++c) acc += std::conj(psi.amplitudes[r]) * s(r, c) * psi.amplitudes[c];
  return acc.real();
}

/// Overlap of a stored pair with the ideal Bell state.
inline double entanglement_fidelity(const DensityMatrix& sigma) { return fidelity_pure_mixed(bell_state(), sigma); }

namespace detail {

inline Matrix4 hermitian_part(const Matrix4& m) { return 0.5 * (m + m.adjoint()); }

/// Square root of an eigenvalue. Values at or below kEigenvalueFloor * scale
/// count as exact zeros.
inline double root_of_eigenvalue(double lambda, double scale, const char* op) {
  if (lambda < -kPsdTolerance) throw InvalidInput(std::string(op) + ": eigenvalue below PSD tolerance");
  return lambda <= kEigenvalueFloor * scale ? 0.0 : std::sqrt(lambda);
}

inline double eigenvalue_scale(const Eigensystem& es) {
  double scale = 1.0;
  for (double lambda : es.values) scale = std::max(scale, std::abs(lambda));
  return scale;
}

inline Matrix4 psd_sqrt(const Matrix4& m) {
  auto es = eigendecompose_hermitian(hermitian_part(m));
  const double scale = eigenvalue_scale(es);
  for (double& lambda : es.values) lambda = root_of_eigenvalue(lambda, scale, "matrix square root");
  return reconstruct(es);
}

}  // namespace detail

/// Uhlmann fidelity (Tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2.
inline double fidelity_mixed(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Matrix4 root = detail::psd_sqrt(sigma.matrix());
  const Matrix4 inner = detail::hermitian_part(root * rho.matrix() * root);
  const auto es = eigendecompose_hermitian(inner);
  const double scale = detail::eigenvalue_scale(es);
  double tr = 0.0;
  for (double lambda : es.values) tr += detail::root_of_eigenvalue(lambda, scale, "fidelity_mixed");
  return tr * tr;
}

/// w |beta00><beta00| + (1 - w) I/4
inline DensityMatrix werner_state(double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("werner_state: weight must lie in [0,1]");
  return DensityMatrix(w * bell_state().projector() + ((1.0 - w) / 4.0) * Matrix4::identity());
}

}  // namespace entdist::quantum
