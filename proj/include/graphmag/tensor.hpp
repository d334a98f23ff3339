#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace graphmag {

using cx_double = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 12;
inline constexpr double kHermitianTol = 1e-10;

// Dense complex matrix with bounds-checked element access. Heavy algebra goes
// through eigen(); the wrapper only owns storage and validates shape.
class ComplexMatrix {
public:
	ComplexMatrix() = default;
	ComplexMatrix(Eigen::Index rows, Eigen::Index cols);
	explicit ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}
	ComplexMatrix(std::initializer_list<std::initializer_list<cx_double>> rows);

	static ComplexMatrix identity(Eigen::Index dim);
	static ComplexMatrix zeros(Eigen::Index rows, Eigen::Index cols);

	Eigen::Index rows() const { return m_.rows(); }
	Eigen::Index cols() const { return m_.cols(); }

	cx_double at(Eigen::Index r, Eigen::Index c) const;
	cx_double& at(Eigen::Index r, Eigen::Index c);

	const Eigen::MatrixXcd& eigen() const { return m_; }
	Eigen::MatrixXcd& eigen() { return m_; }

	ComplexMatrix adjoint() const { return ComplexMatrix(m_.adjoint()); }
	cx_double trace() const { return m_.trace(); }

	// max_{ij} |a_ij - b_ij|; throws DimensionMismatch on shape mismatch.
	double max_abs_diff(const ComplexMatrix& other) const;
	// max_{ij} |a_ij - conj(a_ji)|
	double hermiticity_error() const;

	friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
	friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
	friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
	friend ComplexMatrix operator*(cx_double s, const ComplexMatrix& a) { return ComplexMatrix(s * a.m_); }

private:
	Eigen::MatrixXcd m_;
};

struct EigenDecomposition {
	Eigen::VectorXd eigenvalues;   // ascending
	Eigen::MatrixXcd eigenvectors; // orthonormal columns

	ComplexMatrix reconstruct() const;
};

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix hadamard();
} // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Symmetrizes (h + h^dagger)/2 before solving; rejects inputs whose
// anti-Hermitian part exceeds kHermitianTol (NotHermitian).
EigenDecomposition eigh(const ComplexMatrix& h);

// I^{(k-1)} (x) op (x) I^{(n-k)} with 1-based qubit k; qubit 1 is the most significant bit.
ComplexMatrix embed_single(const ComplexMatrix& op, int k, int n);

// exp(-i * scale * h) for Hermitian h.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double scale);

// Throws TooLarge when n exceeds kMaxQubits and TooFewQubits when n < 1.
void check_qubit_count(int n);
std::size_t dimension_for(int n);

} // namespace graphmag
