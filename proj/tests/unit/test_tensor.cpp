#include "graphmag/error.hpp"
#include "graphmag/tensor.hpp"

#include "../support/random.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>

using namespace graphmag;
using Catch::Matchers::WithinAbs;

using testing::throws_code;

TEST_CASE("kron of basic operators", "[tensor]") {
	const auto id = pauli::identity();
	CHECK(kron(id, id).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

	const auto zz = kron(pauli::z(), pauli::z());
	const ComplexMatrix expected{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}};
	CHECK(zz.max_abs_diff(expected) == 0.0);

	ComplexVector zero(2), plus(2);
	zero << 1.0, 0.0;
	plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
	const ComplexVector v = kron(zero, plus);
	REQUIRE(v.size() == 4);
	CHECK_THAT(std::abs(v(0) - 1.0 / std::sqrt(2.0)), WithinAbs(0.0, 1e-15));
	CHECK_THAT(std::abs(v(1) - 1.0 / std::sqrt(2.0)), WithinAbs(0.0, 1e-15));
	CHECK(std::abs(v(2)) == 0.0);
	CHECK(std::abs(v(3)) == 0.0);
}

TEST_CASE("kron is associative", "[tensor][property]") {
	std::mt19937_64 rng(11);
	for (int trial = 0; trial < 10; ++trial) {
		const auto a = testing::random_hermitian(2, rng);
		const auto b = testing::random_hermitian(4, rng);
		const auto c = testing::random_hermitian(2, rng);
		const auto left = kron(kron(a, b), c);
		const auto right = kron(a, kron(b, c));
		REQUIRE(left.rows() == 16);
		REQUIRE(right.rows() == 16);
		CHECK(left.max_abs_diff(right) <= 1e-12);
	}
}

TEST_CASE("element access is bounds-checked", "[tensor]") {
	const auto id = ComplexMatrix::identity(2);
	CHECK(id.at(1, 1) == cx_double(1.0));
	CHECK(throws_code(ErrorCode::IndexOutOfRange, [&] { (void)id.at(2, 0); }));
	CHECK(throws_code(ErrorCode::IndexOutOfRange, [&] { (void)id.at(0, -1); }));
}

TEST_CASE("eigh on Pauli and diagonal inputs", "[tensor]") {
	const auto z = eigh(pauli::z());
	CHECK_THAT(z.eigenvalues(0), WithinAbs(-1.0, 1e-14));
	CHECK_THAT(z.eigenvalues(1), WithinAbs(1.0, 1e-14));

	const auto x = eigh(pauli::x());
	CHECK_THAT(x.eigenvalues(0), WithinAbs(-1.0, 1e-14));
	CHECK_THAT(x.eigenvalues(1), WithinAbs(1.0, 1e-14));
	// |-> for -1 and |+> for +1, up to a phase
	const double s = 1.0 / std::sqrt(2.0);
	CHECK_THAT(std::abs(x.eigenvectors(0, 0) + x.eigenvectors(1, 0)), WithinAbs(0.0, 1e-14));
	CHECK_THAT(std::abs(x.eigenvectors(0, 0)), WithinAbs(s, 1e-14));
	CHECK_THAT(std::abs(x.eigenvectors(0, 1) - x.eigenvectors(1, 1)), WithinAbs(0.0, 1e-14));

	ComplexMatrix rho = ComplexMatrix::zeros(4, 4);
	rho.at(0, 0) = 0.5;
	rho.at(3, 3) = 0.5;
	const auto d = eigh(rho);
	CHECK_THAT(d.eigenvalues(0), WithinAbs(0.0, 1e-15));
	CHECK_THAT(d.eigenvalues(1), WithinAbs(0.0, 1e-15));
	CHECK_THAT(d.eigenvalues(2), WithinAbs(0.5, 1e-15));
	CHECK_THAT(d.eigenvalues(3), WithinAbs(0.5, 1e-15));
}

TEST_CASE("eigh rejects non-Hermitian input", "[tensor]") {
	const ComplexMatrix m{{1.0, 1.0}, {0.0, 1.0}};
	CHECK(throws_code(ErrorCode::NotHermitian, [&] { (void)eigh(m); }));
	// asymmetry at the 1e-14 level is symmetrized away
	ComplexMatrix nearly = pauli::x();
	nearly.at(0, 1) += 1e-14;
	CHECK_NOTHROW(eigh(nearly));
}

TEST_CASE("eigh reconstruction and orthonormality", "[tensor][property]") {
	std::mt19937_64 rng(7);
	for (Eigen::Index dim : {2, 4, 8, 16}) {
		for (int trial = 0; trial < 5; ++trial) {
			const auto h = testing::random_hermitian(dim, rng);
			const auto d = eigh(h);
			CHECK(d.reconstruct().max_abs_diff(h) <= 1e-10);
			const Eigen::MatrixXcd gram = d.eigenvectors.adjoint() * d.eigenvectors;
			CHECK((gram - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-10);
			for (Eigen::Index k = 1; k < dim; ++k) CHECK(d.eigenvalues(k) >= d.eigenvalues(k - 1));
		}
	}
}

TEST_CASE("embed_single places the operator on qubit k", "[tensor]") {
	CHECK(embed_single(pauli::x(), 1, 1).max_abs_diff(pauli::x()) == 0.0);
	CHECK(embed_single(pauli::z(), 2, 2).max_abs_diff(kron(pauli::identity(), pauli::z())) == 0.0);

	// K_0 at lambda = 1 is diag(1, 0); diag(1,0) (x) I = diag(1, 1, 0, 0)
	const ComplexMatrix k0{{1.0, 0.0}, {0.0, 0.0}};
	const ComplexMatrix expected{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
	CHECK(embed_single(k0, 1, 2).max_abs_diff(expected) == 0.0);

	CHECK(throws_code(ErrorCode::IndexOutOfRange, [] { (void)embed_single(pauli::x(), 0, 3); }));
	CHECK(throws_code(ErrorCode::IndexOutOfRange, [] { (void)embed_single(pauli::x(), 4, 3); }));
	CHECK(throws_code(ErrorCode::TooLarge, [] { (void)embed_single(pauli::x(), 1, kMaxQubits + 1); }));
}

TEST_CASE("expm_hermitian closed forms", "[tensor]") {
	CHECK(expm_hermitian(pauli::x(), 0.0).max_abs_diff(pauli::identity()) <= 1e-15);

	// exp(-i pi sigma_x / 2) = cos(pi/2) I - i sin(pi/2) sigma_x = -i sigma_x
	const auto u = expm_hermitian(cx_double(0.5) * pauli::x(), std::numbers::pi);
	CHECK(u.max_abs_diff(cx_double(0.0, -1.0) * pauli::x()) <= 1e-14);

	const ComplexMatrix bad{{0.0, 1.0}, {0.0, 0.0}};
	CHECK(throws_code(ErrorCode::NotHermitian, [&] { (void)expm_hermitian(bad, 1.0); }));
}

TEST_CASE("expm_hermitian is unitary and inverts with -t", "[tensor][property]") {
	std::mt19937_64 rng(3);
	for (Eigen::Index dim : {2, 4, 8, 16}) {
		for (int trial = 0; trial < 5; ++trial) {
			const auto h = testing::random_hermitian(dim, rng);
			const double t = testing::uniform(rng, -3.0, 3.0);
			const auto u = expm_hermitian(h, t);
			const auto back = expm_hermitian(h, -t);
			CHECK((u * back).max_abs_diff(ComplexMatrix::identity(dim)) <= 1e-9);
			CHECK((u.adjoint() * u).max_abs_diff(ComplexMatrix::identity(dim)) <= 1e-10);
		}
	}
}
