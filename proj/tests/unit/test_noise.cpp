#include "graphmag/encoding.hpp"
#include "graphmag/noise.hpp"
#include "graphmag/states.hpp"

#include "../support/random.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <numbers>

using namespace graphmag;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using testing::throws_code;
using std::numbers::pi;

namespace {

// Per-qubit channel via explicit 2^N Kraus operators built with embed_single.
ComplexMatrix brute_channel(const ComplexMatrix& rho, const KrausSet& ks, int n) {
	ComplexMatrix cur = rho;
	for (int k = 1; k <= n; ++k) {
		ComplexMatrix next = ComplexMatrix::zeros(rho.rows(), rho.cols());
		for (const auto& op : ks.ops()) {
			const auto big = embed_single(op, k, n);
			next = next + big * cur * big.adjoint();
		}
		cur = next;
	}
	return cur;
}

NoiseSpec random_spec(std::mt19937_64& rng, NoiseKind kind) {
	NoiseSpec s;
	s.kind = kind;
	if (s.is_probability_kind()) {
		s.gamma = testing::uniform(rng, 0.0, 1.0);
	} else {
		s.gamma = testing::uniform(rng, 0.0, 3.0);
		s.tau_c = testing::uniform(rng, 0.5, 30.0);
		s.t = testing::uniform(rng, 0.0, 5.0);
	}
	return s;
}

constexpr std::array kChannelKinds{NoiseKind::Dephasing,  NoiseKind::OuHomogeneous, NoiseKind::OuInhomogeneous,
                                   NoiseKind::OuExact,    NoiseKind::BitFlip,       NoiseKind::PhaseFlip,
                                   NoiseKind::Depolarizing};

} // namespace

TEST_CASE("q_of_t cases", "[noise]") {
	NoiseSpec homo{NoiseKind::OuHomogeneous, 0.5, std::nullopt, 1.0};
	CHECK_THAT(q_of_t(homo), WithinAbs(1.0 - std::exp(-0.5), 1e-15));
	CHECK_THAT(q_of_t(homo), WithinAbs(0.3934693, 5e-8));

	NoiseSpec inho{NoiseKind::OuInhomogeneous, 0.5, 20.0, 1.0};
	CHECK_THAT(q_of_t(inho), WithinAbs(1.0 - std::exp(-0.0125), 1e-15));
	CHECK_THAT(q_of_t(inho), WithinAbs(0.0124222, 5e-8));

	NoiseSpec deph{NoiseKind::Dephasing, 0.7, std::nullopt, 2.0};
	CHECK_THAT(q_of_t(deph), WithinAbs(1.0 - std::exp(-1.4), 1e-15));

	for (NoiseKind k : {NoiseKind::Dephasing, NoiseKind::OuHomogeneous, NoiseKind::OuInhomogeneous, NoiseKind::OuExact}) {
		NoiseSpec s{k, 2.0, 20.0, 0.0};
		CHECK(q_of_t(s) == 0.0);
	}
	CHECK(q_of_t(NoiseSpec{NoiseKind::None, 5.0, std::nullopt, 3.0}) == 0.0);
	CHECK(q_of_t(NoiseSpec{NoiseKind::BitFlip, 0.25, std::nullopt, 3.0}) == 0.25);
}

TEST_CASE("q_of_t errors", "[noise]") {
	CHECK(throws_code(ErrorCode::MissingTauC, [] { (void)q_of_t({NoiseKind::OuInhomogeneous, 0.5, std::nullopt, 1.0}); }));
	CHECK(throws_code(ErrorCode::MissingTauC, [] { (void)q_of_t({NoiseKind::OuExact, 0.5, std::nullopt, 1.0}); }));
	CHECK(throws_code(ErrorCode::BadProbability, [] { (void)q_of_t({NoiseKind::Depolarizing, 1.5, std::nullopt, 1.0}); }));
	CHECK(throws_code(ErrorCode::BadProbability, [] { (void)q_of_t({NoiseKind::BitFlip, -0.1, std::nullopt, 1.0}); }));
	CHECK(throws_code(ErrorCode::BadProbability, [] { (void)q_of_t({NoiseKind::Dephasing, -1.0, std::nullopt, 1.0}); }));
	CHECK(throws_code(ErrorCode::BadProbability, [] { (void)dephasing_kraus(1.01); }));
	CHECK(throws_code(ErrorCode::ConfigError, [] { (void)parse_noise_kind("amplitude_damping"); }));
}

TEST_CASE("q_of_t is monotone with limits 0 and 1", "[noise][property]") {
	for (NoiseKind k : {NoiseKind::Dephasing, NoiseKind::OuHomogeneous, NoiseKind::OuInhomogeneous, NoiseKind::OuExact}) {
		for (double gamma : {0.05, 0.5, 2.0}) {
			double prev = 0.0;
			for (int i = 0; i <= 200; ++i) {
				const double q = q_of_t({k, gamma, 20.0, 0.05 * i});
				CHECK(q >= prev);
				prev = q;
			}
			CHECK_THAT(q_of_t({k, gamma, 20.0, 1e6}), WithinAbs(1.0, 1e-12));
		}
	}
}

TEST_CASE("exact OU law tends to the homogeneous branch for short memory", "[noise][property]") {
	for (double t : {0.5, 1.0, 3.0}) {
		const double homo = q_of_t({NoiseKind::OuHomogeneous, 0.8, std::nullopt, t});
		const double exact = q_of_t({NoiseKind::OuExact, 0.8, 1e-6, t});
		CHECK_THAT(exact, WithinAbs(homo, 1e-5));
		// Long memory reproduces the inhomogeneous branch at short times.
		const double inho = q_of_t({NoiseKind::OuInhomogeneous, 0.8, 1e4, t});
		const double slow = q_of_t({NoiseKind::OuExact, 0.8, 1e4, t});
		CHECK_THAT(slow, WithinRel(inho, 1e-3));
	}
}

TEST_CASE("Kraus sets", "[noise]") {
	const auto zero = dephasing_kraus(0.0);
	CHECK(zero.is_identity());
	CHECK(zero.ops()[0].max_abs_diff(pauli::identity()) == 0.0);

	const auto full = dephasing_kraus(1.0);
	CHECK(full.ops()[0].max_abs_diff(ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}) == 0.0);
	CHECK(full.ops()[1].max_abs_diff(ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}) == 0.0);

	const auto dep = kraus_set({NoiseKind::Depolarizing, 0.3, std::nullopt, 1.0});
	CHECK(dep.ops().size() == 4);
	CHECK(dep.completeness_error() <= 1e-14);
	CHECK(dep.ops()[1].max_abs_diff(std::sqrt(0.1) * pauli::x()) <= 1e-15);
	CHECK(dep.ops()[2].max_abs_diff(std::sqrt(0.1) * pauli::y()) <= 1e-15);

	const auto bf = kraus_set({NoiseKind::BitFlip, 0.2, std::nullopt, 1.0});
	CHECK(bf.ops()[1].max_abs_diff(std::sqrt(0.2) * pauli::x()) <= 1e-15);
	const auto pf = kraus_set({NoiseKind::PhaseFlip, 0.2, std::nullopt, 1.0});
	CHECK(pf.ops()[1].max_abs_diff(std::sqrt(0.2) * pauli::z()) <= 1e-15);

	CHECK(throws_code(ErrorCode::BadProbability, [] { KrausSet({2.0 * pauli::identity()}); }));
	CHECK(throws_code(ErrorCode::DimensionMismatch, [] { KrausSet({ComplexMatrix::identity(4)}); }));
}

TEST_CASE("density matrix invariants", "[noise]") {
	CHECK_NOTHROW(DensityMatrix(1, ComplexMatrix{{0.5, 0.0}, {0.0, 0.5}}));
	CHECK(throws_code(ErrorCode::BadDomain, [] { DensityMatrix(1, ComplexMatrix{{0.6, 0.0}, {0.0, 0.6}}); }));
	CHECK(throws_code(ErrorCode::NotHermitian, [] { DensityMatrix(1, ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}); }));
	CHECK(throws_code(ErrorCode::BadDomain, [] { DensityMatrix(1, ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}); }));
	CHECK(throws_code(ErrorCode::DimensionMismatch, [] { DensityMatrix(2, ComplexMatrix::identity(2)); }));
	const auto mixed = DensityMatrix::maximally_mixed(3);
	CHECK_THAT(mixed.population(5), WithinAbs(0.125, 1e-15));
}

TEST_CASE("identity channel leaves rho unchanged", "[noise]") {
	std::mt19937_64 rng(5);
	const DensityMatrix rho(3, testing::random_density(8, rng));
	const auto out = apply_channel_all(rho, dephasing_kraus(0.0));
	CHECK(out.matrix().max_abs_diff(rho.matrix()) == 0.0);
}

TEST_CASE("channel application agrees with the embedded Kraus sum", "[noise][property]") {
	std::mt19937_64 rng(99);
	for (NoiseKind kind : kChannelKinds) {
		for (int n = 1; n <= 4; ++n) {
			const auto ks = kraus_set(random_spec(rng, kind));
			const auto rho = testing::random_density(Eigen::Index{1} << n, rng);
			const auto fast = apply_channel_all(rho, ks, n);
			CHECK(fast.max_abs_diff(brute_channel(rho, ks, n)) <= 1e-13);
			// Non-Hermitian inputs too: the map is linear.
			const auto h = testing::random_hermitian(Eigen::Index{1} << n, rng);
			const ComplexMatrix skew = rho + cx_double(0.0, 1.0) * h;
			CHECK(apply_channel_all(skew, ks, n).max_abs_diff(brute_channel(skew, ks, n)) <= 1e-12);
		}
	}
}

TEST_CASE("channels are CPTP on random states", "[noise][property]") {
	std::mt19937_64 rng(1234);
	for (NoiseKind kind : kChannelKinds) {
		for (int draw = 0; draw < 20; ++draw) {
			const int n = 1 + draw % 4;
			const DensityMatrix rho(n, testing::random_density(Eigen::Index{1} << n, rng));
			const auto out = apply_channel_all(rho, kraus_set(random_spec(rng, kind)));
			CHECK(std::abs(out.matrix().trace() - 1.0) <= 1e-12);
			CHECK(out.matrix().hermiticity_error() <= 1e-12);
			CHECK(eigh(out.matrix()).eigenvalues.minCoeff() >= -1e-9);
		}
	}
}

TEST_CASE("qubit visiting order does not matter", "[noise][property]") {
	std::mt19937_64 rng(31);
	for (NoiseKind kind : kChannelKinds) {
		const int n = 4;
		const auto ks = kraus_set(random_spec(rng, kind));
		const auto rho = testing::random_density(16, rng);
		std::vector<int> order{1, 2, 3, 4};
		const auto base = apply_channel_ordered(rho, ks, n, order);
		for (int perm = 0; perm < 6; ++perm) {
			std::shuffle(order.begin(), order.end(), rng);
			CHECK(apply_channel_ordered(rho, ks, n, order).max_abs_diff(base) <= 1e-12);
		}
	}
}

TEST_CASE("dephasing preserves the diagonal", "[noise][property]") {
	std::mt19937_64 rng(8);
	for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
		const DensityMatrix rho(3, testing::random_density(8, rng));
		const auto out = apply_channel_all(rho, dephasing_kraus(p));
		CHECK((out.populations() - rho.populations()).cwiseAbs().maxCoeff() <= 1e-15);
	}
}

TEST_CASE("full dephasing of the evolved N=2 star state", "[noise]") {
	for (double phi : {0.0, 0.4, pi / 6, pi / 2, 2.0}) {
		const auto g = graph_state(star_graph(2));
		const auto evolved = g.apply(phase_unitary(PhaseVector::single(phi), 1.0, 2));
		const auto out = apply_channel_all(DensityMatrix::from_pure(evolved), dephasing_kraus(1.0));
		const double c = std::sin(phi) * std::sin(phi);
		Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
		for (int k = 0; k < 4; ++k) expected(k, k) = (1.0 + c * (std::popcount(unsigned(k)) % 2 ? -1.0 : 1.0)) / 4.0;
		CHECK(out.matrix().max_abs_diff(ComplexMatrix(expected)) <= 1e-10);
	}
}
