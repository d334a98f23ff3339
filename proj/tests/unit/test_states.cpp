#include "graphmag/encoding.hpp"
#include "graphmag/states.hpp"

#include "../support/random.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace graphmag;
using Catch::Matchers::WithinAbs;
using testing::throws_code;

namespace {

// Amplitude vector of a product of single-qubit states, qubit 1 first.
ComplexVector product(std::initializer_list<ComplexVector> factors) {
	ComplexVector out = ComplexVector::Ones(1);
	for (const auto& f : factors) out = kron(out, f);
	return out;
}

ComplexVector ket(double a, double b) {
	ComplexVector v(2);
	v << a, b;
	return v;
}

const double kS = 1.0 / std::sqrt(2.0);

ComplexVector power(const ComplexVector& v, int n) {
	ComplexVector out = ComplexVector::Ones(1);
	for (int i = 0; i < n; ++i) out = kron(out, v);
	return out;
}

double max_diff(const ComplexVector& a, const ComplexVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("star graph edges", "[states]") {
	CHECK(star_graph(2).edges() == std::set<Graph::Edge>{{1, 2}});
	CHECK(star_graph(5).edges() == std::set<Graph::Edge>{{1, 2}, {1, 3}, {1, 4}, {1, 5}});
	CHECK(throws_code(ErrorCode::TooFewQubits, [] { (void)star_graph(1); }));
}

TEST_CASE("graph invariants are enforced", "[states]") {
	CHECK(throws_code(ErrorCode::InvalidGraph, [] { Graph(3, {{1, 1}}); }));
	CHECK(throws_code(ErrorCode::InvalidGraph, [] { Graph(3, {{1, 4}}); }));
	CHECK(throws_code(ErrorCode::InvalidGraph, [] { Graph(3, {{1, 2}, {2, 1}}); }));
	CHECK(throws_code(ErrorCode::InvalidGraph, [] { Graph(0, {}); }));
}

TEST_CASE("graph edge-list text format", "[states]") {
	std::istringstream in("# ring\nvertices=4\n1 2\n2 3\n\n3 4 # closing\n4 1\n");
	const auto g = Graph::parse(in);
	CHECK(g.vertex_count() == 4);
	CHECK(g.edges() == std::set<Graph::Edge>{{1, 2}, {2, 3}, {3, 4}, {1, 4}});

	std::ostringstream out;
	g.write(out);
	std::istringstream again(out.str());
	CHECK(Graph::parse(again) == g);

	std::istringstream missing("1 2\n");
	CHECK(throws_code(ErrorCode::InvalidGraph, [&] { (void)Graph::parse(missing); }));
	std::istringstream junk("vertices=3\n1 x\n");
	CHECK(throws_code(ErrorCode::InvalidGraph, [&] { (void)Graph::parse(junk); }));
	std::istringstream dup("vertices=3\n1 2\n2 1\n");
	CHECK(throws_code(ErrorCode::InvalidGraph, [&] { (void)Graph::parse(dup); }));
	CHECK(throws_code(ErrorCode::IoError, [] { (void)Graph::load("/nonexistent/graph.txt"); }));
}

TEST_CASE("graph_state closed forms", "[states]") {
	// (|00> + |01> + |10> - |11>) / 2
	ComplexVector two(4);
	two << 0.5, 0.5, 0.5, -0.5;
	CHECK(max_diff(graph_state(star_graph(2)).amplitudes(), two) <= 1e-15);

	const auto plus = ket(kS, kS);
	const auto minus = ket(kS, -kS);
	CHECK(max_diff(graph_state(empty_graph(2)).amplitudes(), product({plus, plus})) <= 1e-15);

	// (|0++> + |1-->) / sqrt(2)
	const ComplexVector three = kS * (product({ket(1, 0), plus, plus}) + product({ket(0, 1), minus, minus}));
	CHECK(max_diff(graph_state(star_graph(3)).amplitudes(), three) <= 1e-15);

	for (int n = 2; n <= 7; ++n) {
		const ComplexVector expected =
		    kS * (kron(ket(1, 0), power(plus, n - 1)) + kron(ket(0, 1), power(minus, n - 1)));
		CHECK(max_diff(graph_state(star_graph(n)).amplitudes(), expected) <= 1e-12);
	}
}

TEST_CASE("ghz_state closed form and Hadamard route", "[states]") {
	ComplexVector two(4);
	two << kS, 0.0, 0.0, kS;
	CHECK(max_diff(ghz_state(2).amplitudes(), two) <= 1e-15);
	CHECK(throws_code(ErrorCode::TooFewQubits, [] { (void)ghz_state(1); }));

	for (int n = 2; n <= 6; ++n) {
		const auto h1 = embed_single(pauli::hadamard(), 1, n);
		const auto via_star = graph_state(star_graph(n)).apply(h1);
		CHECK(max_diff(via_star.amplitudes(), ghz_state(n).amplitudes()) <= 1e-12);

		const ComplexVector direct = kS * (power(ket(kS, kS), n) + power(ket(kS, -kS), n));
		CHECK(max_diff(ghz_state(n).amplitudes(), direct) <= 1e-12);
	}
}

TEST_CASE("GHZ expectation of J_x vanishes and J_x maps onto |+-> states", "[states]") {
	for (int n = 2; n <= 6; ++n) {
		const auto ghz = ghz_state(n);
		const auto jx = collective_j(Axis::X, n);
		CHECK_THAT(std::abs(ghz.expectation(jx)), WithinAbs(0.0, 1e-12));
		// J_x |GHZ> = N/(2 sqrt 2) (|+>^N - |->^N)
		const ComplexVector expected =
		    (n / (2.0 * std::sqrt(2.0))) * (power(ket(kS, kS), n) - power(ket(kS, -kS), n));
		CHECK(max_diff(jx.eigen() * ghz.amplitudes(), expected) <= 1e-12);
	}
}

TEST_CASE("star graph state is invariant under leaf permutations", "[states][property]") {
	for (int n = 3; n <= 6; ++n) {
		const auto psi = graph_state(star_graph(n)).amplitudes();
		const auto dim = psi.size();
		for (int a = 2; a <= n; ++a) {
			for (int b = a + 1; b <= n; ++b) {
				ComplexVector swapped(dim);
				const int ba = n - a;
				const int bb = n - b;
				for (Eigen::Index i = 0; i < dim; ++i) {
					const auto bit_a = (i >> ba) & 1;
					const auto bit_b = (i >> bb) & 1;
					Eigen::Index j = i & ~((Eigen::Index{1} << ba) | (Eigen::Index{1} << bb));
					j |= (bit_a << bb) | (bit_b << ba);
					swapped(j) = psi(i);
				}
				CHECK(max_diff(swapped, psi) <= 1e-12);
			}
		}
	}
}

TEST_CASE("CZ application order does not matter", "[states][property]") {
	// Apply CZ gates as explicit diagonal matrices in two different orders.
	const int n = 5;
	const std::vector<Graph::Edge> edges{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}, {2, 4}};
	auto cz = [&](int i, int j) {
		const auto dim = static_cast<Eigen::Index>(dimension_for(n));
		Eigen::VectorXcd d = Eigen::VectorXcd::Ones(dim);
		for (Eigen::Index b = 0; b < dim; ++b)
			if (((b >> (n - i)) & 1) && ((b >> (n - j)) & 1)) d(b) = -1.0;
		return d;
	};
	ComplexVector forward = graph_state(empty_graph(n)).amplitudes();
	ComplexVector backward = forward;
	for (auto [i, j] : edges) forward = forward.cwiseProduct(cz(i, j));
	for (auto it = edges.rbegin(); it != edges.rend(); ++it) backward = backward.cwiseProduct(cz(it->first, it->second));
	CHECK(max_diff(forward, backward) <= 1e-12);
	const auto library = graph_state(Graph(n, std::set<Graph::Edge>(edges.begin(), edges.end())));
	CHECK(max_diff(library.amplitudes(), forward) <= 1e-12);
}

TEST_CASE("pure states enforce normalisation", "[states]") {
	ComplexVector v = ComplexVector::Ones(4);
	CHECK(throws_code(ErrorCode::BadDomain, [&] { PureState(2, v); }));
	CHECK(throws_code(ErrorCode::DimensionMismatch, [&] { PureState(3, v / 2.0); }));
	CHECK_NOTHROW(PureState(2, v / 2.0));
	CHECK(throws_code(ErrorCode::IndexOutOfRange, [&] { (void)PureState(2, v / 2.0).amplitude(4); }));
}
