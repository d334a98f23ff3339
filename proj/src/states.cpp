#include "graphmag/states.hpp"

#include "graphmag/error.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

namespace graphmag {

Graph::Graph(int vertex_count, std::set<Edge> edges) : vertex_count_(vertex_count) {
	if (vertex_count < 1) {
		throw Error(ErrorCode::InvalidGraph, "vertex count must be positive");
	}
	for (auto [i, j] : edges) {
		if (i == j) {
			throw Error(ErrorCode::InvalidGraph, "self-loop on vertex " + std::to_string(i));
		}
		if (i < 1 || j < 1 || i > vertex_count || j > vertex_count) {
			throw Error(ErrorCode::InvalidGraph,
			            "edge (" + std::to_string(i) + "," + std::to_string(j) + ") outside [1, " +
			                std::to_string(vertex_count) + "]");
		}
		if (!edges_.emplace(std::min(i, j), std::max(i, j)).second) {
			throw Error(ErrorCode::InvalidGraph,
			            "duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
		}
	}
}

Graph Graph::parse(std::istream& in) {
	int vertices = -1;
	std::set<Edge> edges;
	std::string line;
	int lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (auto hash = line.find('#'); hash != std::string::npos) {
			line.erase(hash);
		}
		std::istringstream ls(line);
		std::string first;
		if (!(ls >> first)) {
			continue;
		}
		if (first.rfind("vertices=", 0) == 0) {
			try {
				vertices = std::stoi(first.substr(9));
			} catch (const std::exception&) {
				throw Error(ErrorCode::InvalidGraph, "line " + std::to_string(lineno) + ": bad vertex count");
			}
			continue;
		}
		int i = 0;
		int j = 0;
		std::string rest;
		try {
			i = std::stoi(first);
		} catch (const std::exception&) {
			throw Error(ErrorCode::InvalidGraph, "line " + std::to_string(lineno) + ": expected 'i j'");
		}
		if (!(ls >> j) || (ls >> rest)) {
			throw Error(ErrorCode::InvalidGraph, "line " + std::to_string(lineno) + ": expected 'i j'");
		}
		if (i == j) {
			throw Error(ErrorCode::InvalidGraph, "line " + std::to_string(lineno) + ": self-loop");
		}
		if (!edges.emplace(std::min(i, j), std::max(i, j)).second) {
			throw Error(ErrorCode::InvalidGraph, "line " + std::to_string(lineno) + ": duplicate edge");
		}
	}
	if (vertices < 0) {
		throw Error(ErrorCode::InvalidGraph, "missing 'vertices=V' header");
	}
	return Graph(vertices, std::move(edges));
}

Graph Graph::load(const std::string& path) {
	std::ifstream in(path);
	if (!in) {
		throw Error(ErrorCode::IoError, "cannot open graph file " + path);
	}
	return parse(in);
}

void Graph::write(std::ostream& out) const {
	out << "vertices=" << vertex_count_ << '\n';
	for (auto [i, j] : edges_) {
		out << i << ' ' << j << '\n';
	}
}

PureState::PureState(int qubit_count, ComplexVector amplitudes)
    : qubit_count_(qubit_count), amplitudes_(std::move(amplitudes)) {
	if (static_cast<std::size_t>(amplitudes_.size()) != dimension_for(qubit_count)) {
		throw Error(ErrorCode::DimensionMismatch, "amplitude count does not match 2^N");
	}
	const double norm = amplitudes_.norm();
	if (std::abs(norm - 1.0) > kNormTol) {
		throw Error(ErrorCode::BadDomain, "state norm " + std::to_string(norm) + " differs from 1");
	}
}

cx_double PureState::amplitude(std::size_t basis_index) const {
	if (basis_index >= static_cast<std::size_t>(amplitudes_.size())) {
		throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(basis_index));
	}
	return amplitudes_(static_cast<Eigen::Index>(basis_index));
}

cx_double PureState::expectation(const ComplexMatrix& op) const {
	if (op.rows() != amplitudes_.size() || op.cols() != amplitudes_.size()) {
		throw Error(ErrorCode::DimensionMismatch, "operator does not act on this state");
	}
	return amplitudes_.dot(op.eigen() * amplitudes_);
}

PureState PureState::apply(const ComplexMatrix& unitary) const {
	if (unitary.rows() != amplitudes_.size() || unitary.cols() != amplitudes_.size()) {
		throw Error(ErrorCode::DimensionMismatch, "operator does not act on this state");
	}
	ComplexVector out = unitary.eigen() * amplitudes_;
	// Renormalize away rounding drift so chains of unitaries stay within kNormTol.
	out /= out.norm();
	return PureState(qubit_count_, std::move(out));
}

Graph star_graph(int n) {
	if (n < 2) {
		throw Error(ErrorCode::TooFewQubits, "star graph needs at least 2 vertices, got " + std::to_string(n));
	}
	std::set<Graph::Edge> edges;
	for (int k = 2; k <= n; ++k) {
		edges.emplace(1, k);
	}
	return Graph(n, std::move(edges));
}

Graph empty_graph(int n) { return Graph(n, {}); }

PureState graph_state(const Graph& g) {
	const int n = g.vertex_count();
	const auto dim = dimension_for(n);
	const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
	ComplexVector psi = ComplexVector::Constant(static_cast<Eigen::Index>(dim), amp);
	// Qubit q occupies bit (n - q), so qubit 1 is the most significant bit.
	for (auto [i, j] : g.edges()) {
		const std::size_t mask = (std::size_t{1} << (n - i)) | (std::size_t{1} << (n - j));
		for (std::size_t b = 0; b < dim; ++b) {
			if ((b & mask) == mask) {
				psi(static_cast<Eigen::Index>(b)) = -psi(static_cast<Eigen::Index>(b));
			}
		}
	}
	return PureState(n, std::move(psi));
}

PureState ghz_state(int n) {
	if (n < 2) {
		throw Error(ErrorCode::TooFewQubits, "GHZ state needs at least 2 qubits, got " + std::to_string(n));
	}
	const auto dim = dimension_for(n);
	// <b|+>^N = 2^{-N/2}, <b|->^N = (-1)^{|b|} 2^{-N/2}
	const double amp = 1.0 / std::sqrt(2.0 * static_cast<double>(dim));
	ComplexVector psi(static_cast<Eigen::Index>(dim));
	for (std::size_t b = 0; b < dim; ++b) {
		const int parity = std::popcount(b) & 1;
		psi(static_cast<Eigen::Index>(b)) = parity == 0 ? 2.0 * amp : 0.0;
	}
	return PureState(n, std::move(psi));
}

} // namespace graphmag
