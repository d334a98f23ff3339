#pragma once

#include "graphmag/tensor.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <utility>

namespace graphmag {

// Undirected simple graph on vertices 1..V. Edges are stored as (min, max).
class Graph {
public:
	using Edge = std::pair<int, int>;

	Graph(int vertex_count, std::set<Edge> edges);

	int vertex_count() const { return vertex_count_; }
	const std::set<Edge>& edges() const { return edges_; }

	// "vertices=V" header followed by one "i j" line per edge; '#' starts a comment.
	static Graph parse(std::istream& in);
	static Graph load(const std::string& path);
	void write(std::ostream& out) const;

	friend bool operator==(const Graph&, const Graph&) = default;

private:
	int vertex_count_;
	std::set<Edge> edges_;
};

class PureState {
public:
	static constexpr double kNormTol = 1e-12;

	PureState(int qubit_count, ComplexVector amplitudes);

	int qubit_count() const { return qubit_count_; }
	const ComplexVector& amplitudes() const { return amplitudes_; }
	cx_double amplitude(std::size_t basis_index) const;

	// <this|op|this>
	cx_double expectation(const ComplexMatrix& op) const;
	PureState apply(const ComplexMatrix& unitary) const;

private:
	int qubit_count_;
	ComplexVector amplitudes_;
};

Graph star_graph(int n);
Graph empty_graph(int n);

// prod_{(i,j) in E} CZ_ij |+>^{(x)V}
PureState graph_state(const Graph& g);

// (|+>^{(x)N} + |->^{(x)N}) / sqrt(2)
PureState ghz_state(int n);

} // namespace graphmag
