#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphmag {

enum class ErrorCode {
	NotHermitian,
	IndexOutOfRange,
	DimensionMismatch,
	TooFewQubits,
	TooLarge,
	InvalidGraph,
	BadAxis,
	MissingTauC,
	BadProbability,
	SingularInformation,
	DegeneratePosterior,
	BadDomain,
	EmptyGrid,
	ConfigError,
	IoError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
	Error(ErrorCode code, const std::string& what)
		: std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

	ErrorCode code() const noexcept { return code_; }

private:
	ErrorCode code_;
};

// Raised when an information matrix cannot be inverted; carries its numerical rank.
class SingularInformationError : public Error {
public:
	SingularInformationError(int rank, const std::string& what)
		: Error(ErrorCode::SingularInformation, what + " (rank " + std::to_string(rank) + ")"), rank_(rank) {}

	int rank() const noexcept { return rank_; }

private:
	int rank_;
};

} // namespace graphmag
