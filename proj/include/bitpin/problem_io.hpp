#pragma once

#include "bitpin/sensing.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace bitpin {

/// Shortest decimal that round-trips to the same double ("inf", "-inf", "nan"
/// for non-finite values).
std::string format_double(double v);

/// Parses a decimal produced by format_double (also accepts "inf"/"-inf").
double parse_double(std::string_view text);

/// Text dump of a generated problem:
///
///   n m K snr flip_ratio seed
///   x_1 ... x_n                  (ground truth)
///   u_11 ... u_n1                (m lines, one measurement vector each)
///   ...
///   y_1 ... y_m
void write_problem(std::ostream& out, const GeneratedProblem& problem);
void write_problem(const std::filesystem::path& path, const GeneratedProblem& problem);

GeneratedProblem read_problem(std::istream& in);
GeneratedProblem read_problem(const std::filesystem::path& path);

/// One value per line.
void write_vector(const std::filesystem::path& path, const Vector& x);
Vector read_vector(const std::filesystem::path& path);

}  // namespace bitpin
