#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "parampac/param_space.hpp"
#include "parampac/scenario.hpp"

namespace parampac::cli {

/// Runs the command line (arguments without the program name) and returns the
/// process exit code. JSON and values go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes a CSV grid of `resolution` points per dimension (first parameter
/// varies slowest): header "name1,...,namen,f,fhat". The f column is omitted
/// when no oracle is given. Throws Error(InvalidArgument) for resolution < 2
/// and Error(Io) when the file cannot be written.
void emit_grid(const PacPolynomial& fit, const PointFunction* oracle, const ParamSpace& space,
               std::size_t resolution, const std::string& path);

}  // namespace parampac::cli
