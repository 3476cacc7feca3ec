#pragma once

/// @file instance_io.hpp
/// @brief Instance documents (`.mtfp`) and random instance generation.
///
/// Document grammar (blank lines and lines starting with `#` are ignored):
///
///     name: <text to end of line>
///     individuals: <n_i>
///     departments: <n_j>
///     groups: <n_k>
///     department_of:
///     <n_i department labels, 1-based, on one or more lines>
///     requirements:
///     <n_j lines of n_k non-negative integers>
///     sociometric:
///     <n_i lines of n_i integers in {-1, 0, 1}>
///
/// Integers are separated by whitespace and/or commas. Keys may appear in any
/// order, each exactly once. `save_instance` writes the canonical form: the
/// order above, a single header comment, single spaces between cells and
/// sociometric cells right-aligned to width 2.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mtfp/core.hpp"
#include "mtfp/rng.hpp"

namespace mtfp::io {

inline constexpr const char* kFileExtension = ".mtfp";

/// Malformed document. `line()` is 1-based, or 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Parses and validates. Throws ParseError for syntax or shape problems and
/// mtfp::ValidationError (listing every violation) for invariant failures.
ProblemInstance load_instance(std::istream& source);
ProblemInstance load_instance_file(const std::string& path);

/// Writes the canonical document. Throws std::runtime_error if the sink fails.
void save_instance(const ProblemInstance& instance, std::ostream& sink);
void save_instance_file(const ProblemInstance& instance, const std::string& path);
std::string to_document(const ProblemInstance& instance);

struct GeneratorConfig {
    std::size_t individuals = 10;
    std::size_t departments = 3;
    std::size_t groups = 3;
    double positive_rate = 0.4; ///< P(+1) for each off-diagonal entry
    double negative_rate = 0.1; ///< P(-1) for each off-diagonal entry
    std::uint64_t seed = 1;
    std::string name; ///< empty: a name recording the configuration is generated
};

/// Throws InvalidInput if the configuration cannot produce a valid instance.
void check_config(const GeneratorConfig& config);

/// Random instance: i.i.d. sociometric entries, a requirement matrix whose
/// rows and columns are all non-empty and which sums to `individuals`, and
/// departments assigned in index order by row size.
ProblemInstance generate_instance(const GeneratorConfig& config, Rng& rng);

/// Same, with a generator seeded from `config.seed`.
ProblemInstance generate_instance(const GeneratorConfig& config);

} // namespace mtfp::io
