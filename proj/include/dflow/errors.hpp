#pragma once

#include <stdexcept>
#include <string>

namespace dflow {

// Error categories surfaced by the library.  The CLI maps `parse` to exit
// code 2 and `complexity` to exit code 3; everything else is a plain failure.
enum class errc {
    parse,                  // malformed input text
    out_of_range,           // bounded-context closure violation
    complexity,             // search-space budget exceeded
    unsupported,            // operation undefined for the given context
    not_cubic,              // operation requires a cubic graph
    non_contractible,       // cycle does not bound a disk
    reflection_in_interior, // disk interior carries reflection values
    not_a_reflection_cycle, // cycle edges are not all reflections
    structure,              // structural invariant violated (bad input data)
    not_special,            // coloring fails the special-pattern conditions
    invalid_flow,           // flow input fails verification
    missed_color_clash,     // endpoints miss different colors
    not_simple,             // no simple contractible cycle witness
    not_hamiltonian,        // claimed Hamiltonian cycle is not one
    no_feasible_extension,  // triangle extension found no admissible value
};

struct error : std::runtime_error {
    errc code;
    error(errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

} // namespace dflow
