#pragma once

// JSON trace files.
//
//   {
//     "format": "prenex-trace-v1",
//     "signature": {"predicates": {"P": 1}, "constants": ["c"]},
//     "start": "exists x. P(x) & Q",
//     "steps": [{"path": [0], "rule": "R8-exists", "target": "_f0"},
//               {"path": [], "rule": "R4-exists"}],
//     "end": "exists _f0. P(_f0) & Q"
//   }
//
// Formulas use the text syntax. Identifiers that are neither predicates nor
// constants of the signature are variables.

#include <string>
#include <string_view>

#include "prenex/formula.hpp"
#include "prenex/rewrite.hpp"

namespace prenex {

inline constexpr std::string_view kTraceFormat = "prenex-trace-v1";

/// The signature written is that of `t.start`, merged with `extra`.
std::string write_trace(const Trace& t, const Signature& extra = {});

/// Re-applies every recorded step to rebuild the full trace. Throws
/// TraceInvalid(i) when step i cannot be applied, and Error (or ParseError)
/// when the document itself is malformed. The recorded end formula is kept
/// as is, so replay() reports a wrong end.
Trace read_trace(std::string_view text);

}  // namespace prenex
