#pragma once

#include "decompeval/ast.hpp"
#include "decompeval/errors.hpp"

namespace decompeval {

/// Parses C or C-like decompiled source into a TranslationUnit.
///
/// The parser is an error-tolerant recursive descent over a C subset: it
/// never type-checks, does not run a preprocessor (directives are skipped),
/// and recovers from anything it cannot parse by retaining the offending
/// statement as an Other node. Throws ParseFatal only when neither a function
/// definition nor any plausible top-level declaration can be recovered.
TranslationUnit parse_c_source(const SourceFile& file);

/// Function definitions with bodies, in source order. Prototypes never
/// appear; this is the full set parse_c_source recovered.
const std::vector<FunctionUnit>& extract_functions(const TranslationUnit& unit);

/// Projects the detailed tree onto its kind-only form, erasing identifiers,
/// literal values, and type names. Child order is preserved.
NormTree normalize(const AstNode& node);

}  // namespace decompeval
