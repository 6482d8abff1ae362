#pragma once

#include <string>

#include "cyclo/numeric.hpp"

namespace cyclo {

/// Parse "a+bi" / "a-bi" / "a" / "bi" (decimal literals, optional
/// exponents). Throws DomainError on malformed input.
Complex parse_complex(const std::string& text);

/// Round-trippable "a+bi" rendering.
std::string format_complex(Complex z);

}  // namespace cyclo
