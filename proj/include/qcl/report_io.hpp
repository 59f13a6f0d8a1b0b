#pragma once
// Shared formatting helpers for the file reports. All doubles are written
// with round-trip precision so repeated runs are byte-identical.

#include <string>

namespace qcl {

std::string fmt_g17(double x);

}  // namespace qcl
