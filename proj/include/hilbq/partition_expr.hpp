#pragma once

#include <string>

#include "hilbq/fock.hpp"

namespace hilbq {

struct ParseError : std::invalid_argument {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::invalid_argument(msg + " at position " + std::to_string(pos)),
          position(pos) {}
};

// Grammar for naming classes of H*(S^[n]) on the command line:
//   expr     := "cup" "(" divisor "," expr ")" | product | macro
//   product  := pair { pair }           e.g. "(1,1)(1,p)"
//   pair     := "(" part "," class ")"  part >= 1, class a basis/distinguished name
//   divisor  := "D" "(" class ")" | "delta"
//   macro    := "unit" | "pointclass" | "W" | "delta" | divisor
// "W" is the n = 2 fiber cycle q1(sigma)q1(1) + q1(a)q1(b); "delta" is the
// class of c_1(O^[n]); "D(x)" the divisor class; products are weighted
// partitions and divide by the product of their parts.
FockVector parse_partition_expr(const SurfaceModel& s, int n, const std::string& text);

}  // namespace hilbq
