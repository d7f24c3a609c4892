#pragma once

#include <stdexcept>
#include <string>

namespace condgate {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NonSquare : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ZeroMatrix : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct SyntaxError : Error { using Error::Error; };
struct DuplicateName : Error { using Error::Error; };
struct RangeMismatch : Error { using Error::Error; };
struct NotQubit : Error { using Error::Error; };
struct NotMarkable : Error { using Error::Error; };
struct NotJointlyDiscriminable : Error { using Error::Error; };
struct InvalidWitness : Error { using Error::Error; };
struct MarkingInvalid : Error { using Error::Error; };
struct FixedVectorInvalid : Error { using Error::Error; };
struct NotControllable : Error { using Error::Error; };
struct StructureMismatch : Error { using Error::Error; };
struct Disturbing : Error { using Error::Error; };
struct NotMarkingShape : Error { using Error::Error; };
// A synthesized circuit failed its own verification; indicates a bug, not
// bad input.
struct SelfCheckFailed : Error { using Error::Error; };

}  // namespace condgate
