#include "lensclass/types.hpp"

namespace lensclass {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::LevelOrder: return "LevelOrder";
    case ErrorCode::DivisibilityError: return "DivisibilityError";
    case ErrorCode::BadCase: return "BadCase";
    case ErrorCode::PatternError: return "PatternError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace lensclass
