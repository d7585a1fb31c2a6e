#include "ccm/errors.hpp"

namespace ccm {

ParseError::ParseError(const std::string& what, long row, long column)
    : Error(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
      row_(row),
      column_(column) {}

}  // namespace ccm
