#pragma once

#include <stdexcept>

#include "hcspdc/process.hpp"

namespace hcspdc {

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string &msg, int line, int column)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line(line),
        column(column) {}
};

TermPtr parse_process(const std::string &text);
ExprPtr parse_expression(const std::string &text);

}  // namespace hcspdc
