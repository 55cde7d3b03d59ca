#pragma once

#include <apolar/errors.hpp>
#include <apolar/poly.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apolar {

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Identifiers of an expression in order of first appearance.
std::vector<std::string> collect_identifiers(std::string_view text);

/// Parses and expands
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ['^' nat]
///   atom   := rational | ident | '(' expr ')'
///   rational := int ['/' posint]
/// into a primal Poly. Without `vars` the table lists the identifiers in
/// order of first appearance; with `vars` unknown identifiers are errors.
Poly parse_poly(std::string_view text, const std::optional<std::vector<std::string>>& vars = std::nullopt);

/// Same, over an existing table.
Poly parse_poly(std::string_view text, const VarTable& table);

}  // namespace apolar
