// Copyright 2026 The extremalkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EXTREMALKIT_PARSER_HPP_
#define EXTREMALKIT_PARSER_HPP_

#include <string_view>

#include "extremalkit/trigpoly.hpp"

namespace extremalkit {

// Parses an expression over the registry's variables into canonical form.
//
// Grammar (whitespace insignificant):
//   expr     := term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := base ('^' integer)?
//   base     := rational | var | 'sin' '(' var ')' | 'cos' '(' var ')'
//             | '(' expr ')' | '-' base
//   rational := integer ('/' positive-integer)?
//
// sin/cos apply to angle variables only; angle variables cannot appear
// bare. Throws ParseError with the offending position.
TrigPoly parse_expr(std::string_view text, const RegistryPtr& registry);

}  // namespace extremalkit

#endif  // EXTREMALKIT_PARSER_HPP_
