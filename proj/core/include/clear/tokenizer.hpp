#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace clear {

/// Splits text into lowercased alphanumeric runs. Both retrievers share
/// this tokenizer so they see identical token streams. Total function:
/// never throws, empty input yields an empty sequence.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace clear
