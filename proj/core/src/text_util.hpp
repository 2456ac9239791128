#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace pervlen::detail {

// Drops the leading run of '#' lines; skipped_lines receives their count so
// parse errors can report line numbers of the original text.
inline std::string strip_comment_lines(std::string_view text, std::size_t& skipped_lines) {
  std::string out;
  skipped_lines = 0;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    if (header && !line.empty() && line.front() == '#') {
      ++skipped_lines;
    } else {
      header = false;
      out.append(line);
      out.push_back('\n');
    }
    pos = end + 1;
  }
  return out;
}

}  // namespace pervlen::detail
