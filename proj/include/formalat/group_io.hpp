#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "formalat/error.hpp"
#include "formalat/perm_group.hpp"

namespace formalat {

// Group file format:
//
//   # comment
//   degree 4
//   gen (1 2)
//   gen (1 2 3 4)
//
// Blank lines are ignored; `#` starts a comment anywhere on a line.

inline PermGroup parse_group(std::string_view text) {
  std::size_t degree = 0;
  std::size_t degree_line = 0;
  std::vector<std::pair<std::string, std::size_t>> gen_lines;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    ++line_no;
    start = end + 1;

    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string keyword;
    if (!(in >> keyword)) continue;
    if (keyword == "degree") {
      if (degree_line != 0) throw ParseError("duplicate degree line", line_no);
      long long value = 0;
      std::string rest;
      if (!(in >> value) || value <= 0) throw ParseError("degree must be a positive integer", line_no);
      if (in >> rest) throw ParseError("trailing text after degree", line_no);
      degree = static_cast<std::size_t>(value);
      degree_line = line_no;
    } else if (keyword == "gen") {
      std::string rest;
      std::getline(in, rest);
      gen_lines.emplace_back(rest, line_no);
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", line_no);
    }
    if (end == text.size()) break;
  }
  if (degree_line == 0) throw ParseError("missing 'degree N' line");

  std::vector<Perm> gens;
  for (const auto& [body, line] : gen_lines) {
    if (line < degree_line) throw ParseError("'gen' before 'degree'", line);
    try {
      gens.push_back(Perm::from_cycles(degree, body));
    } catch (const Error& e) {
      throw ParseError(e.what(), line);
    }
  }
  return PermGroup(degree, std::move(gens));
}

inline PermGroup load_group_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open group file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group(buf.str());
}

inline std::string format_group(const PermGroup& group, std::string_view comment = {}) {
  std::string out;
  if (!comment.empty()) {
    out += "# ";
    out += comment;
    out += '\n';
  }
  out += "degree " + std::to_string(group.degree()) + "\n";
  for (const Perm& g : group.generators()) out += "gen " + g.to_cycles() + "\n";
  return out;
}

}  // namespace formalat
