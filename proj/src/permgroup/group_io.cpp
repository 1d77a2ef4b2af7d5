#include "hurwitz/permgroup/group_io.hpp"

#include <fstream>
#include <sstream>

#include "hurwitz/error.hpp"

namespace hurwitz {

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos)
    line = line.substr(0, hash);
  auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  auto last = line.find_last_not_of(" \t\r");
  return std::string(line.substr(first, last - first + 1));
}

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

PermGroup parse_group(std::string_view text, GroupLimits limits) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::size_t degree = 0;
  std::vector<Permutation> gens;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty())
      continue;
    if (degree == 0) {
      std::istringstream ls(line);
      std::string key;
      long long n = 0;
      if (!(ls >> key >> n) || key != "degree" || n <= 0 ||
          n > static_cast<long long>(Permutation::kMaxDegree))
        throw ParseError("expected 'degree <n>'", line_no);
      std::string extra;
      if (ls >> extra)
        throw ParseError("trailing text after degree", line_no);
      degree = static_cast<std::size_t>(n);
      continue;
    }
    try {
      gens.push_back(Permutation::parse(line, degree));
    } catch (const ParseError &e) {
      throw;
    } catch (const Error &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (degree == 0)
    throw ParseError("missing 'degree <n>' line", line_no);
  if (gens.empty())
    throw ParseError("group file lists no generators", line_no);
  return PermGroup(degree, std::move(gens), limits);
}

PermGroup read_group_file(const std::filesystem::path &path, GroupLimits limits) {
  try {
    return parse_group(read_text_file(path), limits);
  } catch (const ParseError &e) {
    throw e.in_file(path.string());
  }
}

std::string format_group(const PermGroup &group, std::string_view comment) {
  std::ostringstream os;
  if (!comment.empty()) {
    std::istringstream in{std::string(comment)};
    std::string l;
    while (std::getline(in, l))
      os << "# " << l << '\n';
  }
  os << "degree " << group.degree() << '\n';
  for (const auto &g : group.generators())
    os << g.to_string() << '\n';
  return os.str();
}

} // namespace hurwitz
