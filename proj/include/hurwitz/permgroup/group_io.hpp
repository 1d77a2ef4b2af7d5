#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hurwitz/permgroup/perm_group.hpp"

namespace hurwitz {

/// Group files: a line "degree <n>", then one generator per line in cycle
/// notation on points 1..n. '#' starts a comment; blank lines are ignored.
PermGroup parse_group(std::string_view text, GroupLimits limits = {});
PermGroup read_group_file(const std::filesystem::path &path, GroupLimits limits = {});
std::string format_group(const PermGroup &group, std::string_view comment = {});

/// Reads a whole file; throws Error with the path when it cannot be opened.
std::string read_text_file(const std::filesystem::path &path);

/// Line with the comment removed and surrounding whitespace trimmed.
std::string strip_comment(std::string_view line);

} // namespace hurwitz
