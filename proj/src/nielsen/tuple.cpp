#include "hurwitz/nielsen/tuple.hpp"

#include <mutex>
#include <sstream>

#include "hurwitz/error.hpp"
#include "hurwitz/permgroup/group_io.hpp"

namespace hurwitz {

Permutation tuple_product(const std::vector<Permutation> &entries) {
  if (entries.empty())
    throw InvalidArgument("empty tuple");
  return product(entries, entries.front().degree());
}

bool is_product_one(const std::vector<Permutation> &entries) {
  return tuple_product(entries).is_identity();
}

GeneratingTuple::GeneratingTuple(PermGroup group, std::vector<Permutation> entries, bool)
    : group_(std::move(group)), entries_(std::move(entries)) {}

GeneratingTuple GeneratingTuple::unchecked(PermGroup group, std::vector<Permutation> entries) {
  return GeneratingTuple(std::move(group), std::move(entries), true);
}

GeneratingTuple::GeneratingTuple(PermGroup group, std::vector<Permutation> entries)
    : group_(std::move(group)), entries_(std::move(entries)) {
  if (entries_.size() < 2)
    throw InvalidArgument("a tuple needs at least two entries");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].degree() != group_.degree())
      throw InvalidArgument("tuple entry " + std::to_string(i + 1) + " has the wrong degree");
    if (entries_[i].is_identity())
      throw InvalidArgument("tuple entry " + std::to_string(i + 1) + " is the identity");
  }
  if (!is_product_one(entries_))
    throw InvalidArgument("tuple entries do not have product one");
  if (!generates(entries_, group_))
    throw InvalidArgument("tuple entries do not generate the group");
}

std::vector<CycleType> GeneratingTuple::cycle_types() const {
  std::vector<CycleType> out;
  for (const auto &e : entries_)
    out.push_back(CycleType::of(e));
  return out;
}

std::string GeneratingTuple::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out += (i ? " " : "") + entries_[i].to_string();
  return out;
}

int genus_from_cycle_types(std::size_t degree, const std::vector<CycleType> &types) {
  long long sum = 0;
  for (const auto &t : types) {
    if (t.degree() != degree)
      throw InvalidArgument("cycle type " + t.to_string() + " does not have degree " +
                            std::to_string(degree));
    sum += static_cast<long long>(t.index());
  }
  long long twice = sum - 2 * static_cast<long long>(degree) + 2;
  if (twice % 2 != 0)
    throw InvalidArgument("index sum " + std::to_string(sum) + " has the wrong parity");
  if (twice < 0)
    throw InvalidArgument("index sum " + std::to_string(sum) + " gives negative genus");
  return static_cast<int>(twice / 2);
}

int tuple_genus(const GeneratingTuple &t) {
  if (!t.group().is_transitive())
    throw InvalidArgument("genus requires a transitive group");
  return genus_from_cycle_types(t.degree(), t.cycle_types());
}

struct RamificationType::Cache {
  std::once_flag once;
  std::vector<ConjugacyClass> classes;
};

RamificationType::RamificationType(PermGroup group, std::vector<ClassDescriptor> classes)
    : group_(std::move(group)), descriptors_(std::move(classes)),
      cache_(std::make_shared<Cache>()) {
  if (descriptors_.empty())
    throw InvalidArgument("ramification type lists no classes");
  for (const auto &d : descriptors_)
    if (d.cycle_type.degree() != group_.degree())
      throw InvalidArgument("class " + d.to_string() + " does not have degree " +
                            std::to_string(group_.degree()));
}

const std::vector<ConjugacyClass> &RamificationType::classes() const {
  std::call_once(cache_->once, [&] {
    std::vector<CycleType> types;
    for (const auto &d : descriptors_)
      if (std::find(types.begin(), types.end(), d.cycle_type) == types.end())
        types.push_back(d.cycle_type);
    auto all = classes_with_cycle_types(group_, types);
    for (const auto &d : descriptors_)
      cache_->classes.push_back(select_class(all, d));
  });
  return cache_->classes;
}

std::vector<CycleType> RamificationType::cycle_types() const {
  std::vector<CycleType> out;
  for (const auto &d : descriptors_)
    out.push_back(d.cycle_type);
  return out;
}

ClassDescriptor parse_class_descriptor(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  if (!(in >> tok))
    throw InvalidArgument("empty class descriptor");
  ClassDescriptor d{CycleType::parse(tok), {}, {}};
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("expected key=value in class descriptor, got '" + tok + "'");
    std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidArgument("class descriptor value '" + value + "' is not a positive integer");
    if (key == "size")
      d.class_size = mpz_class(value, 10);
    else if (key == "order")
      d.element_order = std::stoull(value);
    else
      throw InvalidArgument("unknown class descriptor key '" + key + "'");
  }
  return d;
}

RamificationType parse_ramification_type(std::string_view text,
                                         const std::filesystem::path &base_dir,
                                         GroupLimits limits) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<PermGroup> group;
  std::vector<ClassDescriptor> classes;
  std::vector<std::string> words;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (line.empty())
      continue;
    auto sp = line.find_first_of(" \t");
    std::string key = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : strip_comment(line.substr(sp));
    try {
      if (key == "group") {
        if (group)
          throw ParseError("duplicate group line", line_no);
        if (rest.empty())
          throw ParseError("group line needs a path", line_no);
        std::filesystem::path p(rest);
        try {
          group = read_group_file(p.is_absolute() ? p : base_dir / p, limits);
        } catch (const Error &e) {
          throw ParseError(e.what(), line_no);
        }
      } else if (key == "class") {
        classes.push_back(parse_class_descriptor(rest));
      } else if (key == "braid_word") {
        words.push_back(rest);
      } else {
        throw ParseError("unknown keyword '" + key + "'", line_no);
      }
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!group)
    throw ParseError("type file has no group line", line_no);
  if (classes.size() < 2)
    throw ParseError("type file needs at least two class lines", line_no);
  RamificationType type(std::move(*group), std::move(classes));
  type.set_braid_words(std::move(words));
  return type;
}

RamificationType read_ramification_type_file(const std::filesystem::path &path,
                                              GroupLimits limits) {
  try {
    return parse_ramification_type(read_text_file(path), path.parent_path(), limits);
  } catch (const ParseError &e) {
    throw e.in_file(path.string());
  }
}

} // namespace hurwitz
