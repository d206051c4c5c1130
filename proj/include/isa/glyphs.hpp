#pragma once

// Letter rasters for the letter-shaped source database.
//
// Text format: one stanza per glyph, a name line followed by R raster lines of
// R characters each ('#' set, '.' clear). Blank lines separate stanzas; lines
// starting with "# " outside a raster are comments.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "isa/error.hpp"
#include "isa/glyph_data.hpp"

namespace isa {

struct Glyph {
  std::string name;
  std::vector<std::vector<bool>> mask;  // mask[row][col], row 0 is the top

  std::size_t resolution() const { return mask.size(); }

  std::size_t set_pixels() const {
    std::size_t n = 0;
    for (const auto& row : mask) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
    return n;
  }
};

class GlyphSet {
 public:
  GlyphSet() = default;

  explicit GlyphSet(std::vector<Glyph> glyphs) : glyphs_(std::move(glyphs)) {
    for (std::size_t i = 0; i < glyphs_.size(); ++i) {
      const Glyph& g = glyphs_[i];
      if (g.resolution() == 0 || g.set_pixels() == 0) throw ConfigError("glyph '" + g.name + "' is empty");
      for (const auto& row : g.mask)
        if (row.size() != g.resolution()) throw ConfigError("glyph '" + g.name + "' is not square");
      if (g.resolution() != glyphs_.front().resolution())
        throw ConfigError("glyph '" + g.name + "' has a different resolution");
      if (!index_.emplace(g.name, i).second) throw ConfigError("duplicate glyph '" + g.name + "'");
    }
  }

  std::size_t size() const { return glyphs_.size(); }
  std::size_t resolution() const { return glyphs_.empty() ? 0 : glyphs_.front().resolution(); }
  const std::vector<Glyph>& glyphs() const { return glyphs_; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& g : glyphs_) out.push_back(g.name);
    return out;
  }

  const Glyph& at(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw ConfigError("unknown letter '" + name + "'");
    return glyphs_[it->second];
  }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }

 private:
  std::vector<Glyph> glyphs_;
  std::map<std::string, std::size_t> index_;
};

namespace detail {

inline bool is_raster_line(const std::string& s) {
  return !s.empty() && s.find_first_not_of(".#") == std::string::npos;
}

inline std::string trim_line(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

}  // namespace detail

inline GlyphSet parse_glyphs(std::istream& is) {
  std::vector<Glyph> glyphs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = detail::trim_line(line);
    if (line.empty() || line.rfind("# ", 0) == 0) continue;
    if (detail::is_raster_line(line))
      throw ConfigError("glyph file line " + std::to_string(lineno) + ": raster line without a name");
    Glyph g;
    g.name = line;
    std::size_t resolution = 0;
    do {
      if (!std::getline(is, line)) throw ConfigError("glyph '" + g.name + "': truncated raster");
      ++lineno;
      line = detail::trim_line(line);
      if (!detail::is_raster_line(line))
        throw ConfigError("glyph file line " + std::to_string(lineno) + ": expected raster row");
      if (resolution == 0) resolution = line.size();
      if (line.size() != resolution) throw ConfigError("glyph '" + g.name + "': ragged raster");
      std::vector<bool> row(resolution);
      for (std::size_t c = 0; c < resolution; ++c) row[c] = line[c] == '#';
      g.mask.push_back(std::move(row));
    } while (g.mask.size() < resolution);
    glyphs.push_back(std::move(g));
  }
  return GlyphSet(std::move(glyphs));
}

inline GlyphSet load_glyphs(const std::filesystem::path& p) {
  std::ifstream is(p);
  if (!is) throw ConfigError("cannot open glyph file '" + p.string() + "'");
  return parse_glyphs(is);
}

/// The built-in 16x16 set: A-Z followed by alpha..omega (24 Greek lowercase).
inline const GlyphSet& default_glyphs() {
  static const GlyphSet set = [] {
    std::istringstream is(detail::kGlyphData);
    return parse_glyphs(is);
  }();
  return set;
}

/// Resolves a comma-separated letter list, or "all".
inline std::vector<std::string> resolve_letters(const GlyphSet& set, const std::string& spec) {
  if (spec == "all") return set.names();
  std::vector<std::string> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item = detail::trim_line(item);
    if (item.empty()) continue;
    (void)set.at(item);
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError("empty letter list");
  return out;
}

}  // namespace isa
