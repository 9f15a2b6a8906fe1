// JSON and CSV serialization for every pipeline artifact. All numeric values
// are exact strings (decimal integers, "p/q" rationals); field order is fixed
// through ordered_json and files end with a single newline, so identical data
// serializes to identical bytes.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "holefree/bitstring.hpp"
#include "holefree/embed.hpp"
#include "holefree/geom.hpp"
#include "holefree/goodset.hpp"
#include "holefree/netgen.hpp"
#include "holefree/numeric.hpp"

namespace holefree::io {

using ojson = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// ----------------------------------------------------------------------------
// field access with error messages that name the offending field

namespace detail {

inline const ojson& field(const ojson& j, const std::string& name, const char* where) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError(std::string(where) + ": missing field '" + name + "'");
  return j.at(name);
}

inline std::uint64_t get_uint(const ojson& j, const std::string& name, const char* where) {
  const ojson& f = field(j, name, where);
  if (!f.is_number_unsigned())
    throw ParseError(std::string(where) + ": field '" + name +
                     "' must be a non-negative integer");
  return f.get<std::uint64_t>();
}

inline std::string get_str(const ojson& j, const std::string& name, const char* where) {
  const ojson& f = field(j, name, where);
  if (!f.is_string())
    throw ParseError(std::string(where) + ": field '" + name + "' must be a string");
  return f.get<std::string>();
}

inline const ojson& get_arr(const ojson& j, const std::string& name, const char* where) {
  const ojson& f = field(j, name, where);
  if (!f.is_array())
    throw ParseError(std::string(where) + ": field '" + name + "' must be an array");
  return f;
}

}  // namespace detail

inline ojson load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  ojson j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("file '" + path + "' is not valid JSON: " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const ojson& j) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << j.dump(2) << '\n';
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << text;
}

// ----------------------------------------------------------------------------
// net files

struct NetFile {
  unsigned s = 0;
  unsigned m = 0;
  unsigned digits = 0;
  std::vector<netgen::NetPoint> points;
};

inline ojson net_to_json(const std::vector<netgen::NetPoint>& pts, unsigned s, unsigned m) {
  unsigned digits = 0;
  for (const auto& p : pts) {
    if (p.dim() != s) throw std::invalid_argument("net_to_json: point dimension mismatch");
    for (unsigned axis = 0; axis < s; ++axis) {
      unsigned dc = static_cast<unsigned>(p.digit_count(axis));
      if (digits == 0) digits = dc;
      if (dc != digits)
        throw std::invalid_argument("net_to_json: ragged digit counts");
    }
  }
  ojson j;
  j["s"] = s;
  j["m"] = m;
  j["digits_per_coord"] = digits;
  ojson parr = ojson::array();
  for (const auto& p : pts) {
    ojson row = ojson::array();
    for (unsigned axis = 0; axis < s; ++axis) row.push_back(p.axis_word(axis).str());
    parr.push_back(std::move(row));
  }
  j["points"] = std::move(parr);
  return j;
}

inline NetFile net_from_json(const ojson& j) {
  const char* where = "net file";
  NetFile f;
  f.s = static_cast<unsigned>(detail::get_uint(j, "s", where));
  f.m = static_cast<unsigned>(detail::get_uint(j, "m", where));
  f.digits = static_cast<unsigned>(detail::get_uint(j, "digits_per_coord", where));
  if (f.s == 0) throw ParseError("net file: field 's' must be positive");
  const ojson& parr = detail::get_arr(j, "points", where);
  for (const auto& row : parr) {
    if (!row.is_array() || row.size() != f.s)
      throw ParseError("net file: field 'points' rows must have s entries");
    std::vector<std::vector<std::uint8_t>> digits;
    digits.reserve(f.s);
    for (const auto& cell : row) {
      if (!cell.is_string())
        throw ParseError("net file: field 'points' entries must be bit strings");
      BitString w;
      try {
        w = BitString::from_string(cell.get<std::string>());
      } catch (const std::exception& e) {
        throw ParseError(std::string("net file: field 'points': ") + e.what());
      }
      if (w.size() != f.digits)
        throw ParseError("net file: field 'points' entry length differs from digits_per_coord");
      std::vector<std::uint8_t> bits;
      bits.reserve(w.size());
      for (std::size_t i = 0; i < w.size(); ++i)
        bits.push_back(static_cast<std::uint8_t>(w.bit(i)));
      digits.push_back(std::move(bits));
    }
    f.points.emplace_back(std::move(digits));
  }
  return f;
}

// ----------------------------------------------------------------------------
// good-set files

inline ojson good_to_json(const goodset::BinaryAlmostNet& Y) {
  ojson j;
  j["d"] = Y.d;
  j["m"] = Y.m;
  j["T"] = Y.T;
  j["eps"] = rat_str(Y.eps);
  j["n"] = Y.n;
  ojson keys = ojson::array();
  for (const auto& k : Y.keys) {
    ojson row = ojson::array();
    for (const auto& w : k.comp) row.push_back(w.str());
    keys.push_back(std::move(row));
  }
  j["keys"] = std::move(keys);
  return j;
}

inline goodset::BinaryAlmostNet good_from_json(const ojson& j) {
  const char* where = "good-set file";
  goodset::BinaryAlmostNet Y;
  Y.d = static_cast<unsigned>(detail::get_uint(j, "d", where));
  Y.m = static_cast<unsigned>(detail::get_uint(j, "m", where));
  Y.T = detail::get_uint(j, "T", where);
  Y.n = static_cast<unsigned>(detail::get_uint(j, "n", where));
  try {
    Y.eps = parse_rat(detail::get_str(j, "eps", where));
  } catch (const std::exception& e) {
    throw ParseError(std::string("good-set file: field 'eps': ") + e.what());
  }
  if (Y.d == 0) throw ParseError("good-set file: field 'd' must be positive");
  const ojson& keys = detail::get_arr(j, "keys", where);
  for (const auto& row : keys) {
    if (!row.is_array() || row.size() != Y.d)
      throw ParseError("good-set file: field 'keys' rows must have d entries");
    PointKey k;
    for (const auto& cell : row) {
      if (!cell.is_string())
        throw ParseError("good-set file: field 'keys' entries must be bit strings");
      BitString w;
      try {
        w = BitString::from_string(cell.get<std::string>());
      } catch (const std::exception& e) {
        throw ParseError(std::string("good-set file: field 'keys': ") + e.what());
      }
      if (w.size() != Y.m)
        throw ParseError("good-set file: field 'keys' entry length differs from m");
      k.comp.push_back(std::move(w));
    }
    Y.keys.push_back(std::move(k));
  }
  return Y;
}

// ----------------------------------------------------------------------------
// integer point files

struct PointsFile {
  unsigned d = 0;
  geom::PointSet<Int> coords;
  Int base = 0;   // schedule base B
  unsigned m = 0; // schedule word length
  std::vector<PointKey> source_keys;  // optional, empty when absent
};

inline ojson points_to_json(const geom::PointSet<Int>& pts, const Int& base, unsigned m,
                            const std::vector<PointKey>& source_keys = {}) {
  ojson j;
  const unsigned d = pts.empty() ? 0 : static_cast<unsigned>(pts[0].size());
  j["d"] = d;
  ojson coords = ojson::array();
  for (const auto& p : pts) {
    if (p.size() != d) throw std::invalid_argument("points_to_json: ragged dimensions");
    ojson row = ojson::array();
    for (const auto& x : p) row.push_back(int_str(x));
    coords.push_back(std::move(row));
  }
  j["coords"] = std::move(coords);
  j["schedule"] = ojson{{"B", int_str(base)}, {"m", m}};
  if (!source_keys.empty()) {
    ojson keys = ojson::array();
    for (const auto& k : source_keys) {
      ojson row = ojson::array();
      for (const auto& w : k.comp) row.push_back(w.str());
      keys.push_back(std::move(row));
    }
    j["source_keys"] = std::move(keys);
  }
  return j;
}

inline PointsFile points_from_json(const ojson& j) {
  const char* where = "point file";
  PointsFile f;
  f.d = static_cast<unsigned>(detail::get_uint(j, "d", where));
  const ojson& coords = detail::get_arr(j, "coords", where);
  for (const auto& row : coords) {
    if (!row.is_array() || row.size() != f.d)
      throw ParseError("point file: field 'coords' rows must have d entries");
    geom::Point<Int> p;
    p.reserve(f.d);
    for (const auto& cell : row) {
      if (!cell.is_string())
        throw ParseError("point file: field 'coords' entries must be decimal strings");
      try {
        p.push_back(parse_int(cell.get<std::string>()));
      } catch (const std::exception& e) {
        throw ParseError(std::string("point file: field 'coords': ") + e.what());
      }
    }
    f.coords.push_back(std::move(p));
  }
  const ojson& sched = detail::field(j, "schedule", where);
  try {
    f.base = parse_int(detail::get_str(sched, "B", "point file schedule"));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("point file: field 'schedule.B': ") + e.what());
  }
  f.m = static_cast<unsigned>(detail::get_uint(sched, "m", "point file schedule"));
  if (j.contains("source_keys")) {
    const ojson& keys = detail::get_arr(j, "source_keys", where);
    for (const auto& row : keys) {
      if (!row.is_array() || row.size() != f.d)
        throw ParseError("point file: field 'source_keys' rows must have d entries");
      PointKey k;
      for (const auto& cell : row) {
        if (!cell.is_string())
          throw ParseError("point file: field 'source_keys' entries must be bit strings");
        try {
          k.comp.push_back(BitString::from_string(cell.get<std::string>()));
        } catch (const std::exception& e) {
          throw ParseError(std::string("point file: field 'source_keys': ") + e.what());
        }
      }
      f.source_keys.push_back(std::move(k));
    }
  }
  return f;
}

// ----------------------------------------------------------------------------
// rational point files (perturbation output)

inline ojson rational_points_to_json(const geom::PointSet<Rat>& pts,
                                     const geom::PointSet<Rat>& offsets,
                                     std::uint64_t seed, const Int& gap,
                                     const Rat& bound, unsigned attempts) {
  ojson j;
  const unsigned d = pts.empty() ? 0 : static_cast<unsigned>(pts[0].size());
  j["d"] = d;
  auto emit = [&](const geom::PointSet<Rat>& rows) {
    ojson arr = ojson::array();
    for (const auto& p : rows) {
      ojson row = ojson::array();
      for (const auto& x : p) row.push_back(rat_str(x));
      arr.push_back(std::move(row));
    }
    return arr;
  };
  j["coords"] = emit(pts);
  j["offsets"] = emit(offsets);
  j["seed"] = seed;
  j["gap"] = int_str(gap);
  j["bound"] = rat_str(bound);
  j["attempts"] = attempts;
  return j;
}

struct RationalPointsFile {
  unsigned d = 0;
  geom::PointSet<Rat> coords;
  geom::PointSet<Rat> offsets;
  std::uint64_t seed = 0;
  Int gap = 0;
  Rat bound = 0;
  unsigned attempts = 0;
};

inline RationalPointsFile rational_points_from_json(const ojson& j) {
  const char* where = "rational point file";
  RationalPointsFile f;
  f.d = static_cast<unsigned>(detail::get_uint(j, "d", where));
  auto parse_rows = [&](const char* name) {
    geom::PointSet<Rat> rows;
    const ojson& arr = detail::get_arr(j, name, where);
    for (const auto& row : arr) {
      if (!row.is_array() || row.size() != f.d)
        throw ParseError(std::string("rational point file: field '") + name +
                         "' rows must have d entries");
      geom::Point<Rat> p;
      for (const auto& cell : row) {
        if (!cell.is_string())
          throw ParseError(std::string("rational point file: field '") + name +
                           "' entries must be 'p/q' strings");
        try {
          p.push_back(parse_rat(cell.get<std::string>()));
        } catch (const std::exception& e) {
          throw ParseError(std::string("rational point file: field '") + name + "': " +
                           e.what());
        }
      }
      rows.push_back(std::move(p));
    }
    return rows;
  };
  f.coords = parse_rows("coords");
  f.offsets = parse_rows("offsets");
  f.seed = detail::get_uint(j, "seed", where);
  try {
    f.gap = parse_int(detail::get_str(j, "gap", where));
    f.bound = parse_rat(detail::get_str(j, "bound", where));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("rational point file: ") + e.what());
  }
  f.attempts = static_cast<unsigned>(detail::get_uint(j, "attempts", where));
  return f;
}

// ----------------------------------------------------------------------------
// hole search reports

inline ojson hole_report_to_json(const std::string& mode, std::size_t ell,
                                 const std::string& result,
                                 const std::vector<std::size_t>& witness, bool caps_hit,
                                 std::uint64_t predicate_calls) {
  ojson j;
  j["mode"] = mode;
  j["ell"] = ell;
  j["result"] = result;
  j["witness"] = witness;
  j["caps_hit"] = caps_hit;
  j["predicate_calls"] = predicate_calls;
  return j;
}

// ----------------------------------------------------------------------------
// CSV export

inline std::string points_csv(const geom::PointSet<Int>& pts) {
  std::ostringstream out;
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ',';
      out << int_str(p[i]);
    }
    out << '\n';
  }
  return out.str();
}

inline std::string points_csv(const geom::PointSet<Rat>& pts) {
  std::ostringstream out;
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ',';
      out << rat_str(p[i]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace holefree::io
