#ifndef MGALE_IO_HPP
#define MGALE_IO_HPP

// JSON encoding of spaces, partitions, processes, filtrations and stopping
// times, and a small CSV writer.
//
// Scalars are written as strings ("p/q" in exact mode, shortest round-trip
// decimal in float mode) and read from either strings or JSON numbers.
// Stopping times use "inf" for infinity.

#include "mgale/measure.hpp"
#include "mgale/process.hpp"
#include "mgale/stopping.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgale {

using Json = nlohmann::json;

/// Error in an input document; line is 1-based, 0 when unknown.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// 1-based line of a byte offset.
inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Best-effort line of the first occurrence of "key" in the document.
inline std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

inline Json parse_json_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), std::string("malformed JSON: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------

template <Scalar S>
Json scalar_to_json(const S& x) {
  return format_scalar(x);
}

template <Scalar S>
S scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
  if (j.is_number_integer()) return S(j.get<long long>());
  if (j.is_number()) {
    if constexpr (is_exact_v<S>) {
      // JSON numbers are decimal text; go through the shortest representation.
      return parse_scalar<S>(scalar_traits<double>::format(j.get<double>()));
    } else {
      return j.get<double>();
    }
  }
  throw std::invalid_argument("expected a number or a numeric string, got " + j.dump());
}

template <Scalar S>
std::vector<S> scalars_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of numbers");
  std::vector<S> out;
  for (const auto& x : j) out.push_back(scalar_from_json<S>(x));
  return out;
}

template <Scalar S>
Json scalars_to_json(const std::vector<S>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(scalar_to_json(x));
  return j;
}

template <Scalar S>
Json to_json(const FiniteMeasureSpace<S>& space) {
  Json w = Json::array();
  for (const auto& x : space.weights()) w.push_back(scalar_to_json(x));
  return Json{{"weights", w}};
}

template <Scalar S>
FiniteMeasureSpace<S> space_from_json(const Json& j) {
  return FiniteMeasureSpace<S>(scalars_from_json<S>(j.at("weights")));
}

inline Json to_json(const Partition& p) { return Json{{"blocks", p.blocks()}}; }

inline Partition partition_from_json(const Json& j, std::size_t atom_count) {
  const Json& blocks = j.is_object() ? j.at("blocks") : j;
  return Partition::from_blocks(atom_count, blocks.get<std::vector<std::vector<Atom>>>());
}

template <Scalar S>
Json to_json(const Process<S>& f) {
  Json values = Json::array();
  for (std::size_t n = 0; n <= f.horizon(); ++n) values.push_back(scalars_to_json(f.at(n).values));
  return Json{{"values", values}};
}

/// {"values": [[f_0 ...], [f_1 ...], ...]} (time-major) or {"paths": [[...], ...]} (one row per atom).
template <Scalar S>
Process<S> process_from_json(const Json& j) {
  if (j.contains("values")) {
    std::vector<RandomVariable<S>> slices;
    for (const auto& row : j.at("values")) slices.emplace_back(scalars_from_json<S>(row));
    return Process<S>(std::move(slices));
  }
  if (j.contains("paths")) {
    std::vector<std::vector<S>> paths;
    for (const auto& row : j.at("paths")) paths.push_back(scalars_from_json<S>(row));
    return Process<S>::from_paths(paths);
  }
  if (j.contains("path")) return Process<S>::from_paths({scalars_from_json<S>(j.at("path"))});
  throw std::invalid_argument("process needs 'values', 'paths' or 'path'");
}

inline Json to_json(const Filtration& f) {
  Json steps = Json::array();
  for (const auto& p : f.steps()) steps.push_back(p.blocks());
  return Json{{"steps", steps}, {"ambient", f.ambient().blocks()}};
}

inline Filtration filtration_from_json(const Json& j, std::size_t atom_count) {
  std::vector<Partition> steps;
  for (const auto& s : j.at("steps")) steps.push_back(partition_from_json(s, atom_count));
  if (j.contains("ambient")) return Filtration(std::move(steps), partition_from_json(j.at("ambient"), atom_count));
  return Filtration(std::move(steps));
}

inline Json to_json(const StoppingTime& tau) {
  Json j = Json::array();
  for (const auto& t : tau.time_of) {
    if (t.is_finite()) j.push_back(t.finite_value());
    else j.push_back("inf");
  }
  return j;
}

inline StoppingTime stopping_time_from_json(const Json& j, std::size_t atom_count) {
  const auto one = [](const Json& x) {
    if (x.is_string() && x.get<std::string>() == "inf") return ExtendedTime::infinity();
    if (x.is_number_unsigned() || (x.is_number_integer() && x.get<long long>() >= 0)) {
      return ExtendedTime(x.get<std::size_t>());
    }
    throw std::invalid_argument("stopping time entries must be naturals or \"inf\", got " + x.dump());
  };
  if (!j.is_array()) return StoppingTime::constant(atom_count, one(j));
  StoppingTime tau;
  for (const auto& x : j) tau.time_of.push_back(one(x));
  if (tau.atom_count() != atom_count) throw std::invalid_argument("stopping time has the wrong number of atoms");
  return tau;
}

// ---------------------------------------------------------------------------

/// Header plus rows of preformatted cells; '.' decimal separator, '\n' line ends.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw std::invalid_argument("csv row width does not match the header");
    rows_.push_back(std::move(row));
  }

  std::size_t row_count() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string str() const {
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += escape(cells[i]);
      }
      out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
  }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << str();
  }

 private:
  static std::string escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char c : cell) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string format_bool(bool b) { return b ? "true" : "false"; }

inline std::string format_double(double x) { return scalar_traits<double>::format(x); }

}  // namespace mgale

#endif  // MGALE_IO_HPP
