#include "segopt/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "segopt/error.hpp"
#include "segopt/json_writer.hpp"

namespace segopt {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const fs::path& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Shape parse_shape(const json& doc, const fs::path& path) {
  if (!doc.contains("shape") || !doc["shape"].is_array() || doc["shape"].empty()) {
    throw ParseError(path.string() + ": missing or empty \"shape\"");
  }
  Shape shape;
  for (const json& e : doc["shape"]) {
    if (!e.is_number_unsigned() || e.get<std::uint64_t>() == 0) {
      throw ParseError(path.string() + ": shape extents must be positive integers");
    }
    shape.push_back(e.get<std::size_t>());
  }
  return shape;
}

std::string parse_group(const json& doc) {
  if (doc.contains("group") && doc["group"].is_string()) return doc["group"].get<std::string>();
  return {};
}

void check_header(const json& doc, const fs::path& path) {
  if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string()) {
    throw ParseError(path.string() + ": missing \"format\"");
  }
  if (!doc.contains("version") || doc["version"] != kFormatVersion) {
    throw ParseError(path.string() + ": unsupported version");
  }
}

std::vector<double> read_raw_payload(const fs::path& data, std::size_t cells) {
  std::ifstream in(data, std::ios::binary);
  if (!in) throw ParseError("cannot open raw data " + data.string());
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::uint64_t>(in.tellg());
  if (bytes != static_cast<std::uint64_t>(cells) * 8U) {
    throw ParseError(data.string() + ": expected " + std::to_string(cells * 8) + " bytes, found " +
                     std::to_string(bytes));
  }
  in.seekg(0);
  std::vector<double> values(cells);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw ParseError("short read from " + data.string());
  if constexpr (std::endian::native == std::endian::big) {
    for (double& v : values) {
      std::uint64_t u;
      std::memcpy(&u, &v, 8);
      u = __builtin_bswap64(u);
      std::memcpy(&v, &u, 8);
    }
  }
  return values;
}

template <class Body>
auto rethrow_as_parse_error(const fs::path& path, Body&& body) {
  try {
    return body();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

FieldFile read_field_file(const fs::path& path) {
  const json doc = parse_json(path);
  check_header(doc, path);
  const std::string format = doc["format"].get<std::string>();
  return rethrow_as_parse_error(path, [&]() -> FieldFile {
    const Shape shape = parse_shape(doc, path);
    if (format == kRawFormat) {
      if (!doc.contains("data") || !doc["data"].is_string()) {
        throw ParseError(path.string() + ": raw sidecar needs \"data\"");
      }
      fs::path data = doc["data"].get<std::string>();
      if (data.is_relative()) data = path.parent_path() / data;
      auto values = read_raw_payload(data, cell_count(shape));
      return {MarginalField(shape, std::move(values)), parse_group(doc)};
    }
    if (format != kMarginalFormat && format != kMaskFormat) {
      throw ParseError(path.string() + ": unknown format \"" + format + "\"");
    }
    if (!doc.contains("values") || !doc["values"].is_array()) {
      throw ParseError(path.string() + ": missing \"values\"");
    }
    const json& arr = doc["values"];
    std::vector<double> values;
    values.reserve(arr.size());
    for (const json& e : arr) {
      if (format == kMaskFormat) {
        if (!e.is_number_integer() || (e.get<std::int64_t>() != 0 && e.get<std::int64_t>() != 1)) {
          throw ParseError(path.string() + ": mask values must be the integers 0 or 1");
        }
      } else if (!e.is_number()) {
        throw ParseError(path.string() + ": values must be numbers");
      }
      values.push_back(e.get<double>());
    }
    return {MarginalField(shape, std::move(values)), parse_group(doc)};
  });
}

Segmentation read_mask(const fs::path& path) {
  const FieldFile f = read_field_file(path);
  std::vector<std::uint8_t> bits(f.field.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double v = f.field[i];
    if (v != 0.0 && v != 1.0) throw ParseError(path.string() + ": mask values must be 0 or 1");
    bits[i] = v == 1.0 ? 1 : 0;
  }
  return Segmentation(f.field.shape(), std::move(bits));
}

namespace {

void write_header(JsonWriter& w, const char* format, const Shape& shape, const std::string& group) {
  w.key("format").value(format);
  w.key("version").value(std::int64_t{kFormatVersion});
  if (!group.empty()) w.key("group").value(group);
  w.key("shape").begin_array();
  for (std::size_t e : shape) w.value(static_cast<std::int64_t>(e));
  w.end_array();
}

}  // namespace

std::string marginal_json(const MarginalField& field, const std::string& group,
                          std::optional<double> parameter) {
  JsonWriter w;
  w.begin_object();
  write_header(w, kMarginalFormat, field.shape(), group);
  if (parameter) w.key("parameter").value(*parameter);
  w.key("values").begin_array();
  for (double v : field.values()) w.value(v);
  w.end_array().end_object();
  return w.str() + "\n";
}

std::string mask_json(const Segmentation& mask, const std::string& group) {
  JsonWriter w;
  w.begin_object();
  write_header(w, kMaskFormat, mask.shape(), group);
  w.key("values").begin_array();
  for (std::uint8_t b : mask.bits()) w.value(std::int64_t{b});
  w.end_array().end_object();
  return w.str() + "\n";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

void write_marginal(const fs::path& path, const MarginalField& field, const std::string& group) {
  write_text(path, marginal_json(field, group));
}

void write_mask(const fs::path& path, const Segmentation& mask, const std::string& group) {
  write_text(path, mask_json(mask, group));
}

void write_raw(const fs::path& sidecar, const fs::path& data, const MarginalField& field) {
  {
    std::ofstream out(data, std::ios::binary);
    if (!out) throw Error("cannot write " + data.string());
    if constexpr (std::endian::native == std::endian::little) {
      out.write(reinterpret_cast<const char*>(field.values().data()),
                static_cast<std::streamsize>(field.size() * sizeof(double)));
    } else {
      for (double v : field.values()) {
        std::uint64_t u;
        std::memcpy(&u, &v, 8);
        u = __builtin_bswap64(u);
        out.write(reinterpret_cast<const char*>(&u), 8);
      }
    }
    if (!out) throw Error("write failed: " + data.string());
  }
  const fs::path stored =
      fs::absolute(data).parent_path() == fs::absolute(sidecar).parent_path() ? data.filename() : data;
  JsonWriter w;
  w.begin_object();
  write_header(w, kRawFormat, field.shape(), {});
  w.key("data").value(stored.string());
  w.end_object();
  write_text(sidecar, w.str() + "\n");
}

}  // namespace segopt
