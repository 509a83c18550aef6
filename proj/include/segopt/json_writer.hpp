#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace segopt {

// Streaming JSON emitter. Doubles are written with 17 significant digits
// (lossless for IEEE-754 binary64); non-finite doubles become null.
class JsonWriter {
 public:
  // indent = 0 writes everything on one line.
  explicit JsonWriter(int indent = 0) : indent_(indent) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double x);
  JsonWriter& value(std::int64_t x);
  JsonWriter& value(bool x);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& null();

  // Arrays of numbers are always written on a single line.
  JsonWriter& array(const std::vector<double>& xs);

  const std::string& str() const { return out_; }

 private:
  struct Frame {
    bool is_array;
    bool empty;
  };
  void before_value();
  void newline();
  void close(char c);
  void write_string(std::string_view s);

  int indent_;
  std::string out_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

std::string format_double(double x);

}  // namespace segopt
