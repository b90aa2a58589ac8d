#include "json_text.hpp"

#include <cmath>
#include <cstdio>

namespace lapnum::detail {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += std::string(",") + nl;
        first = false;
        out += pad + Json(it.key()).dump() + (indent > 0 ? ": " : ":");
        write(it.value(), indent, depth + 1, out);
      }
      out += nl + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += std::string(",") + nl;
        out += pad;
        write(j[i], indent, depth + 1, out);
      }
      out += nl + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      const std::string s = format_double(x);
      out += std::isfinite(x) ? s : "\"" + s + "\"";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  out += "\n";
  return out;
}

}  // namespace lapnum::detail
