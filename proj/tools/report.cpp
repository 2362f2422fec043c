#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace collinear::cli {

Section& ReportDocument::add(std::string name, std::string title) {
  sections.push_back(Section{std::move(name), std::move(title), {}, {}, {}});
  return sections.back();
}

std::string format_number(double v, int decimals) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[64];
  const double a = std::abs(v);
  // Below this the fixed form keeps fewer than three significant digits.
  const double small = std::pow(10.0, decimals >= 4 ? 2 - decimals : -decimals);
  if (v != 0.0 && (a < small || a >= 1e12)) {
    std::snprintf(buf, sizeof buf, "%.*e", decimals, v);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  }
  return buf;
}

namespace {

struct CellText {
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(double v) const { return format_number(v, decimals); }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(bool v) const { return v ? "yes" : "no"; }
  std::string operator()(const std::string& v) const { return v; }
  int decimals;
};

bool right_aligned(const Cell& c) {
  return std::holds_alternative<double>(c) || std::holds_alternative<long long>(c);
}

nlohmann::ordered_json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

std::string ReportDocument::render_text(int decimals) const {
  std::ostringstream out;
  const CellText text{decimals};
  bool first = true;
  for (const auto& s : sections) {
    if (!first) out << '\n';
    first = false;
    out << s.title << '\n' << std::string(s.title.size(), '-') << '\n';
    std::size_t key_width = 0;
    for (const auto& [k, v] : s.fields) key_width = std::max(key_width, k.size());
    for (const auto& [k, v] : s.fields)
      out << k << ':' << std::string(key_width - k.size() + 1, ' ') << std::visit(text, v) << '\n';
    for (const auto& t : s.tables) {
      if (!s.fields.empty() || &t != &s.tables.front()) out << '\n';
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
      std::vector<std::vector<std::string>> cells;
      for (const auto& row : t.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
          line.push_back(std::visit(text, row[c]));
          width[c] = std::max(width[c], line.back().size());
        }
      }
      auto emit = [&](const std::string& cell, std::size_t c, bool right) {
        if (c > 0) out << "  ";
        const std::string pad(width[c] - cell.size(), ' ');
        out << (right ? pad + cell : (c + 1 == width.size() ? cell : cell + pad));
      };
      for (std::size_t c = 0; c < t.columns.size(); ++c) emit(t.columns[c], c, c > 0);
      out << '\n';
      for (std::size_t r = 0; r < cells.size(); ++r) {
        for (std::size_t c = 0; c < cells[r].size(); ++c)
          emit(cells[r][c], c, c > 0 && right_aligned(t.rows[r][c]));
        out << '\n';
      }
    }
    for (const auto& n : s.notes) out << "note: " << n << '\n';
  }
  return out.str();
}

std::string ReportDocument::render_csv() const {
  std::ostringstream out;
  auto quoted = [](const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string q = "\"";
    for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  auto cell = [&](const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
      if (!std::isfinite(*d)) return format_number(*d, 0);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", *d);
      return std::string(buf);
    }
    return quoted(std::visit(CellText{17}, c));
  };
  bool first = true;
  for (const auto& s : sections) {
    for (const auto& t : s.tables) {
      if (!first) out << '\n';
      first = false;
      out << "# " << s.name << '/' << t.name << '\n';
      for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << quoted(t.columns[c]);
      out << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell(row[c]);
        out << '\n';
      }
    }
  }
  return out.str();
}

std::string ReportDocument::render_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : sections) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["title"] = s.title;
    js["fields"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.fields) js["fields"][k] = to_json(v);
    js["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : s.tables) {
      nlohmann::ordered_json jt;
      jt["name"] = t.name;
      jt["columns"] = t.columns;
      jt["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (const auto& c : row) jr.push_back(to_json(c));
        jt["rows"].push_back(std::move(jr));
      }
      js["tables"].push_back(std::move(jt));
    }
    js["notes"] = s.notes;
    doc["sections"].push_back(std::move(js));
  }
  return doc.dump(2) + "\n";
}

}  // namespace collinear::cli
