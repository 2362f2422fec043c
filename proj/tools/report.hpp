#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace collinear::cli {

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Section {
  std::string name;
  std::string title;
  std::vector<std::pair<std::string, Cell>> fields;
  std::vector<Table> tables;
  std::vector<std::string> notes;
};

/// Ordered report blocks rendered as aligned text or as a JSON tree.
struct ReportDocument {
  std::string command;
  std::vector<Section> sections;

  Section& add(std::string name, std::string title);
  std::string render_text(int decimals = 5) const;
  std::string render_json() const;
  /// Tables only, one block per table headed by "# section/table".
  std::string render_csv() const;
};

/// Fixed notation with `decimals` places; scientific with the same number
/// of mantissa digits when the fixed form would lose the value.
std::string format_number(double v, int decimals);

}  // namespace collinear::cli
