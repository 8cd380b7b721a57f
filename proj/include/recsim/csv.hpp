#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace recsim {

// Minimal CSV emitter. Floating-point fields are printed with 17 significant
// digits so values round-trip exactly.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void header(const std::vector<std::string>& columns);

  void begin_row();
  void field(double v);
  void field(long v);
  void field(int v);
  void field(const std::string& v);
  void end_row();

 private:
  void sep();
  std::ofstream out_;
  bool first_in_row_ = true;
};

std::string format_double(double v);  // %.17g

}  // namespace recsim
