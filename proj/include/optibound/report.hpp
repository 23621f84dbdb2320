#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "optibound/selection.hpp"

namespace optibound {

using json = nlohmann::ordered_json;

// shortest round-trip decimal would also do; %.17g keeps CSV diff-stable and
// exactly reconstructible
std::string format_double(double v);

// RFC 4180: comma separated, CRLF line ends, quoting only where required
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& fields);
  void add_row(const std::vector<double>& fields);
  const std::string& str() const { return out_; }

 private:
  void write_fields(const std::vector<std::string>& fields);
  std::string out_;
  size_t width_;
};

void write_text_file(const std::string& path, const std::string& content);

json model_to_json(const TrainedModel& m);
json ball_to_json(const Ball& b);
json selection_to_json(const SelectionResult& r);
json path_to_json(const PathReport& r);
json loocv_to_json(const LoocvResult& r, int n, double c);

std::string selection_to_csv(const SelectionResult& r);
std::string path_to_csv(const PathReport& r);
std::string curve_to_csv(const std::vector<double>& c,
                         const std::vector<double>& error_lo,
                         const std::vector<double>& error_hi);
std::string lr_targets_to_csv(const LrFromSvmResult& r);
std::string gram_to_csv(const Eigen::MatrixXd& k);

}  // namespace optibound
