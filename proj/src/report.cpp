#include "optibound/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace optibound {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

bool needs_quoting(const std::string& f) {
  return f.find_first_of(",\"\r\n") != std::string::npos;
}

std::string quote(const std::string& f) {
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  if (header.empty()) throw std::invalid_argument("csv: empty header");
  write_fields(header);
}

void CsvWriter::write_fields(const std::vector<std::string>& fields) {
  if (fields.size() != width_) throw std::invalid_argument("csv: ragged row");
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ += ',';
    out_ += needs_quoting(fields[i]) ? quote(fields[i]) : fields[i];
  }
  out_ += "\r\n";
}

void CsvWriter::add_row(const std::vector<std::string>& fields) { write_fields(fields); }

void CsvWriter::add_row(const std::vector<double>& fields) {
  std::vector<std::string> text;
  text.reserve(fields.size());
  for (double v : fields) text.push_back(format_double(v));
  write_fields(text);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

json model_to_json(const TrainedModel& m) {
  json j;
  j["loss"] = to_string(m.loss);
  j["kernel"] = m.kernel.kind == KernelSpec::Kind::linear ? "linear" : "rbf";
  if (m.kernel.kind == KernelSpec::Kind::rbf) j["gamma"] = m.kernel.gamma;
  j["c"] = m.c;
  j["representation"] = m.w.is_primal() ? "primal" : "dual";
  j["weights"] = std::vector<double>(m.w.values().begin(), m.w.values().end());
  j["norm"] = m.w.norm();
  j["certificate"] = m.certificate;
  j["iterations"] = m.iterations;
  return j;
}

json ball_to_json(const Ball& b) {
  json j;
  j["center_repr"] = b.center.is_primal() ? "primal" : "dual";
  j["center"] = std::vector<double>(b.center.values().begin(), b.center.values().end());
  j["radius"] = b.radius;
  return j;
}

json selection_to_json(const SelectionResult& r) {
  json j;
  j["best_C"] = r.best_c;
  j["best_error"] = r.best_error;
  j["trained_count"] = r.trained_count;
  j["T"] = r.grid.size();
  json cands = json::array();
  for (const CandidateState& s : r.grid.candidates) {
    json c;
    c["c"] = s.c;
    c["trained"] = s.trained;
    c["error_lo"] = s.eps_lo;
    c["error_hi"] = s.eps_hi;
    if (s.trained) c["error"] = s.error;
    cands.push_back(std::move(c));
  }
  j["candidates"] = std::move(cands);
  json hist = json::array();
  for (const SelectionStep& s : r.history) {
    json h;
    h["index"] = s.index;
    h["c"] = s.c;
    h["error"] = s.error;
    h["best_error_so_far"] = s.eps_best;
    hist.push_back(std::move(h));
  }
  j["history"] = std::move(hist);
  return j;
}

json path_to_json(const PathReport& r) {
  json j;
  j["epsilon"] = r.epsilon;
  j["c_min"] = r.c_min;
  j["c_max"] = r.c_max;
  j["trained_count"] = r.trained_count;
  json bps = json::array();
  for (const PathBreakpoint& b : r.breakpoints) {
    json e;
    e["c"] = b.c;
    e["error"] = b.error;
    bps.push_back(std::move(e));
  }
  j["breakpoints"] = std::move(bps);
  json gaps = json::array();
  for (const PathGap& g : r.gaps) {
    json e;
    e["c_from"] = g.c_from;
    e["c_to"] = g.c_to;
    gaps.push_back(std::move(e));
  }
  j["gaps"] = std::move(gaps);
  return j;
}

json loocv_to_json(const LoocvResult& r, int n, double c) {
  json j;
  j["c"] = c;
  j["instances"] = n;
  j["error"] = r.error;
  j["solved"] = r.solved;
  j["skipped"] = r.skipped;
  return j;
}

std::string selection_to_csv(const SelectionResult& r) {
  CsvWriter w({"C", "err_lo", "err_hi", "solved_flag"});
  for (const CandidateState& s : r.grid.candidates)
    w.add_row(std::vector<std::string>{format_double(s.c), format_double(s.eps_lo),
                                       format_double(s.eps_hi), s.trained ? "1" : "0"});
  return w.str();
}

std::string path_to_csv(const PathReport& r) {
  CsvWriter w({"C", "error"});
  for (const PathBreakpoint& b : r.breakpoints) w.add_row(std::vector<double>{b.c, b.error});
  return w.str();
}

std::string curve_to_csv(const std::vector<double>& c, const std::vector<double>& error_lo,
                         const std::vector<double>& error_hi) {
  if (c.size() != error_lo.size() || c.size() != error_hi.size())
    throw std::invalid_argument("curve csv: length mismatch");
  CsvWriter w({"C", "error_lo", "error_hi"});
  for (size_t i = 0; i < c.size(); ++i)
    w.add_row(std::vector<double>{c[i], error_lo[i], error_hi[i]});
  return w.str();
}

std::string lr_targets_to_csv(const LrFromSvmResult& r) {
  CsvWriter w({"kind", "index", "single_lo", "single_hi", "refined_lo", "refined_hi"});
  for (const TargetInterval& t : r.targets)
    w.add_row(std::vector<std::string>{t.kind, std::to_string(t.index),
                                       format_double(t.single.lo), format_double(t.single.hi),
                                       format_double(t.refined.lo),
                                       format_double(t.refined.hi)});
  return w.str();
}

std::string gram_to_csv(const Eigen::MatrixXd& k) {
  std::vector<std::string> header(k.cols());
  for (int j = 0; j < k.cols(); ++j) header[j] = "k" + std::to_string(j);
  CsvWriter w(header);
  for (int i = 0; i < k.rows(); ++i) {
    std::vector<double> row(k.cols());
    for (int j = 0; j < k.cols(); ++j) row[j] = k(i, j);
    w.add_row(row);
  }
  return w.str();
}

}  // namespace optibound
