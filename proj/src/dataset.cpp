#include "optibound/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "optibound/errors.hpp"
#include "optibound/random.hpp"
#include "optibound/report.hpp"

namespace optibound {

Dataset::Dataset() : s_(std::make_shared<storage>()) {}

Dataset::Dataset(SpMat x, Eigen::VectorXd y) {
  if (x.rows() != y.size())
    throw std::invalid_argument("dataset: instance/label count mismatch");
  auto s = std::make_shared<storage>();
  s->x = std::move(x);
  s->x.makeCompressed();
  s->y = std::move(y);
  s_ = std::move(s);
}

Eigen::VectorXd Dataset::row_dense(int i) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim());
  for (SpMat::InnerIterator it(s_->x, i); it; ++it) v[it.col()] = it.value();
  return v;
}

double Dataset::row_dot(int i, const Dataset& other, int j) const {
  SpMat::InnerIterator a(s_->x, i), b(other.s_->x, j);
  double acc = 0.0;
  while (a && b) {
    if (a.col() == b.col()) {
      acc += a.value() * b.value();
      ++a, ++b;
    } else if (a.col() < b.col()) {
      ++a;
    } else {
      ++b;
    }
  }
  return acc;
}

double Dataset::row_squared_norm(int i) const { return row_dot(i, *this, i); }

Dataset Dataset::subset(const std::vector<int>& rows) const {
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd y(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    int i = rows[r];
    if (i < 0 || i >= this->rows()) throw std::out_of_range("dataset: row index");
    y[static_cast<Eigen::Index>(r)] = s_->y[i];
    for (SpMat::InnerIterator it(s_->x, i); it; ++it)
      trips.emplace_back(static_cast<int>(r), static_cast<int>(it.col()), it.value());
  }
  SpMat x(static_cast<int>(rows.size()), dim());
  x.setFromTriplets(trips.begin(), trips.end());
  return Dataset(std::move(x), std::move(y));
}

Dataset Dataset::without_row(int i) const {
  std::vector<int> keep;
  keep.reserve(rows() - 1);
  for (int r = 0; r < rows(); ++r)
    if (r != i) keep.push_back(r);
  return subset(keep);
}

namespace {

bool parse_double(std::string_view tok, double& out) {
  // strtod accepts leading '+', which from_chars does not
  std::string buf(tok);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && !buf.empty();
}

}  // namespace

Dataset parse_libsvm(std::string_view text, LabelPolicy policy) {
  std::vector<Eigen::Triplet<double>> trips;
  std::vector<double> labels;
  int max_index = 0;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::istringstream ss{std::string(line)};
    std::string tok;
    ss >> tok;
    double label;
    if (!parse_double(tok, label)) throw parse_error("bad label '" + tok + "'", line_no);
    if (policy == LabelPolicy::binary && label != 1.0 && label != -1.0)
      throw parse_error("label must be +1 or -1, got '" + tok + "'", line_no);
    int row = static_cast<int>(labels.size());
    labels.push_back(label);

    int prev_index = 0;
    while (ss >> tok) {
      size_t colon = tok.find(':');
      if (colon == std::string::npos)
        throw parse_error("expected index:value, got '" + tok + "'", line_no);
      int index = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + colon, index);
      if (ec != std::errc() || p != tok.data() + colon || index < 1)
        throw parse_error("bad feature index in '" + tok + "'", line_no);
      if (index <= prev_index)
        throw parse_error("feature indices must be strictly ascending at '" + tok + "'",
                          line_no);
      double value;
      if (!parse_double(std::string_view(tok).substr(colon + 1), value))
        throw parse_error("bad feature value in '" + tok + "'", line_no);
      prev_index = index;
      max_index = std::max(max_index, index);
      trips.emplace_back(row, index - 1, value);
    }
  }

  SpMat x(static_cast<int>(labels.size()), max_index);
  x.setFromTriplets(trips.begin(), trips.end());
  return Dataset(std::move(x), Eigen::Map<Eigen::VectorXd>(labels.data(),
                                                           static_cast<Eigen::Index>(labels.size())));
}

Dataset load_libsvm(const std::string& path, LabelPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_libsvm(buf.str(), policy);
}

std::string format_libsvm(const Dataset& ds) {
  std::string out;
  for (int i = 0; i < ds.rows(); ++i) {
    out += format_double(ds.y()[i]);
    for (SpMat::InnerIterator it(ds.x(), i); it; ++it) {
      out += ' ';
      out += std::to_string(it.col() + 1);
      out += ':';
      out += format_double(it.value());
    }
    out += '\n';
  }
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("split: fraction must lie in (0, 1)");
  if (ds.rows() < 2) throw std::invalid_argument("split: need at least two rows");
  std::vector<int> order(ds.rows());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  int first = static_cast<int>(std::llround(fraction * ds.rows()));
  std::vector<int> a(order.begin(), order.begin() + first);
  std::vector<int> b(order.begin() + first, order.end());
  return {ds.subset(a), ds.subset(b)};
}

double kernel_value(const KernelSpec& k, const Dataset& a, int i, const Dataset& b, int j) {
  double dot = a.row_dot(i, b, j);
  if (k.kind == KernelSpec::Kind::linear) return dot;
  double sq = a.row_squared_norm(i) + b.row_squared_norm(j) - 2.0 * dot;
  return std::exp(-k.gamma * sq);
}

Eigen::MatrixXd gram(const Dataset& ds, const KernelSpec& k) {
  const int n = ds.rows();
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g(i, j) = g(j, i) = kernel_value(k, ds, i, ds, j);
  return g;
}

Eigen::MatrixXd cross_gram(const Dataset& a, const Dataset& b, const KernelSpec& k) {
  Eigen::MatrixXd g(a.rows(), b.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.rows(); ++j) g(i, j) = kernel_value(k, a, i, b, j);
  return g;
}

}  // namespace optibound
