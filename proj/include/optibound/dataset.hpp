#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace optibound {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Immutable labeled dataset with sparse instances.  Copies are cheap handle
// copies sharing the same storage, which lets downstream objects test whether
// two vectors were built over the same instances (same_storage).
class Dataset {
 public:
  Dataset();
  Dataset(SpMat x, Eigen::VectorXd y);

  int rows() const { return static_cast<int>(s_->x.rows()); }
  int dim() const { return static_cast<int>(s_->x.cols()); }
  const SpMat& x() const { return s_->x; }
  const Eigen::VectorXd& y() const { return s_->y; }
  bool same_storage(const Dataset& other) const { return s_ == other.s_; }

  Eigen::VectorXd row_dense(int i) const;
  double row_dot(int i, const Dataset& other, int j) const;
  double row_squared_norm(int i) const;
  Dataset without_row(int i) const;
  Dataset subset(const std::vector<int>& rows) const;

 private:
  struct storage {
    SpMat x;
    Eigen::VectorXd y;
  };
  std::shared_ptr<const storage> s_;
};

enum class LabelPolicy { binary, real };

// LIBSVM text format: "<label> <index>:<value> ...", indices 1-based and
// strictly ascending within a line.  Blank lines are skipped.  With
// LabelPolicy::binary labels must be +-1.
Dataset parse_libsvm(std::string_view text, LabelPolicy policy = LabelPolicy::binary);
Dataset load_libsvm(const std::string& path, LabelPolicy policy = LabelPolicy::binary);
std::string format_libsvm(const Dataset& ds);

// Deterministic shuffled split: first part gets round(fraction * n) rows.
std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction, std::uint64_t seed);

struct KernelSpec {
  enum class Kind { linear, rbf };
  Kind kind = Kind::linear;
  double gamma = 0.0;

  static KernelSpec linear() { return {Kind::linear, 0.0}; }
  static KernelSpec rbf(double gamma) { return {Kind::rbf, gamma}; }
  // common default width 1/d
  static KernelSpec rbf_default(int dim) { return rbf(dim > 0 ? 1.0 / dim : 1.0); }
  bool operator==(const KernelSpec&) const = default;
};

double kernel_value(const KernelSpec& k, const Dataset& a, int i, const Dataset& b, int j);
// n x n kernel matrix, exactly symmetric
Eigen::MatrixXd gram(const Dataset& ds, const KernelSpec& k);
// rows of `a` against rows of `b`
Eigen::MatrixXd cross_gram(const Dataset& a, const Dataset& b, const KernelSpec& k);

}  // namespace optibound
