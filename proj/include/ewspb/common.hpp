#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ewspb {

struct InvalidLength : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidDimensions : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SpecMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SubbandTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EndOfStream : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CorruptStream : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyGop : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense (frame, row, col) array of 64-bit reals.
class Volume {
public:
  Volume() = default;
  Volume(int frames, int rows, int cols)
      : frames_(frames), rows_(rows), cols_(cols),
        data_(static_cast<size_t>(frames) * rows * cols, 0.0) {}

  int frames() const { return frames_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  size_t size() const { return data_.size(); }

  double &at(int f, int r, int c) { return data_[index(f, r, c)]; }
  double at(int f, int r, int c) const { return data_[index(f, r, c)]; }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

  bool same_shape(const Volume &o) const {
    return frames_ == o.frames_ && rows_ == o.rows_ && cols_ == o.cols_;
  }

private:
  size_t index(int f, int r, int c) const {
    return (static_cast<size_t>(f) * rows_ + r) * cols_ + c;
  }

  int frames_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

} // namespace ewspb
