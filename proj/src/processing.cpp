#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "nmrqc/experiment2d.hpp"

namespace nmrqc {

namespace {

// Planner calls are not thread-safe in FFTW.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> frequency_axis(std::size_t n, double dwell, double carrier) {
  std::vector<double> axis(n);
  const double sw = 1.0 / dwell;
  for (std::size_t k = 0; k < n; ++k)
    axis[k] = carrier + (static_cast<double>(k) - static_cast<double>(n / 2)) * sw / static_cast<double>(n);
  return axis;
}

}  // namespace

std::vector<std::complex<double>> apodize_and_zerofill(const RawData2D& raw, const ProcessOptions& options,
                                                       std::size_t& rows, std::size_t& cols) {
  if (options.zerofill < 1) throw Error("zero-fill factor must be at least 1");
  if (raw.grid.size() != raw.n_t1 * raw.n_t2) throw Error("raw grid is not rectangular");
  if (!(raw.dwell1 > 0.0) || !(raw.dwell2 > 0.0)) throw Error("dwell times must be positive");
  rows = raw.n_t1 * options.zerofill;
  cols = raw.n_t2 * options.zerofill;

  const double lb1 = options.line_broaden_hz.value_or(2.0 / (static_cast<double>(raw.n_t1) * raw.dwell1));
  const double lb2 = options.line_broaden_hz.value_or(2.0 / (static_cast<double>(raw.n_t2) * raw.dwell2));
  std::vector<double> w1(raw.n_t1);
  std::vector<double> w2(raw.n_t2);
  for (std::size_t i = 0; i < raw.n_t1; ++i) w1[i] = std::exp(-std::numbers::pi * lb1 * static_cast<double>(i) * raw.dwell1);
  for (std::size_t j = 0; j < raw.n_t2; ++j) w2[j] = std::exp(-std::numbers::pi * lb2 * static_cast<double>(j) * raw.dwell2);

  std::vector<std::complex<double>> buffer(rows * cols, {0.0, 0.0});
  for (std::size_t i = 0; i < raw.n_t1; ++i)
    for (std::size_t j = 0; j < raw.n_t2; ++j) buffer[i * cols + j] = raw.at(i, j) * (w1[i] * w2[j]);
  return buffer;
}

Spectrum2D process(const RawData2D& raw, const ProcessOptions& options) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  auto buffer = apodize_and_zerofill(raw, options, rows, cols);

  auto* data = reinterpret_cast<fftw_complex*>(buffer.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  Spectrum2D spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.magnitudes.resize(rows * cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows * cols));
  // fftshift: output row r holds DFT bin (r + N/2) mod N.
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t src_r = (r + rows / 2) % rows;
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t src_c = (c + cols / 2) % cols;
      spec.magnitudes[r * cols + c] = std::abs(buffer[src_r * cols + src_c]) * scale;
    }
  }
  spec.axis1 = frequency_axis(rows, raw.dwell1, raw.carrier1_hz);
  spec.axis2 = frequency_axis(cols, raw.dwell2, raw.carrier2_hz);
  return spec;
}

}  // namespace nmrqc
