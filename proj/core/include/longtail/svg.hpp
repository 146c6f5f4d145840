#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace longtail::svg {

/// cluster i is drawn with kPalette[i % kPalette.size()]
inline constexpr std::array<std::string_view, 8> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
inline constexpr std::string_view kAnomalyColor = "#d62728";
inline constexpr std::string_view kNeutralColor = "#7f7f7f";

std::string escape(std::string_view text);

/// Evenly spaced ticks at multiples of a 1/2/5 x 10^n step that cover
/// [lo, hi] with at most `max_ticks` values. `integer_only` restricts steps
/// to whole numbers.
std::vector<double> nice_ticks(double lo, double hi, std::size_t max_ticks = 10, bool integer_only = false);

/// Shortest stable label for a tick value.
std::string tick_label(double v);

/// Minimal append-only SVG builder. Coordinates are printed with two
/// decimals so identical input produces identical bytes.
class Document {
 public:
  Document(int width, int height);

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view extra = {});
  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0);
  void circle(double cx, double cy, double r, std::string_view fill, std::string_view extra = {});
  void text(double x, double y, std::string_view content, std::string_view extra = {});
  /// Raw markup, appended verbatim.
  void raw(std::string_view markup);

  std::string finish() const;

 private:
  int width_;
  int height_;
  std::string body_;
};

}  // namespace longtail::svg
