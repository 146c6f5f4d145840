#include "longtail/svg.hpp"

#include <cmath>

#include <fmt/format.h>

namespace longtail::svg {

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi, std::size_t max_ticks, bool integer_only) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) return {};
  if (hi < lo) std::swap(lo, hi);
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  max_ticks = std::max<std::size_t>(max_ticks, 2);
  const double span = hi - lo;
  int exponent = static_cast<int>(std::floor(std::log10(span / static_cast<double>(max_ticks)))) - 1;
  if (integer_only) exponent = std::max(exponent, 0);
  constexpr std::array<double, 3> kMantissa = {1.0, 2.0, 5.0};
  for (;; ++exponent) {
    for (double m : kMantissa) {
      const double step = m * std::pow(10.0, exponent);
      const auto first = static_cast<long long>(std::floor(lo / step));
      const auto last = static_cast<long long>(std::ceil(hi / step));
      if (static_cast<std::size_t>(last - first + 1) <= max_ticks) {
        std::vector<double> ticks;
        for (long long k = first; k <= last; ++k) ticks.push_back(static_cast<double>(k) * step);
        return ticks;
      }
    }
  }
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  return fmt::format("{:.6g}", v);
}

Document::Document(int width, int height) : width_(width), height_(height) {}

void Document::rect(double x, double y, double w, double h, std::string_view fill, std::string_view extra) {
  body_ += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"{}{}/>\n",
                       x, y, w, h, fill, extra.empty() ? "" : " ", extra);
}

void Document::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width) {
  body_ += fmt::format(
      "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"{:.2f}\"/>\n", x1,
      y1, x2, y2, stroke, width);
}

void Document::circle(double cx, double cy, double r, std::string_view fill, std::string_view extra) {
  body_ += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"{}\"{}{}/>\n", cx, cy, r, fill,
                       extra.empty() ? "" : " ", extra);
}

void Document::text(double x, double y, std::string_view content, std::string_view extra) {
  body_ += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\"{}{}>{}</text>\n", x, y, extra.empty() ? "" : " ", extra,
                       escape(content));
}

void Document::raw(std::string_view markup) { body_ += markup; }

std::string Document::finish() const {
  return fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"#ffffff\"/>\n"
      "{2}</svg>\n",
      width_, height_, body_);
}

}  // namespace longtail::svg
