#include "cli/svg.hpp"

#include <sstream>

#include <fmt/format.h>

namespace supint::cli {

namespace {

constexpr double kMargin = 50.0;

}  // namespace

SvgPlot::SvgPlot(int width, int height, double xmin, double xmax, double ymin, double ymax)
    : width_(width), height_(height), xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {
  if (xmax_ <= xmin_) xmax_ = xmin_ + 1.0;
  if (ymax_ <= ymin_) ymax_ = ymin_ + 1.0;
}

double SvgPlot::px(double x) const { return kMargin + (x - xmin_) / (xmax_ - xmin_) * (width_ - 2 * kMargin); }

double SvgPlot::py(double y) const {
  return height_ - kMargin - (y - ymin_) / (ymax_ - ymin_) * (height_ - 2 * kMargin);
}

void SvgPlot::add_points(const std::vector<Point2>& pts, const std::string& color, double radius,
                         const std::string& legend) {
  layers_.push_back({true, pts, color, radius});
  if (!legend.empty()) legend_.emplace_back(legend, color);
}

void SvgPlot::add_polyline(const std::vector<Point2>& pts, const std::string& color, double width) {
  if (pts.size() < 2) return;
  layers_.push_back({false, pts, color, width});
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void SvgPlot::write(std::ostream& os) const {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  for (const auto& c : comments_) {
    std::string safe = c;
    for (std::size_t i = safe.find("--"); i != std::string::npos; i = safe.find("--")) safe.replace(i, 2, "- ");
    os << "<!-- " << safe << " -->\n";
  }
  os << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      width_, height_, width_, height_);
  os << fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width_, height_);
  os << fmt::format("<clipPath id=\"plot\"><rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\"/></clipPath>\n",
                    kMargin, kMargin, width_ - 2 * kMargin, height_ - 2 * kMargin);
  os << fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
      kMargin, kMargin, width_ - 2 * kMargin, height_ - 2 * kMargin);
  // Tick labels at the corners of the data rectangle.
  os << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"middle\">{:.4g}</text>\n",
                    kMargin, height_ - kMargin + 15, xmin_);
  os << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"middle\">{:.4g}</text>\n",
                    width_ - kMargin, height_ - kMargin + 15, xmax_);
  os << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n",
                    kMargin - 4, height_ - kMargin, ymin_);
  os << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n",
                    kMargin - 4, kMargin + 8, ymax_);
  if (!xlabel_.empty()) {
    os << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
                      width_ / 2.0, height_ - 12.0, xml_escape(xlabel_));
  }
  if (!ylabel_.empty()) {
    os << fmt::format(
        "<text x=\"16\" y=\"{:.2f}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2f})\">{}</text>\n",
        height_ / 2.0, height_ / 2.0, xml_escape(ylabel_));
  }
  if (!title_.empty()) {
    os << fmt::format("<text x=\"{:.2f}\" y=\"30\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
                      width_ / 2.0, xml_escape(title_));
  }
  os << "<g clip-path=\"url(#plot)\">\n";
  for (const auto& layer : layers_) {
    if (layer.points) {
      os << fmt::format("<g fill=\"{}\">\n", layer.color);
      for (const auto& p : layer.pts) {
        os << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\"/>\n", px(p.x), py(p.y), layer.size);
      }
      os << "</g>\n";
    } else {
      os << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{:.2f}\" points=\"", layer.color,
                        layer.size);
      for (std::size_t i = 0; i < layer.pts.size(); ++i) {
        os << fmt::format("{}{:.2f},{:.2f}", i ? " " : "", px(layer.pts[i].x), py(layer.pts[i].y));
      }
      os << "\"/>\n";
    }
  }
  os << "</g>\n";
  for (std::size_t i = 0; i < legend_.size(); ++i) {
    const double y = kMargin + 14.0 + 16.0 * static_cast<double>(i);
    os << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"{}\"/>\n", width_ - kMargin - 90, y - 4,
                      legend_[i].second);
    os << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\">{}</text>\n", width_ - kMargin - 80, y,
                      xml_escape(legend_[i].first));
  }
  os << "</svg>\n";
}

std::string SvgPlot::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

const std::vector<std::string>& set_palette() {
  static const std::vector<std::string> colors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                               "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  return colors;
}

}  // namespace supint::cli
