#include "fronttrack/writers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <nlohmann/json.hpp>

namespace fronttrack {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kPad = 48.0;

struct Canvas {
  SvgWindow w;
  double px(double x) const { return kPad + (x - w.x_min) / (w.x_max - w.x_min) * (kWidth - 2 * kPad); }
  double py(double t) const {
    return kHeight - kPad - (t - w.t_min) / (w.t_max - w.t_min) * (kHeight - 2 * kPad);
  }
  double clamp_x(double x) const { return std::clamp(x, w.x_min, w.x_max); }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void svg_open(std::ostream& out, const Canvas& c, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<title>" << escape(title) << "</title>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<rect x=\"" << fmt(kPad) << "\" y=\"" << fmt(kPad) << "\" width=\""
      << fmt(kWidth - 2 * kPad) << "\" height=\"" << fmt(kHeight - 2 * kPad)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  const double y0 = c.py(c.w.t_min) + 16;
  out << "<text x=\"" << fmt(kPad) << "\" y=\"" << fmt(y0) << "\" font-size=\"11\">"
      << format_number(c.w.x_min) << "</text>\n";
  out << "<text x=\"" << fmt(kWidth - kPad) << "\" y=\"" << fmt(y0)
      << "\" font-size=\"11\" text-anchor=\"end\">" << format_number(c.w.x_max) << "</text>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kHeight - 12)
      << "\" font-size=\"12\" text-anchor=\"middle\">x</text>\n";
  out << "<text x=\"" << fmt(kPad - 6) << "\" y=\"" << fmt(c.py(c.w.t_min))
      << "\" font-size=\"11\" text-anchor=\"end\">" << format_number(c.w.t_min) << "</text>\n";
  out << "<text x=\"" << fmt(kPad - 6) << "\" y=\"" << fmt(c.py(c.w.t_max) + 10)
      << "\" font-size=\"11\" text-anchor=\"end\">" << format_number(c.w.t_max) << "</text>\n";
  out << "<text x=\"16\" y=\"" << fmt(kHeight / 2) << "\" font-size=\"12\">t</text>\n";
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" font-size=\"13\" text-anchor=\"middle\">"
      << escape(title) << "</text>\n";
}

std::vector<double> segment_times(double a, double b, std::size_t n) {
  std::vector<double> ts(n + 1);
  for (std::size_t i = 0; i <= n; ++i) ts[i] = a + (b - a) * static_cast<double>(i) / n;
  ts.back() = b;
  return ts;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> trajectory_times(const WeakSolution& w, std::size_t samples) {
  std::vector<double> ts = linspace(w.start_time(), w.end_time(), std::max<std::size_t>(samples, 2));
  for (const auto& e : w.events()) ts.push_back(e.time);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

void write_trajectories_csv(std::ostream& out, const WeakSolution& w,
                            const std::vector<double>& times) {
  int columns = 0;
  for (const auto& seg : w.segments()) {
    for (const auto& tr : seg.trajectories()) columns = std::max(columns, tr.id() + 1);
  }
  out << 't';
  for (int k = 1; k <= columns; ++k) out << ",x_" << k;
  out << '\n';
  for (double t : times) {
    std::vector<std::string> cells(static_cast<std::size_t>(columns));
    const auto ids = w.interface_ids(t);
    const auto pos = w.interface_positions(t);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      cells[static_cast<std::size_t>(ids[i])] = format_number(pos[i]);
    }
    out << format_number(t);
    for (const auto& c : cells) out << ',' << c;
    out << '\n';
  }
}

void write_field_csv(std::ostream& out, const FieldSample& field) {
  out << "t,x,v\n";
  for (std::size_t i = 0; i < field.ts.size(); ++i) {
    for (std::size_t j = 0; j < field.xs.size(); ++j) {
      out << format_number(field.ts[i]) << ',' << format_number(field.xs[j]) << ','
          << format_number(field.at(i, j)) << '\n';
    }
  }
}

void write_events_json(std::ostream& out, const WeakSolution& w, const std::string& name) {
  nlohmann::ordered_json doc;
  doc["scenario"] = name;
  doc["start_time"] = w.start_time();
  doc["end_time"] = w.end_time();
  doc["initial_components"] =
      w.empty() ? 0 : w.segments().front().initial_set().components();
  doc["final_components"] = w.empty() ? 0 : w.segments().back().initial_set().components();
  auto events = nlohmann::ordered_json::array();
  for (const auto& e : w.events()) {
    nlohmann::ordered_json j;
    j["time"] = e.time;
    j["kind"] = to_string(e.kind);
    j["left_index"] = e.left_index;
    j["right_index"] = e.right_index;
    j["left_id"] = e.left_id + 1;
    j["right_id"] = e.right_id + 1;
    j["position"] = e.position;
    j["components_before"] = e.components_before;
    j["components_after"] = e.components_after;
    events.push_back(std::move(j));
  }
  doc["events"] = std::move(events);
  out << doc.dump(2) << '\n';
}

void write_spacetime_svg(std::ostream& out, const WeakSolution& w, const SvgWindow& window,
                         const std::string& title) {
  const Canvas c{window};
  svg_open(out, c, title);
  for (const auto& seg : w.segments()) {
    const double a = std::max(seg.start_time(), window.t_min);
    const double b = std::min(seg.end_time(), window.t_max);
    if (!(b > a) || seg.interface_count() == 0) continue;
    const auto ts = segment_times(a, b, 96);
    for (std::size_t j = 0; j + 1 < seg.interface_count(); j += 2) {
      const auto& left = seg.trajectories()[j];
      const auto& right = seg.trajectories()[j + 1];
      out << "<polygon fill=\"#f4a259\" fill-opacity=\"0.45\" stroke=\"none\" points=\"";
      for (double t : ts) out << fmt(c.px(c.clamp_x(left.position(t)))) << ',' << fmt(c.py(t)) << ' ';
      for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        out << fmt(c.px(c.clamp_x(right.position(*it)))) << ',' << fmt(c.py(*it)) << ' ';
      }
      out << "\"/>\n";
    }
    for (const auto& tr : seg.trajectories()) {
      out << "<polyline fill=\"none\" stroke=\"#1d3557\" stroke-width=\"1.5\" points=\"";
      for (double t : ts) out << fmt(c.px(c.clamp_x(tr.position(t)))) << ',' << fmt(c.py(t)) << ' ';
      out << "\"/>\n";
    }
  }
  for (const auto& e : w.events()) {
    if (e.time < window.t_min || e.time > window.t_max) continue;
    out << "<circle cx=\"" << fmt(c.px(c.clamp_x(e.position))) << "\" cy=\"" << fmt(c.py(e.time))
        << "\" r=\"4\" fill=\"#e63946\"><title>" << to_string(e.kind) << " t="
        << format_number(e.time) << "</title></circle>\n";
  }
  out << "</svg>\n";
}

void write_illposed_svg(std::ostream& out, const IllPosedDemo& demo, const SvgWindow& window) {
  const Canvas c{window};
  svg_open(out, c, "two continuations from W(v0(0)) = 0");
  const auto ts = segment_times(window.t_min, window.t_max, 96);
  const std::pair<const Continuation*, const char*> curves[] = {{&demo.front, "#e76f51"},
                                                                {&demo.back, "#2a9d8f"}};
  for (const auto& [cont, colour] : curves) {
    out << "<polygon fill=\"" << colour << "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
    for (double t : ts) out << fmt(c.px(c.clamp_x(cont->position(t)))) << ',' << fmt(c.py(t)) << ' ';
    out << fmt(c.px(window.x_max)) << ',' << fmt(c.py(window.t_max)) << ' ' << fmt(c.px(window.x_max))
        << ',' << fmt(c.py(window.t_min)) << "\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (double t : ts) out << fmt(c.px(c.clamp_x(cont->position(t)))) << ',' << fmt(c.py(t)) << ' ';
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

void write_divergence_csv(std::ostream& out, const IllPosedDemo& demo,
                          const std::vector<double>& times) {
  out << "t,s_front,s_back,separation\n";
  for (double t : times) {
    const double f = demo.front.position(t);
    const double b = demo.back.position(t);
    out << format_number(t) << ',' << format_number(f) << ',' << format_number(b) << ','
        << format_number(std::abs(f - b)) << '\n';
  }
}

void write_tracks_csv(std::ostream& out, const TrackSamples& tracks) {
  std::size_t columns = 0;
  for (const auto& p : tracks.positions) columns = std::max(columns, p.size());
  out << 't';
  for (std::size_t k = 1; k <= columns; ++k) out << ",x_" << k;
  out << '\n';
  for (std::size_t i = 0; i < tracks.times.size(); ++i) {
    out << format_number(tracks.times[i]);
    for (std::size_t k = 0; k < columns; ++k) {
      out << ',';
      if (k < tracks.positions[i].size()) out << format_number(tracks.positions[i][k]);
    }
    out << '\n';
  }
}

void write_oracle_summary(std::ostream& out, const std::vector<SweepEntry>& sweep,
                          double horizon) {
  nlohmann::ordered_json doc;
  doc["horizon"] = horizon;
  auto runs = nlohmann::ordered_json::array();
  bool monotone = true;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const auto& s = sweep[i];
    nlohmann::ordered_json j;
    j["eps"] = s.eps;
    j["dx"] = s.config.dx;
    j["dt"] = s.config.dt;
    j["points"] = s.config.points();
    j["steps"] = s.run.steps;
    j["sup_error"] = s.report.sup_error;
    j["time_of_sup"] = s.report.time_of_sup;
    j["max_displacement"] = s.report.max_displacement;
    j["relative_error"] = s.report.relative_error;
    j["compared_times"] = s.report.compared_times;
    runs.push_back(std::move(j));
    if (i > 0 && s.eps < sweep[i - 1].eps &&
        !(s.report.sup_error < sweep[i - 1].report.sup_error)) {
      monotone = false;
    }
  }
  doc["runs"] = std::move(runs);
  doc["error_decreases_with_eps"] = monotone;
  out << doc.dump(2) << '\n';
}

}  // namespace fronttrack
