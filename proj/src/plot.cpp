#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "schedsim/bench.hpp"

namespace schedsim::bench {

namespace {

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(2);
    ss << std::fixed << v;
    return ss.str();
}

const char* bar_color(const std::string& algo) {
    if (algo == "rr") return "#b0b0b0";
    if (algo == "aco") return "#5b8dd9";
    if (algo == "hybrid") return "#d9775b";
    return "#888888";
}

// Round a value up to a "nice" axis limit (1/2/5 times a power of ten).
double nice_ceil(double v) {
    if (v <= 0.0) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(v)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mult * mag >= v) return mult * mag;
    }
    return 10.0 * mag;
}

}  // namespace

void write_plot_svg(const std::vector<ExperimentRecord>& records,
                    const std::filesystem::path& path) {
    const std::vector<SummaryStat> stats = summarize(records);
    if (stats.empty()) {
        throw std::invalid_argument("write_plot_svg: no summary rows");
    }

    // Stable orderings: task counts ascending, algorithms in display order.
    std::vector<int> task_counts;
    std::vector<std::string> algos;
    for (const SummaryStat& s : stats) {
        if (std::find(task_counts.begin(), task_counts.end(), s.n_tasks) ==
            task_counts.end()) {
            task_counts.push_back(s.n_tasks);
        }
    }
    std::sort(task_counts.begin(), task_counts.end());
    for (const char* name : {"rr", "aco", "hybrid"}) {
        if (std::any_of(stats.begin(), stats.end(),
                        [&](const SummaryStat& s) { return s.algo == name; })) {
            algos.push_back(name);
        }
    }
    for (const SummaryStat& s : stats) {
        if (std::find(algos.begin(), algos.end(), s.algo) == algos.end()) {
            algos.push_back(s.algo);
        }
    }

    std::map<std::pair<std::string, int>, const SummaryStat*> by_key;
    double max_y = 0.0;
    for (const SummaryStat& s : stats) {
        by_key[{s.algo, s.n_tasks}] = &s;
        max_y = std::max(max_y, s.mean_mean_completion + s.stddev_mean_completion);
    }
    const double y_limit = nice_ceil(max_y * 1.05);

    const double width = 760, height = 420;
    const double left = 70, right = 20, top = 40, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const double group_w = plot_w / task_counts.size();
    const double bar_w = group_w * 0.8 / algos.size();

    auto y_of = [&](double v) { return top + plot_h * (1.0 - v / y_limit); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2
        << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">Mean task completion time by workload size</text>\n";

    // Axes and horizontal gridlines with tick labels.
    for (int tick = 0; tick <= 4; ++tick) {
        const double v = y_limit * tick / 4.0;
        const double y = y_of(v);
        svg << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\""
            << left + plot_w << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << fmt(v) << "</text>\n";
    }
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
        << "\" y2=\"" << top + plot_h
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
        << left + plot_w << "\" y2=\"" << top + plot_h
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    for (std::size_t g = 0; g < task_counts.size(); ++g) {
        const double group_x = left + g * group_w;
        const double bars_x = group_x + group_w * 0.1;
        for (std::size_t a = 0; a < algos.size(); ++a) {
            auto it = by_key.find({algos[a], task_counts[g]});
            if (it == by_key.end()) continue;
            const SummaryStat& s = *it->second;
            const double x = bars_x + a * bar_w;
            const double y = y_of(s.mean_mean_completion);
            svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\""
                << bar_w * 0.9 << "\" height=\"" << top + plot_h - y
                << "\" fill=\"" << bar_color(algos[a]) << "\"/>\n";
            if (s.stddev_mean_completion > 0.0) {
                const double cx = x + bar_w * 0.45;
                const double y_hi = y_of(s.mean_mean_completion +
                                         s.stddev_mean_completion);
                const double y_lo = y_of(std::max(
                    0.0, s.mean_mean_completion - s.stddev_mean_completion));
                svg << "<line x1=\"" << cx << "\" y1=\"" << y_hi << "\" x2=\""
                    << cx << "\" y2=\"" << y_lo
                    << "\" stroke=\"#222222\" stroke-width=\"1.2\"/>\n";
                for (double yy : {y_hi, y_lo}) {
                    svg << "<line x1=\"" << cx - 4 << "\" y1=\"" << yy
                        << "\" x2=\"" << cx + 4 << "\" y2=\"" << yy
                        << "\" stroke=\"#222222\" stroke-width=\"1.2\"/>\n";
                }
            }
        }
        svg << "<text x=\"" << group_x + group_w / 2 << "\" y=\""
            << top + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"12\">"
            << task_counts[g] << " tasks</text>\n";
    }

    // Legend along the bottom edge.
    double legend_x = left;
    const double legend_y = height - 18;
    for (const std::string& algo : algos) {
        svg << "<rect x=\"" << legend_x << "\" y=\"" << legend_y - 10
            << "\" width=\"12\" height=\"12\" fill=\"" << bar_color(algo)
            << "\"/>\n";
        svg << "<text x=\"" << legend_x + 17 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << algo
            << "</text>\n";
        legend_x += 30 + 9 * algo.size();
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw io::IoError("cannot write " + path.string());
    out << svg.str();
    if (!out) throw io::IoError("write failed for " + path.string());
}

}  // namespace schedsim::bench
